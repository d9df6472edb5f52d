#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gtight {

// Raised when an internal closed form disagrees with itself (a convention
// bug); never expected on valid inputs.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

// A (character, word) pair outside the transformation groupoid.
struct NotInDomain : std::domain_error {
  using std::domain_error::domain_error;
};

// Germ composition attempted with source(a) != range(b).
struct NotComposable : std::domain_error {
  using std::domain_error::domain_error;
};

// Maximality search failed to produce an orthogonality witness.
struct WitnessNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The Gram quotient dimension disagrees with the expected identification.
struct GramDegeneracyMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(std::size_t position, const std::string& expected)
      : std::runtime_error("parse error at position " +
                           std::to_string(position) + ": expected " +
                           expected),
        pos(position),
        what_expected(expected) {}

  std::size_t pos;
  std::string what_expected;
};

}  // namespace gtight
