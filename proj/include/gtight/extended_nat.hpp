#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gtight {

/// A natural number or the point at infinity, totally ordered with
/// n < infinity for every natural n.  Addition and subtraction of finite
/// values are absorbed by infinity.
class ExtendedNat {
 public:
  constexpr ExtendedNat() = default;

  constexpr ExtendedNat(int value) : v_(static_cast<std::uint32_t>(value)) {
    if (value < 0) throw std::invalid_argument("ExtendedNat: negative value");
  }

  static constexpr ExtendedNat infinity() {
    ExtendedNat x;
    x.v_ = kInf;
    return x;
  }

  constexpr bool is_finite() const { return v_ != kInf; }

  constexpr int value() const {
    if (!is_finite())
      throw std::logic_error("ExtendedNat: value() on infinity");
    return static_cast<int>(v_);
  }

  /// this - minus + plus, with infinity absorbing; throws if a finite
  /// result would be negative.
  constexpr ExtendedNat shift(int minus, int plus) const {
    if (!is_finite()) return infinity();
    int t = static_cast<int>(v_) - minus + plus;
    if (t < 0)
      throw std::domain_error("ExtendedNat: shift below zero");
    return ExtendedNat(t);
  }

  // kInf is the largest uint32, so default comparison gives the right order.
  friend constexpr auto operator<=>(ExtendedNat, ExtendedNat) = default;

  friend constexpr ExtendedNat min(ExtendedNat a, ExtendedNat b) {
    return a < b ? a : b;
  }

  friend std::string to_string(ExtendedNat x) {
    return x.is_finite() ? std::to_string(x.value()) : std::string("inf");
  }

 private:
  static constexpr std::uint32_t kInf = 0xffffffffu;
  std::uint32_t v_ = 0;
};

}  // namespace gtight
