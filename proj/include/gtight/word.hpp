#pragma once

#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtight/errors.hpp"

namespace gtight {

/// One tensor leg S*^n p^k S^m in normal form.  Distinct triples denote
/// distinct operators.
struct ShiftMonomial {
  int n = 0;
  int k = 0;  // 0 or 1: presence of the rank-one projection p
  int m = 0;

  friend constexpr auto operator<=>(const ShiftMonomial&,
                                    const ShiftMonomial&) = default;
};

/// Product of two legs; empty optional is the zero operator.
constexpr std::optional<ShiftMonomial> monomial_mul(ShiftMonomial a,
                                                    ShiftMonomial b) {
  if (a.k == 0 && b.k == 0) {
    if (a.m == b.n) return ShiftMonomial{a.n, 0, b.m};
    if (a.m < b.n) return ShiftMonomial{a.n + b.n - a.m, 0, b.m};
    return ShiftMonomial{a.n, 0, a.m - b.n + b.m};
  }
  if (a.k == 0 && b.k == 1) {
    if (a.m == b.n) return ShiftMonomial{a.n, 1, b.m};
    if (a.m < b.n) return ShiftMonomial{a.n + b.n - a.m, 1, b.m};
    return std::nullopt;
  }
  if (a.k == 1 && b.k == 0) {
    if (a.m == b.n) return ShiftMonomial{a.n, 1, b.m};
    if (a.m > b.n) return ShiftMonomial{a.n, 1, a.m - b.n + b.m};
    return std::nullopt;
  }
  if (a.m == b.n) return ShiftMonomial{a.n, 1, b.m};
  return std::nullopt;
}

using NatPair = std::array<int, 2>;

/// An element B_i(r, n, m) of the inverse semigroup, or the zero element.
///
/// The slot r is the exponent of the bilateral shift t, so valid words
/// satisfy r = n1 - m1 for classes 1 and 2, and r = n2 - m2 for class 3.
/// (This is the convention under which all four standard generators are
/// words; the operator model certifies it.)
class Word {
 public:
  constexpr Word() = default;  // zero

  static constexpr Word zero() { return Word{}; }

  static constexpr Word make(int cls, int r, NatPair n, NatPair m) {
    if (cls < 1 || cls > 4)
      throw std::invalid_argument("Word: class must be 1..4");
    if (n[0] < 0 || n[1] < 0 || m[0] < 0 || m[1] < 0)
      throw std::invalid_argument("Word: indices must be natural numbers");
    if (!constraints_ok(cls, r, n, m))
      throw std::invalid_argument("Word: class-" + std::to_string(cls) +
                                  " invariant violated (check the winding "
                                  "convention r=n1-m1 / r=n2-m2)");
    Word w;
    w.cls_ = static_cast<std::int8_t>(cls);
    w.r_ = r;
    w.n_ = n;
    w.m_ = m;
    return w;
  }

  constexpr bool is_zero() const { return cls_ == 0; }
  constexpr int cls() const { return cls_; }
  constexpr int r() const { return r_; }
  constexpr NatPair n() const { return n_; }
  constexpr NatPair m() const { return m_; }

  constexpr ShiftMonomial leg1() const {
    return ShiftMonomial{n_[0], cls_ == 3 || cls_ == 4 ? 1 : 0, m_[0]};
  }
  constexpr ShiftMonomial leg2() const {
    return ShiftMonomial{n_[1], cls_ == 2 || cls_ == 4 ? 1 : 0, m_[1]};
  }

  /// Reassembles a word from its legs and t-exponent.  The product of two
  /// valid words always satisfies the class constraints; a violation here
  /// signals a convention bug.
  static constexpr Word from_legs(ShiftMonomial l1, ShiftMonomial l2, int r) {
    int cls = 1 + l2.k + 2 * l1.k;
    NatPair n{l1.n, l2.n};
    NatPair m{l1.m, l2.m};
    if (!constraints_ok(cls, r, n, m))
      throw InternalInconsistency("word product violates class invariants");
    Word w;
    w.cls_ = static_cast<std::int8_t>(cls);
    w.r_ = r;
    w.n_ = n;
    w.m_ = m;
    return w;
  }

  friend constexpr auto operator<=>(const Word&, const Word&) = default;

 private:
  static constexpr bool constraints_ok(int cls, int r, NatPair n, NatPair m) {
    switch (cls) {
      case 1:
        return n[0] == n[1] && m[0] == m[1] && r == n[0] - m[0];
      case 2:
        return n[0] >= n[1] && m[0] >= m[1] && r == n[0] - m[0];
      case 3:
        return n[0] <= n[1] && m[0] <= m[1] && r == n[1] - m[1];
      default:
        return true;
    }
  }

  std::int8_t cls_ = 0;  // 0 encodes the zero element
  std::int32_t r_ = 0;
  NatPair n_{0, 0};
  NatPair m_{0, 0};
};

inline Word word_mul(const Word& a, const Word& b) {
  if (a.is_zero() || b.is_zero()) return Word::zero();
  auto l1 = monomial_mul(a.leg1(), b.leg1());
  if (!l1) return Word::zero();
  auto l2 = monomial_mul(a.leg2(), b.leg2());
  if (!l2) return Word::zero();
  return Word::from_legs(*l1, *l2, a.r() + b.r());
}

inline Word adjoint(const Word& a) {
  if (a.is_zero()) return a;
  return Word::make(a.cls(), -a.r(), a.m(), a.n());
}

inline bool is_projection(const Word& a) {
  return !a.is_zero() && a.r() == 0 && a.n() == a.m();
}

enum class GeneratorId { g1 = 1, g2 = 2, g3 = 3, g4 = 4 };

/// The four standard generators, tracked modulo phase:
///   g1 = S*(x)S*(x)t,  g2 = p(x)S*(x)t,  g3 = S*(x)p(x)t,  g4 = p(x)p(x)t.
inline Word generator(GeneratorId id) {
  switch (id) {
    case GeneratorId::g1:
      return Word::make(1, 1, {1, 1}, {0, 0});
    case GeneratorId::g2:
      return Word::make(3, 1, {0, 1}, {0, 0});
    case GeneratorId::g3:
      return Word::make(2, 1, {1, 0}, {0, 0});
    default:
      return Word::make(4, 1, {0, 0}, {0, 0});
  }
}

namespace detail {

// Whitespace-insensitive character scanner shared by the text grammars.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(pos_, std::string("'") + c + "'");
    ++pos_;
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool try_consume_word(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  int parse_nat() {
    skip_ws();
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError(pos_, "natural number");
    long v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000) throw ParseError(pos_, "index below 10^6");
      ++pos_;
    }
    return static_cast<int>(v);
  }

  int parse_int() {
    skip_ws();
    int sign = 1;
    if (try_consume('-')) sign = -1;
    return sign * parse_nat();
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline Word parse_word_body(Scanner& s) {
  s.skip_ws();
  if (s.try_consume('0')) return Word::zero();
  for (int i = 1; i <= 4; ++i)
    if (s.try_consume_word("s" + std::to_string(i)))
      return generator(static_cast<GeneratorId>(i));
  std::size_t start = s.pos();
  if (!s.try_consume('B')) throw ParseError(s.pos(), "'B', 's1'..'s4' or '0'");
  int cls = s.parse_nat();
  if (cls < 1 || cls > 4) throw ParseError(start + 1, "class 1..4");
  s.expect('(');
  if (!s.try_consume_word("r")) throw ParseError(s.pos(), "'r='");
  s.expect('=');
  int r = s.parse_int();
  s.expect(';');
  if (!s.try_consume_word("n")) throw ParseError(s.pos(), "'n='");
  s.expect('=');
  int n1 = s.parse_nat();
  s.expect(',');
  int n2 = s.parse_nat();
  s.expect(';');
  if (!s.try_consume_word("m")) throw ParseError(s.pos(), "'m='");
  s.expect('=');
  int m1 = s.parse_nat();
  s.expect(',');
  int m2 = s.parse_nat();
  s.expect(')');
  try {
    return Word::make(cls, r, {n1, n2}, {m1, m2});
  } catch (const std::invalid_argument& e) {
    throw ParseError(start, std::string("a valid word (") + e.what() + ")");
  }
}

}  // namespace detail

/// Grammar: `B<i>(r=<int>; n=<nat>,<nat>; m=<nat>,<nat>)`, the literal `0`,
/// or the aliases `s1`..`s4`.  Whitespace-insensitive.
inline Word parse_word(std::string_view text) {
  detail::Scanner s(text);
  Word w = detail::parse_word_body(s);
  s.expect_end();
  return w;
}

inline std::string format_word(const Word& w) {
  if (w.is_zero()) return "0";
  return "B" + std::to_string(w.cls()) + "(r=" + std::to_string(w.r()) +
         "; n=" + std::to_string(w.n()[0]) + "," + std::to_string(w.n()[1]) +
         "; m=" + std::to_string(w.m()[0]) + "," + std::to_string(w.m()[1]) +
         ")";
}

/// All nonzero words with indices <= idx_bound and |r| <= r_bound, in a
/// fixed deterministic order.
inline std::vector<Word> all_words(int idx_bound, int r_bound) {
  std::vector<Word> out;
  const int b = idx_bound;
  for (int n = 0; n <= b; ++n)
    for (int m = 0; m <= b; ++m)
      if (std::abs(n - m) <= r_bound)
        out.push_back(Word::make(1, n - m, {n, n}, {m, m}));
  for (int n1 = 0; n1 <= b; ++n1)
    for (int n2 = 0; n2 <= n1; ++n2)
      for (int m1 = 0; m1 <= b; ++m1)
        for (int m2 = 0; m2 <= m1; ++m2)
          if (std::abs(n1 - m1) <= r_bound)
            out.push_back(Word::make(2, n1 - m1, {n1, n2}, {m1, m2}));
  for (int n1 = 0; n1 <= b; ++n1)
    for (int n2 = n1; n2 <= b; ++n2)
      for (int m1 = 0; m1 <= b; ++m1)
        for (int m2 = m1; m2 <= b; ++m2)
          if (std::abs(n2 - m2) <= r_bound)
            out.push_back(Word::make(3, n2 - m2, {n1, n2}, {m1, m2}));
  for (int n1 = 0; n1 <= b; ++n1)
    for (int n2 = 0; n2 <= b; ++n2)
      for (int m1 = 0; m1 <= b; ++m1)
        for (int m2 = 0; m2 <= b; ++m2)
          for (int r = -r_bound; r <= r_bound; ++r)
            out.push_back(Word::make(4, r, {n1, n2}, {m1, m2}));
  return out;
}

}  // namespace gtight
