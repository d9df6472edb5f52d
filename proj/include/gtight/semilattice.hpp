#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtight/errors.hpp"
#include "gtight/extended_nat.hpp"
#include "gtight/word.hpp"

namespace gtight {

/// An idempotent P_i(n) = B_i(0, n, n) of the semilattice E.
struct Projection {
  int cls = 1;
  NatPair n{0, 0};

  static Projection make(int cls, NatPair n) {
    Word::make(cls, 0, n, n);  // reuse the word validator
    return Projection{cls, n};
  }

  static Projection from_word(const Word& w) {
    if (!is_projection(w))
      throw std::invalid_argument("Projection: word is not a projection");
    return Projection{w.cls(), w.n()};
  }

  Word to_word() const { return Word::make(cls, 0, n, n); }

  friend constexpr auto operator<=>(const Projection&,
                                    const Projection&) = default;
};

/// The ten-case closed form for P_i(m) P_j(n); empty optional is zero.
/// Agrees with word_mul under the Projection -> Word embedding.
inline std::optional<Projection> proj_mul(const Projection& a,
                                          const Projection& b) {
  if (a.cls > b.cls) return proj_mul(b, a);  // E is commutative
  const int m1 = a.n[0], m2 = a.n[1], n1 = b.n[0], n2 = b.n[1];
  switch (a.cls * 10 + b.cls) {
    case 11:
      return Projection{1, {std::max(m1, n1), std::max(m2, n2)}};
    case 12:
      if (m1 <= n2) return Projection{2, {n1, n2}};
      return std::nullopt;
    case 13:
      if (m1 <= n1) return Projection{3, {n1, n2}};
      return std::nullopt;
    case 14:
      if (m1 <= n1 && m2 <= n2) return Projection{4, {n1, n2}};
      return std::nullopt;
    case 22:
      if (m2 == n2) return Projection{2, {std::max(m1, n1), n2}};
      return std::nullopt;
    case 23:
      if (m1 == m2 && m2 == n1 && n1 == n2) return Projection{4, {n1, n2}};
      return std::nullopt;
    case 24:
      if (m1 <= n1 && m2 == n2) return Projection{4, {n1, n2}};
      return std::nullopt;
    case 33:
      if (m1 == n1) return Projection{3, {n1, std::max(m2, n2)}};
      return std::nullopt;
    case 34:
      if (m1 == n1 && m2 <= n2) return Projection{4, {n1, n2}};
      return std::nullopt;
    default:  // 44
      if (m1 == n1 && m2 == n2) return Projection{4, {n1, n2}};
      return std::nullopt;
  }
}

/// p <= q in the natural order on E.
inline bool leq(const Projection& p, const Projection& q) {
  return proj_mul(p, q) == std::optional<Projection>(p);
}

/// A point k of the compactified quarter-plane; stands for the character
/// supported on the filter A_Lambda(k).
struct UnitPoint {
  ExtendedNat k1;
  ExtendedNat k2;

  /// 1 at (inf,inf), 2 at (inf,finite), 3 at (finite,inf), 4 at finite
  /// points; equal to the class of the canonical words living there.
  int unit_case() const {
    if (!k1.is_finite()) return k2.is_finite() ? 2 : 1;
    return k2.is_finite() ? 4 : 3;
  }

  friend constexpr auto operator<=>(const UnitPoint&,
                                    const UnitPoint&) = default;
};

/// Membership P_i(n) in A_Lambda(k).
inline bool in_filter(const Projection& p, const UnitPoint& k) {
  const ExtendedNat n1(p.n[0]), n2(p.n[1]);
  switch (p.cls) {
    case 1:
      return n1 <= min(k.k1, k.k2);
    case 2:
      return k.k2 == n2 && n2 <= n1 && n1 <= k.k1;
    case 3:
      return k.k1 == n1 && n1 <= n2 && n2 <= k.k2;
    default:
      return k.k1 == n1 && k.k2 == n2;
  }
}

inline int char_eval(const UnitPoint& k, const Projection& p) {
  return in_filter(p, k) ? 1 : 0;
}

/// Character value on a word that is expected to be a projection or zero.
inline int char_eval(const UnitPoint& k, const Word& w) {
  if (w.is_zero()) return 0;
  return char_eval(k, Projection::from_word(w));
}

/// P_4(k) when both coordinates are finite; no minimum otherwise.
inline std::optional<Projection> minimum_of_filter(const UnitPoint& k) {
  if (k.k1.is_finite() && k.k2.is_finite())
    return Projection{4, {k.k1.value(), k.k2.value()}};
  return std::nullopt;
}

/// All projections with indices <= bound, in a fixed order.
inline std::vector<Projection> projections_upto(int bound) {
  std::vector<Projection> out;
  for (int n = 0; n <= bound; ++n) out.push_back(Projection{1, {n, n}});
  for (int n1 = 0; n1 <= bound; ++n1)
    for (int n2 = 0; n2 <= n1; ++n2) out.push_back(Projection{2, {n1, n2}});
  for (int n1 = 0; n1 <= bound; ++n1)
    for (int n2 = n1; n2 <= bound; ++n2) out.push_back(Projection{3, {n1, n2}});
  for (int n1 = 0; n1 <= bound; ++n1)
    for (int n2 = 0; n2 <= bound; ++n2) out.push_back(Projection{4, {n1, n2}});
  return out;
}

struct WitnessEntry {
  Projection excluded;
  Projection witness;  // in A_Lambda(k), orthogonal to excluded
};

struct UltrafilterReport {
  UnitPoint unit;
  int bound = 0;
  int members_checked = 0;
  int excluded_checked = 0;
  bool filter_axioms_ok = false;
  std::vector<WitnessEntry> witnesses;
};

namespace detail {

// Constructive witness from the generating subsemigroup Lambda(k): the free
// index is pushed past every index of p, which kills the product in each of
// the ten table cases.
inline std::optional<Projection> lambda_witness(const UnitPoint& k,
                                                const Projection& p) {
  const int top = std::max(p.n[0], p.n[1]) + 1;
  switch (k.unit_case()) {
    case 4:
      return Projection{4, {k.k1.value(), k.k2.value()}};
    case 3: {
      const int c = k.k1.value();
      return Projection{3, {c, std::max(c, top)}};
    }
    case 2: {
      const int c = k.k2.value();
      return Projection{2, {std::max(c, top), c}};
    }
    default:
      return Projection{1, {top, top}};
  }
}

}  // namespace detail

/// Maximality witnesses for the filter A_Lambda(k): for every projection p
/// with indices <= bound outside the filter, finds q in the filter with
/// p q = 0.  Also re-checks the filter axioms on the bounded window.
/// Requires bound >= every finite coordinate of k + 1.
inline UltrafilterReport ultrafilter_witness(const UnitPoint& k, int bound) {
  for (ExtendedNat c : {k.k1, k.k2})
    if (c.is_finite() && bound < c.value() + 1)
      throw std::invalid_argument(
          "ultrafilter_witness: bound must exceed the finite coordinates");

  UltrafilterReport rep;
  rep.unit = k;
  rep.bound = bound;

  const auto projections = projections_upto(bound);
  std::vector<Projection> members;
  for (const auto& p : projections)
    if (in_filter(p, k)) members.push_back(p);

  // Filter axioms on the window: 0-free by construction; multiplicatively
  // closed; upward closed.
  rep.filter_axioms_ok = true;
  for (const auto& a : members)
    for (const auto& b : members) {
      auto ab = proj_mul(a, b);
      if (!ab || !in_filter(*ab, k)) rep.filter_axioms_ok = false;
    }
  for (const auto& a : members)
    for (const auto& q : projections)
      if (leq(a, q) && !in_filter(q, k)) rep.filter_axioms_ok = false;
  rep.members_checked = static_cast<int>(members.size());

  for (const auto& p : projections) {
    if (in_filter(p, k)) continue;
    ++rep.excluded_checked;
    auto w = detail::lambda_witness(k, p);
    if (!w || !in_filter(*w, k) || proj_mul(p, *w).has_value()) {
      // fall back to a bounded scan over the filter itself
      w.reset();
      const int ext = bound + std::max(p.n[0], p.n[1]);
      for (const auto& q : projections_upto(ext)) {
        if (in_filter(q, k) && !proj_mul(p, q).has_value()) {
          w = q;
          break;
        }
      }
      if (!w)
        throw WitnessNotFound("no orthogonality witness for " +
                              format_word(p.to_word()));
    }
    rep.witnesses.push_back(WitnessEntry{p, *w});
  }
  return rep;
}

/// True iff char_eval(seq[i], probe) is eventually the constant
/// char_eval(limit, probe) within the sampled sequence.
inline bool char_converges(const std::vector<UnitPoint>& seq,
                           const UnitPoint& limit, const Projection& probe) {
  if (seq.empty()) return false;
  const int target = char_eval(limit, probe);
  std::size_t i = seq.size();
  while (i > 0 && char_eval(seq[i - 1], probe) == target) --i;
  return i < seq.size();
}

// --- text form ---------------------------------------------------------

namespace detail {

inline ExtendedNat parse_extended_nat(Scanner& s) {
  if (s.try_consume_word("inf")) return ExtendedNat::infinity();
  return ExtendedNat(s.parse_nat());
}

inline UnitPoint parse_unit_body(Scanner& s) {
  if (!s.try_consume_word("phi")) throw ParseError(s.pos(), "'phi'");
  s.expect('(');
  ExtendedNat a = parse_extended_nat(s);
  s.expect(',');
  ExtendedNat b = parse_extended_nat(s);
  s.expect(')');
  return UnitPoint{a, b};
}

}  // namespace detail

/// Grammar: `phi(<nat|inf>,<nat|inf>)`.
inline UnitPoint parse_unit(std::string_view text) {
  detail::Scanner s(text);
  UnitPoint u = detail::parse_unit_body(s);
  s.expect_end();
  return u;
}

inline std::string format_unit(const UnitPoint& u) {
  return "phi(" + to_string(u.k1) + "," + to_string(u.k2) + ")";
}

}  // namespace gtight
