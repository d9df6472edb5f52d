#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "gtight/errors.hpp"
#include "gtight/extended_nat.hpp"
#include "gtight/semilattice.hpp"
#include "gtight/word.hpp"

namespace gtight {

/// An element (phi(k), w) of the transformation groupoid Sigma.
struct SigmaPair {
  UnitPoint k;
  Word w;
};

/// (phi(k), w) in Sigma, i.e. P_cls(w.n) lies in the filter of k.
inline bool in_sigma(const UnitPoint& k, const Word& w) {
  if (w.is_zero()) return false;
  return in_filter(Projection{w.cls(), w.n()}, k);
}

/// The character action phi(k).w = phi(k - n + m), computed coordinatewise
/// with infinity absorbing.  Certified against act_oracle.
inline UnitPoint act(const UnitPoint& k, const Word& w) {
  if (!in_sigma(k, w))
    throw NotInDomain("act: " + format_unit(k) + " is not in the domain of " +
                      format_word(w));
  return UnitPoint{k.k1.shift(w.n()[0], w.m()[0]),
                   k.k2.shift(w.n()[1], w.m()[1])};
}

/// All units with finite coordinates <= bound (infinity always included)
/// lying in the domain of w; matches the closed forms of the sets D_w.
inline std::vector<UnitPoint> domain_set(const Word& w, int bound) {
  std::vector<ExtendedNat> coords;
  for (int c = 0; c <= bound; ++c) coords.push_back(ExtendedNat(c));
  coords.push_back(ExtendedNat::infinity());
  std::vector<UnitPoint> out;
  for (ExtendedNat a : coords)
    for (ExtendedNat b : coords)
      if (in_sigma(UnitPoint{a, b}, w)) out.push_back(UnitPoint{a, b});
  std::sort(out.begin(), out.end());
  return out;
}

/// Brute-force evaluation of the action: tabulates e -> char(k, w e w*) on
/// all projections with indices <= bound and matches the table against the
/// filters of candidate units.  Requires bound to exceed the finite
/// coordinates reachable from k plus the indices of w.
inline UnitPoint act_oracle(const UnitPoint& k, const Word& w, int bound) {
  if (!in_sigma(k, w))
    throw NotInDomain("act_oracle: pair is not in Sigma");
  const Word wstar = adjoint(w);
  const auto probes = projections_upto(bound);
  std::vector<int> table(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    Word conj = word_mul(word_mul(w, probes[i].to_word()), wstar);
    table[i] = char_eval(k, conj);
  }
  std::optional<UnitPoint> found;
  std::vector<ExtendedNat> coords;
  for (int c = 0; c <= bound; ++c) coords.push_back(ExtendedNat(c));
  coords.push_back(ExtendedNat::infinity());
  for (ExtendedNat c1 : coords)
    for (ExtendedNat c2 : coords) {
      const UnitPoint cand{c1, c2};
      bool ok = true;
      for (std::size_t i = 0; i < probes.size() && ok; ++i)
        ok = char_eval(cand, probes[i]) == table[i];
      if (!ok) continue;
      if (found)
        throw InternalInconsistency(
            "act_oracle: membership table matches several units; raise the "
            "bound");
      found = cand;
    }
  if (!found)
    throw InternalInconsistency(
        "act_oracle: membership table matches no unit within the bound");
  return *found;
}

/// The canonical representative of an equivalence class [(phi(k), w)].
///
/// Stored data per unit case: the winding r alone at (inf,inf); (r, m2) at
/// (inf,k2); (r, m1) at (k1,inf); (r, m1, m2) at finite k.  Windings are
/// t-exponents of the canonical word.
class Germ {
 public:
  Germ(UnitPoint k, int r, int d1, int d2) : k_(k), r_(r), d1_(d1), d2_(d2) {}

  const UnitPoint& range() const { return k_; }
  int winding() const { return r_; }
  int d1() const { return d1_; }
  int d2() const { return d2_; }
  int cls() const { return k_.unit_case(); }

  UnitPoint source() const {
    switch (cls()) {
      case 1:
        return k_;
      case 2:
        return UnitPoint{ExtendedNat::infinity(), ExtendedNat(d1_)};
      case 3:
        return UnitPoint{ExtendedNat(d1_), ExtendedNat::infinity()};
      default:
        return UnitPoint{ExtendedNat(d1_), ExtendedNat(d2_)};
    }
  }

  /// The unique canonical word of the class.
  Word word() const {
    const int up = std::max(r_, 0), down = std::max(-r_, 0);
    switch (cls()) {
      case 1:
        return Word::make(1, r_, {up, up}, {down, down});
      case 2: {
        const int c = k_.k2.value(), base = c + d1_;
        return Word::make(2, r_, {base + up, c}, {base + down, d1_});
      }
      case 3: {
        const int c = k_.k1.value(), base = c + d1_;
        return Word::make(3, r_, {c, base + up}, {d1_, base + down});
      }
      default:
        return Word::make(4, r_, {k_.k1.value(), k_.k2.value()}, {d1_, d2_});
    }
  }

  bool is_unit() const { return r_ == 0 && source() == k_; }

  friend auto operator<=>(const Germ&, const Germ&) = default;

 private:
  UnitPoint k_;
  int r_;
  int d1_, d2_;  // unused entries are 0
};

inline UnitPoint range(const Germ& g) { return g.range(); }
inline UnitPoint source(const Germ& g) { return g.source(); }

inline Germ canonicalize(const UnitPoint& k, const Word& w) {
  if (!in_sigma(k, w))
    throw NotInDomain("canonicalize: " + format_unit(k) +
                      " is not in the domain of " + format_word(w));
  switch (k.unit_case()) {
    case 1:
      return Germ(k, w.r(), 0, 0);
    case 2: {
      // class 1 and class 2 words occur here; the invariant is (r, m2)
      const int m2 = w.cls() == 2
                         ? w.m()[1]
                         : k.k2.value() - w.n()[1] + w.m()[1];
      return Germ(k, w.r(), m2, 0);
    }
    case 3: {
      const int m1 = w.cls() == 3
                         ? w.m()[0]
                         : k.k1.value() - w.n()[0] + w.m()[0];
      return Germ(k, w.r(), m1, 0);
    }
    default: {
      const int m1 = k.k1.value() - w.n()[0] + w.m()[0];
      const int m2 = k.k2.value() - w.n()[1] + w.m()[1];
      return Germ(k, w.r(), m1, m2);
    }
  }
}

inline Germ unit_germ(const UnitPoint& k) {
  switch (k.unit_case()) {
    case 1:
      return Germ(k, 0, 0, 0);
    case 2:
      return Germ(k, 0, k.k2.value(), 0);
    case 3:
      return Germ(k, 0, k.k1.value(), 0);
    default:
      return Germ(k, 0, k.k1.value(), k.k2.value());
  }
}

/// Dual-route equivalence of Sigma-pairs at the same character: canonical
/// forms on one side, exhaustive search for a witness idempotent e with
/// char(k,e)=1 and e a.w = e b.w on the other.  The two routes must agree;
/// disagreement raises InternalInconsistency.  The witness search is
/// complete once bound covers the indices of both words and the finite
/// coordinates of k.
inline bool equivalent(const SigmaPair& a, const SigmaPair& b, int bound) {
  if (!in_sigma(a.k, a.w) || !in_sigma(b.k, b.w))
    throw NotInDomain("equivalent: pair outside Sigma");
  if (a.k != b.k) return false;
  const bool canonical =
      canonicalize(a.k, a.w) == canonicalize(b.k, b.w);
  bool witnessed = false;
  for (const auto& e : projections_upto(bound)) {
    if (!in_filter(e, a.k)) continue;
    const Word ew = e.to_word();
    if (word_mul(ew, a.w) == word_mul(ew, b.w) &&
        !word_mul(ew, a.w).is_zero()) {
      witnessed = true;
      break;
    }
  }
  if (canonical != witnessed)
    throw InternalInconsistency(
        "equivalent: canonical route and witness route disagree for " +
        format_unit(a.k) + ", " + format_word(a.w) + " ~ " + format_word(b.w));
  return canonical;
}

/// [(x,s)][(x.s,t)] = [(x,st)]; requires source(a) = range(b).
inline Germ compose(const Germ& a, const Germ& b) {
  if (a.source() != b.range())
    throw NotComposable("compose: source(a) != range(b)");
  Word w = word_mul(a.word(), b.word());
  if (w.is_zero())
    throw InternalInconsistency("compose: product word vanished");
  return canonicalize(a.range(), w);
}

/// [(x,s)]^{-1} = [(x.s, s*)].
inline Germ inverse(const Germ& a) {
  return canonicalize(a.source(), adjoint(a.word()));
}

/// Germs with range u and canonical data inside the window: windings in
/// [-bound, bound], free indices in [0, bound].  Sorted.
inline std::vector<Germ> fiber_r(const UnitPoint& u, int bound) {
  std::vector<Germ> out;
  switch (u.unit_case()) {
    case 1:
      for (int r = -bound; r <= bound; ++r) out.emplace_back(u, r, 0, 0);
      break;
    case 2:
    case 3:
      for (int d = 0; d <= bound; ++d)
        for (int r = -bound; r <= bound; ++r) out.emplace_back(u, r, d, 0);
      break;
    default:
      for (int d1 = 0; d1 <= bound; ++d1)
        for (int d2 = 0; d2 <= bound; ++d2)
          for (int r = -bound; r <= bound; ++r)
            out.emplace_back(u, r, d1, d2);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Germs with source u; ranges run over the window.  Sorted.
inline std::vector<Germ> fiber_s(const UnitPoint& u, int bound) {
  std::vector<Germ> out;
  switch (u.unit_case()) {
    case 1:
      out = fiber_r(u, bound);
      break;
    case 2:
      for (int j = 0; j <= bound; ++j)
        for (int r = -bound; r <= bound; ++r)
          out.emplace_back(UnitPoint{ExtendedNat::infinity(), ExtendedNat(j)},
                           r, u.k2.value(), 0);
      break;
    case 3:
      for (int j = 0; j <= bound; ++j)
        for (int r = -bound; r <= bound; ++r)
          out.emplace_back(UnitPoint{ExtendedNat(j), ExtendedNat::infinity()},
                           r, u.k1.value(), 0);
      break;
    default:
      for (int a = 0; a <= bound; ++a)
        for (int b = 0; b <= bound; ++b)
          for (int r = -bound; r <= bound; ++r)
            out.emplace_back(UnitPoint{ExtendedNat(a), ExtendedNat(b)}, r,
                             u.k1.value(), u.k2.value());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Germs with range = source = u, carrying their winding labels; the label
/// map onto [-bound, bound] is bijective, composition adds labels and
/// inversion negates them.
inline std::vector<Germ> isotropy(const UnitPoint& u, int bound) {
  std::vector<Germ> out;
  for (int r = -bound; r <= bound; ++r) {
    switch (u.unit_case()) {
      case 1:
        out.emplace_back(u, r, 0, 0);
        break;
      case 2:
        out.emplace_back(u, r, u.k2.value(), 0);
        break;
      case 3:
        out.emplace_back(u, r, u.k1.value(), 0);
        break;
      default:
        out.emplace_back(u, r, u.k1.value(), u.k2.value());
    }
  }
  return out;
}

// --- orbits and the quotient topology ----------------------------------

enum class OrbitLabel { finite2, n_x_inf, inf_x_n, inf_inf };

inline OrbitLabel orbit(const UnitPoint& u) {
  switch (u.unit_case()) {
    case 1:
      return OrbitLabel::inf_inf;
    case 2:
      return OrbitLabel::inf_x_n;
    case 3:
      return OrbitLabel::n_x_inf;
    default:
      return OrbitLabel::finite2;
  }
}

inline std::string to_string(OrbitLabel o) {
  switch (o) {
    case OrbitLabel::finite2:
      return "NxN";
    case OrbitLabel::n_x_inf:
      return "Nxinf";
    case OrbitLabel::inf_x_n:
      return "infxN";
    default:
      return "infinf";
  }
}

struct TopologyReport {
  std::vector<std::vector<OrbitLabel>> open_sets;  // sorted family
  bool t0 = false;
  bool lattice_closed = false;  // closed under union and intersection
};

namespace detail {

// Coordinate pattern of an orbit: finite or infinite in each slot.  A basic
// neighborhood of a point fixes finite coordinates exactly and replaces
// infinite ones by a tail (all large finite values together with inf); it
// meets an orbit coordinate iff the tail is present or the orbit coordinate
// is finite.
inline std::array<bool, 2> orbit_inf_pattern(OrbitLabel o) {
  switch (o) {
    case OrbitLabel::finite2:
      return {false, false};
    case OrbitLabel::n_x_inf:
      return {false, true};
    case OrbitLabel::inf_x_n:
      return {true, false};
    default:
      return {true, true};
  }
}

inline bool in_closure(OrbitLabel of, OrbitLabel point) {
  const auto o = orbit_inf_pattern(of);
  const auto p = orbit_inf_pattern(point);
  for (int c = 0; c < 2; ++c) {
    const bool nbhd_meets = p[c] ? true : !o[c];
    if (!nbhd_meets) return false;
  }
  return true;
}

}  // namespace detail

/// The quotient topology on the four orbits, derived from the specialization
/// relation of the compactified quarter-plane; checks T0 and closure under
/// union/intersection.
inline TopologyReport orbit_space() {
  const std::array<OrbitLabel, 4> orbits = {
      OrbitLabel::finite2, OrbitLabel::n_x_inf, OrbitLabel::inf_x_n,
      OrbitLabel::inf_inf};
  TopologyReport rep;
  // U is open iff no orbit outside U has a closure meeting U.
  for (unsigned mask = 0; mask < 16; ++mask) {
    bool open = true;
    for (int o = 0; o < 4 && open; ++o) {
      if (mask & (1u << o)) continue;
      for (int p = 0; p < 4 && open; ++p)
        if ((mask & (1u << p)) && detail::in_closure(orbits[o], orbits[p]))
          open = false;
    }
    if (open) {
      std::vector<OrbitLabel> set;
      for (int o = 0; o < 4; ++o)
        if (mask & (1u << o)) set.push_back(orbits[o]);
      rep.open_sets.push_back(set);
    }
  }
  std::sort(rep.open_sets.begin(), rep.open_sets.end());

  auto is_open = [&](const std::vector<OrbitLabel>& s) {
    return std::binary_search(rep.open_sets.begin(), rep.open_sets.end(), s);
  };
  rep.lattice_closed = true;
  for (const auto& a : rep.open_sets)
    for (const auto& b : rep.open_sets) {
      std::vector<OrbitLabel> u, i;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                     std::back_inserter(u));
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(i));
      if (!is_open(u) || !is_open(i)) rep.lattice_closed = false;
    }
  rep.t0 = true;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      bool separated = false;
      for (const auto& s : rep.open_sets) {
        const bool ina = std::count(s.begin(), s.end(), orbits[a]) > 0;
        const bool inb = std::count(s.begin(), s.end(), orbits[b]) > 0;
        if (ina != inb) separated = true;
      }
      if (!separated) rep.t0 = false;
    }
  return rep;
}

/// Text form `[phi(<k1>,<k2>), <word>]`.
inline std::string format_germ(const Germ& g) {
  return "[" + format_unit(g.range()) + ", " + format_word(g.word()) + "]";
}

}  // namespace gtight
