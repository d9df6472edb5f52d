#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gtight/groupoid.hpp"
#include "gtight/operator_model.hpp"
#include "gtight/representations.hpp"
#include "gtight/semilattice.hpp"
#include "gtight/word.hpp"

namespace gtight::suites {

struct Failure {
  std::string input;
  std::string expected;
  std::string got;
};

struct SuiteReport {
  std::string suite;
  std::int64_t cases = 0;
  std::vector<Failure> failures;
  std::int64_t failure_count = 0;  // failures beyond the stored sample
  double wall_ms = 0.0;
  std::map<std::string, std::string> notes;

  bool ok() const { return failure_count == 0; }

  void fail(std::string input, std::string expected, std::string got) {
    ++failure_count;
    if (failures.size() < 20)
      failures.push_back({std::move(input), std::move(expected),
                          std::move(got)});
  }
};

/// The conventions every report carries, so downstream readers never guess.
inline std::map<std::string, std::string> resolved_conventions() {
  return {
      {"winding",
       "the r slot of a word is its t-exponent; valid words satisfy "
       "r = n1-m1 (classes 1,2) and r = n2-m2 (class 3)"},
      {"action",
       "phi(k).w = phi(k - n + m) coordinatewise; in particular the "
       "generators lower finite coordinates"},
      {"psi",
       "source-fibre germs at phi(0,0) are labeled by the image of the "
       "integer-leg basepoint under their word; generator i then acts "
       "exactly as its truncated operator"},
      {"omega_pairing",
       "case 1 -> trivial family, case 2 -> w1, case 3 -> w2, "
       "case 4 -> w1w2"},
  };
}

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::vector<UnitPoint> unit_window(int coord_bound) {
  std::vector<ExtendedNat> coords;
  for (int c = 0; c <= coord_bound; ++c) coords.push_back(ExtendedNat(c));
  coords.push_back(ExtendedNat::infinity());
  std::vector<UnitPoint> out;
  for (ExtendedNat a : coords)
    for (ExtendedNat b : coords) out.push_back(UnitPoint{a, b});
  return out;
}

}  // namespace detail

/// Inverse-semigroup axioms over the exhaustive word window, plus the
/// closed-form projection table against word multiplication.
inline SuiteReport run_semigroup_axioms(int idx_bound = 4, int r_bound = 4) {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "semigroup-axioms";
  const auto words = all_words(idx_bound, r_bound);
  std::vector<Word> stars(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) stars[i] = adjoint(words[i]);

  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& a = words[i];
    const Word& as = stars[i];
    ++rep.cases;
    if (word_mul(word_mul(a, as), a) != a)
      rep.fail(format_word(a), "a a* a = a", "violated");
    if (word_mul(word_mul(as, a), as) != as)
      rep.fail(format_word(a), "a* a a* = a*", "violated");
    if (adjoint(as) != a) rep.fail(format_word(a), "a** = a", "violated");
    const bool proj = is_projection(a);
    const bool alg = word_mul(a, a) == a && as == a;
    if (proj != alg)
      rep.fail(format_word(a), "is_projection agrees with a=a*=a^2",
               "disagrees");
  }
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      ++rep.cases;
      Word ab;
      try {
        ab = word_mul(words[i], words[j]);
      } catch (const InternalInconsistency& e) {
        rep.fail(format_word(words[i]) + " * " + format_word(words[j]),
                 "closure", e.what());
        continue;
      }
      if (adjoint(ab) != word_mul(stars[j], stars[i]))
        rep.fail(format_word(words[i]) + " * " + format_word(words[j]),
                 "(ab)* = b* a*", "violated");
    }

  // projection table against the word embedding
  const auto projections = projections_upto(idx_bound);
  std::int64_t table_cases = 0;
  for (const auto& p : projections)
    for (const auto& q : projections) {
      ++rep.cases;
      ++table_cases;
      const auto pq = proj_mul(p, q);
      const Word viaword = word_mul(p.to_word(), q.to_word());
      const Word direct = pq ? pq->to_word() : Word::zero();
      if (viaword != direct)
        rep.fail(format_word(p.to_word()) + " * " + format_word(q.to_word()),
                 format_word(viaword), format_word(direct));
      if (proj_mul(q, p) != pq)
        rep.fail(format_word(p.to_word()) + " * " + format_word(q.to_word()),
                 "commutativity", "violated");
      if (p == q && pq != std::optional<Projection>(p))
        rep.fail(format_word(p.to_word()), "idempotent", "violated");
    }
  rep.notes["projection_table_cases"] = std::to_string(table_cases);
  rep.notes["words"] = std::to_string(words.size());
  rep.wall_ms = sw.ms();
  return rep;
}

/// Projection table alone: the closed form against word multiplication.
inline SuiteReport run_projection_table(int idx_bound = 4) {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "projection-table";
  const auto projections = projections_upto(idx_bound);
  for (const auto& p : projections)
    for (const auto& q : projections) {
      ++rep.cases;
      const auto pq = proj_mul(p, q);
      const Word direct = pq ? pq->to_word() : Word::zero();
      if (word_mul(p.to_word(), q.to_word()) != direct)
        rep.fail(format_word(p.to_word()) + " * " + format_word(q.to_word()),
                 format_word(word_mul(p.to_word(), q.to_word())),
                 format_word(direct));
    }
  rep.wall_ms = sw.ms();
  return rep;
}

/// Symbolic products against the truncated-operator model, entrywise exact
/// on the interior; plus normal-form uniqueness of the realization.
inline SuiteReport run_oracle_products(int idx_bound = 3,
                                       TruncConfig cfg = TruncConfig(12, 8,
                                                                     0.0)) {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "oracle-products";
  const auto words = all_words(idx_bound, idx_bound);
  // one factor displaces each leg by at most idx_bound, so on columns this
  // far from the artificial boundaries the two routes truncate identically
  const int margin = idx_bound;

  // full partial maps, one per word
  std::vector<std::vector<std::int32_t>> maps(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto op = realize(words[i], cfg);
    maps[i].resize(cfg.dim());
    for (std::int64_t c = 0; c < cfg.dim(); ++c) maps[i][c] = op.target(c);
  }

  std::vector<std::int64_t> interior_cols;
  for (std::int64_t c = 0; c < cfg.dim(); ++c)
    if (cfg.interior(c, margin)) interior_cols.push_back(c);
  rep.notes["interior_columns"] = std::to_string(interior_cols.size());

  // realize a product word on one column without building the full table
  auto apply_word = [&cfg](const Word& w, std::int64_t col) -> std::int64_t {
    if (w.is_zero()) return -1;
    const auto [i, j, r] = cfg.decode(col);
    const auto ti = gtight::detail::leg_apply(w.leg1(), i, cfg.fock);
    if (!ti) return -1;
    const auto tj = gtight::detail::leg_apply(w.leg2(), j, cfg.fock);
    if (!tj) return -1;
    const int tr = r - w.r();
    if (tr < -cfg.winding || tr > cfg.winding) return -1;
    return cfg.index(*ti, *tj, tr);
  };

  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      ++rep.cases;
      const Word prod = word_mul(words[i], words[j]);
      bool bad = false;
      for (const std::int64_t c : interior_cols) {
        const std::int32_t mid = maps[j][c];
        const std::int64_t composed = mid < 0 ? -1 : maps[i][mid];
        if (composed != apply_word(prod, c)) {
          bad = true;
          break;
        }
      }
      if (bad)
        rep.fail(format_word(words[i]) + " * " + format_word(words[j]),
                 "matrix product equals realized product", "entry mismatch");
    }

  // normal-form uniqueness: distinct words realize distinctly once the
  // window exceeds twice the index bound
  const TruncConfig small(2 * idx_bound + 2, 2 * idx_bound + 2, 0.0);
  std::set<std::vector<std::int32_t>> seen;
  for (const auto& w : words) {
    ++rep.cases;
    const auto op = realize(w, small);
    std::vector<std::int32_t> key(small.dim());
    for (std::int64_t c = 0; c < small.dim(); ++c) key[c] = op.target(c);
    if (!seen.insert(key).second)
      rep.fail(format_word(w), "distinct realization", "duplicate matrix");
  }
  rep.notes["words"] = std::to_string(words.size());
  rep.wall_ms = sw.ms();
  return rep;
}

/// Orthogonality witnesses for every excluded projection at every unit of
/// the window (the maximality half of the ultrafilter classification).
inline SuiteReport run_ultrafilters(int coord_bound = 4, int bound = 6) {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "ultrafilters";
  for (const auto& u : detail::unit_window(coord_bound)) {
    try {
      const auto r = ultrafilter_witness(u, bound);
      rep.cases += r.excluded_checked + 1;
      if (!r.filter_axioms_ok)
        rep.fail(format_unit(u), "filter axioms on the window", "violated");
      for (const auto& w : r.witnesses)
        if (proj_mul(w.excluded, w.witness).has_value() ||
            !in_filter(w.witness, u))
          rep.fail(format_unit(u) + " / " + format_word(w.excluded.to_word()),
                   "orthogonal witness inside the filter", "not orthogonal");
    } catch (const WitnessNotFound& e) {
      rep.fail(format_unit(u), "witness found", e.what());
    }
  }
  // injectivity: distinct units are separated by a bounded projection
  const auto units = detail::unit_window(coord_bound);
  const auto probes = projections_upto(coord_bound + 1);
  for (std::size_t i = 0; i < units.size(); ++i)
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      ++rep.cases;
      bool separated = false;
      for (const auto& p : probes)
        if (char_eval(units[i], p) != char_eval(units[j], p)) {
          separated = true;
          break;
        }
      if (!separated)
        rep.fail(format_unit(units[i]) + " vs " + format_unit(units[j]),
                 "separating projection", "none within bound");
    }
  rep.wall_ms = sw.ms();
  return rep;
}

/// Canonical-form equality against the witness-search definition of germ
/// equivalence, over all Sigma-pairs in the window.
inline SuiteReport run_equivalence_oracle(int data_bound = 3,
                                          int witness_bound = 6) {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "equivalence-oracle";
  const auto words = all_words(data_bound, data_bound);
  for (const auto& u : detail::unit_window(data_bound)) {
    std::vector<Word> domain;
    for (const auto& w : words)
      if (in_sigma(u, w)) domain.push_back(w);
    for (const auto& a : domain)
      for (const auto& b : domain) {
        ++rep.cases;
        try {
          equivalent(SigmaPair{u, a}, SigmaPair{u, b}, witness_bound);
        } catch (const InternalInconsistency& e) {
          rep.fail(format_unit(u) + ": " + format_word(a) + " ~ " +
                       format_word(b),
                   "routes agree", e.what());
        }
      }
  }
  rep.wall_ms = sw.ms();
  return rep;
}

/// Groupoid axioms on canonical germs: associativity on composable triples,
/// involution, unit laws; plus the Sigma-membership identity, the action
/// certification, local bijectivity and decidable separation.
inline SuiteReport run_groupoid_axioms(int data_bound = 3) {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "groupoid-axioms";
  const auto units = detail::unit_window(data_bound);
  const auto words = all_words(data_bound, data_bound);

  // in_sigma(k,w) iff P(w.n) lies in the filter of k
  for (const auto& u : units)
    for (const auto& w : words) {
      ++rep.cases;
      if (in_sigma(u, w) != in_filter(Projection{w.cls(), w.n()}, u))
        rep.fail(format_unit(u) + ", " + format_word(w),
                 "in_sigma == in_filter", "differ");
    }

  // act against the brute-force character action
  const int oracle_bound = 2 * data_bound + 1;
  for (const auto& u : units)
    for (const auto& w : words) {
      if (!in_sigma(u, w)) continue;
      ++rep.cases;
      const UnitPoint closed = act(u, w);
      const UnitPoint oracle = act_oracle(u, w, oracle_bound);
      if (closed != oracle)
        rep.fail(format_unit(u) + " . " + format_word(w),
                 format_unit(oracle), format_unit(closed));
    }

  // local bijectivity of k -> [(k, w)] on D_w (etale witness)
  for (const auto& w : words) {
    ++rep.cases;
    std::set<Germ> images;
    std::int64_t domain_size = 0;
    for (const auto& u : units) {
      if (!in_sigma(u, w)) continue;
      ++domain_size;
      images.insert(canonicalize(u, w));
    }
    if (static_cast<std::int64_t>(images.size()) != domain_size)
      rep.fail(format_word(w), "injective on its domain window", "collision");
  }

  // canonical germs over the window, memoized per unit
  std::map<UnitPoint, std::vector<Germ>> fibers;
  for (const auto& u : units) fibers[u] = fiber_r(u, data_bound);

  for (const auto& u : units)
    for (const auto& g : fibers[u]) {
      ++rep.cases;
      const Germ gi = inverse(g);
      if (inverse(gi) != g)
        rep.fail(format_germ(g), "involution", "violated");
      if (compose(compose(g, gi), g) != g)
        rep.fail(format_germ(g), "g g^-1 g = g", "violated");
      if (compose(g, gi) != unit_germ(g.range()) ||
          compose(gi, g) != unit_germ(g.source()))
        rep.fail(format_germ(g), "g g^-1 is the range unit", "violated");
      if (compose(unit_germ(g.range()), g) != g ||
          compose(g, unit_germ(g.source())) != g)
        rep.fail(format_germ(g), "unit laws", "violated");
      if (canonicalize(g.range(), g.word()) != g)
        rep.fail(format_germ(g), "canonicalize idempotent", "violated");
    }

  for (const auto& u : units)
    for (const auto& g : fibers[u]) {
      const auto& hs = fibers[g.source()];
      for (const auto& h : hs) {
        const Germ gh = compose(g, h);
        for (const auto& l : fibers[h.source()]) {
          ++rep.cases;
          if (compose(gh, l) != compose(g, compose(h, l))) {
            rep.fail(format_germ(g) + " " + format_germ(h) + " " +
                         format_germ(l),
                     "associativity", "violated");
          }
        }
      }
    }
  rep.notes["units"] = std::to_string(units.size());
  rep.wall_ms = sw.ms();
  return rep;
}

/// Isotropy at one unit of each orbit type: labels compose additively and
/// invert by negation over the window.
inline SuiteReport run_isotropy(int window = 4) {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "isotropy";
  const ExtendedNat inf = ExtendedNat::infinity();
  const std::vector<UnitPoint> samples = {
      UnitPoint{inf, inf}, UnitPoint{inf, ExtendedNat(2)},
      UnitPoint{ExtendedNat(2), inf},
      UnitPoint{ExtendedNat(2), ExtendedNat(3)}};
  for (const auto& u : samples) {
    const auto germs = isotropy(u, window);
    std::map<int, Germ> by_label;
    for (const auto& g : germs) {
      ++rep.cases;
      if (g.range() != u || g.source() != u)
        rep.fail(format_germ(g), "range = source = u", "violated");
      if (!by_label.insert({g.winding(), g}).second)
        rep.fail(format_germ(g), "bijective labels", "duplicate");
    }
    if (static_cast<int>(germs.size()) != 2 * window + 1)
      rep.fail(format_unit(u), std::to_string(2 * window + 1) + " germs",
               std::to_string(germs.size()));
    for (const auto& [r1, g1] : by_label)
      for (const auto& [r2, g2] : by_label) {
        ++rep.cases;
        const Germ c = compose(g1, g2);
        if (c.winding() != r1 + r2 || c.source() != u)
          rep.fail(format_unit(u) + " labels " + std::to_string(r1) + "," +
                       std::to_string(r2),
                   "labels add", std::to_string(c.winding()));
        if (std::abs(r1 + r2) <= window && by_label.count(r1 + r2) &&
            c != by_label.at(r1 + r2))
          rep.fail(format_unit(u), "composition lands on the labeled germ",
                   "different germ");
      }
    for (const auto& [r1, g1] : by_label) {
      ++rep.cases;
      if (inverse(g1).winding() != -r1)
        rep.fail(format_germ(g1), "inverse negates the label",
                 std::to_string(inverse(g1).winding()));
    }
  }
  rep.wall_ms = sw.ms();
  return rep;
}

/// Exactly four orbits; the quotient topology is the six-set family and T0.
inline SuiteReport run_orbit_topology() {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "orbit-topology";
  const auto top = orbit_space();
  ++rep.cases;
  if (top.open_sets.size() != 6)
    rep.fail("orbit space", "6 open sets",
             std::to_string(top.open_sets.size()));
  using O = OrbitLabel;
  std::vector<std::vector<O>> expected = {
      {},
      {O::finite2},
      {O::finite2, O::n_x_inf},
      {O::finite2, O::inf_x_n},
      {O::finite2, O::n_x_inf, O::inf_x_n},
      {O::finite2, O::n_x_inf, O::inf_x_n, O::inf_inf}};
  for (auto& s : expected) std::sort(s.begin(), s.end());
  std::sort(expected.begin(), expected.end());
  ++rep.cases;
  if (top.open_sets != expected)
    rep.fail("orbit space", "the six-set quotient topology", "different");
  ++rep.cases;
  if (!top.t0) rep.fail("orbit space", "T0", "not T0");
  ++rep.cases;
  if (!top.lattice_closed)
    rep.fail("orbit space", "closed under union/intersection", "not closed");
  // four orbits, recovered from representative points
  const ExtendedNat inf = ExtendedNat::infinity();
  ++rep.cases;
  std::set<OrbitLabel> seen = {orbit(UnitPoint{ExtendedNat(3), ExtendedNat(5)}),
                               orbit(UnitPoint{ExtendedNat(3), inf}),
                               orbit(UnitPoint{inf, ExtendedNat(3)}),
                               orbit(UnitPoint{inf, inf})};
  if (seen.size() != 4) rep.fail("orbits", "4 distinct orbits", "fewer");
  rep.wall_ms = sw.ms();
  return rep;
}

/// The finite-window isomorphism check plus its negative controls.
inline SuiteReport run_psi(TruncConfig cfg = TruncConfig(12, 8, 0.0)) {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "psi";
  const auto r = verify_psi(cfg);
  rep.cases = 6;  // four generators + two controls
  for (const auto& f : r.failures) rep.fail("psi", "match", f);
  rep.notes["conventions.psi"] = resolved_conventions().at("psi");
  rep.wall_ms = sw.ms();
  return rep;
}

/// Gram positivity, the rank-revealing quotient, exact isometry of the
/// identifications, and the entrywise match with one family per case.
/// Cases 1 and 4 must match the trivial and the w1w2 family; cases 2 and 3
/// must match the two one-shift families uniquely and distinctly, and the
/// computed pairing is written into the report notes.
inline SuiteReport run_reps(std::vector<double> t0_turns = {0.0, 0.25, 0.3},
                            int bound = 6) {
  detail::Stopwatch sw;
  SuiteReport rep;
  rep.suite = "reps";
  std::map<int, std::set<std::string>> observed;
  for (double turns : t0_turns) {
    const TorusPoint t0 = TorusPoint::from_turns(turns);
    for (int case_i = 1; case_i <= 4; ++case_i) {
      ++rep.cases;
      EquivalenceReport er;
      try {
        er = check_equivalence(case_i, t0, bound, turns);
      } catch (const std::exception& e) {
        rep.fail("case " + std::to_string(case_i) + ", t0 turns " +
                     std::to_string(turns),
                 "equivalence check runs", e.what());
        continue;
      }
      const std::string where =
          "case " + std::to_string(case_i) + ", t0 turns " +
          std::to_string(turns);
      if (!er.gram_psd) rep.fail(where, "Gram PSD", "negative");
      if (!er.isometry_ok)
        rep.fail(where, "identification isometric", "defect");
      if (!er.matched) {
        rep.fail(where, "exactly one family matches", "no family");
        continue;
      }
      observed[case_i].insert(to_string(*er.matched));
      if (case_i == 1 && *er.matched != Weyl::one)
        rep.fail(where, "matches the trivial family", to_string(*er.matched));
      if (case_i == 4 && *er.matched != Weyl::w1w2)
        rep.fail(where, "matches w1w2", to_string(*er.matched));
      if ((case_i == 2 || case_i == 3) && *er.matched != Weyl::w1 &&
          *er.matched != Weyl::w2)
        rep.fail(where, "matches w1 or w2", to_string(*er.matched));
    }
    // case 1: the displayed two-label Gram is singular
    ++rep.cases;
    const UnitPoint u = rep_base_unit(1);
    const std::vector<Germ> two = {Germ(u, 1, 0, 0), Germ(u, 3, 0, 0)};
    const Mat g2 = gram(two, t0, u);
    const Complex det =
        g2.at(0, 0) * g2.at(1, 1) - g2.at(0, 1) * g2.at(1, 0);
    if (std::abs(det) > 1e-12)
      rep.fail("case 1 two-label Gram", "determinant 0",
               std::to_string(std::abs(det)));
  }
  // the half-infinite pairing must be consistent across samples and must
  // separate the two cases
  ++rep.cases;
  if (observed[2].size() != 1 || observed[3].size() != 1 ||
      observed[2] == observed[3])
    rep.fail("cases 2 and 3", "a consistent, distinct family pairing",
             "inconsistent");
  for (const auto& [k, v] : resolved_conventions()) rep.notes[k] = v;
  for (int case_i = 1; case_i <= 4; ++case_i)
    if (observed.count(case_i) && observed[case_i].size() == 1)
      rep.notes["matched.case" + std::to_string(case_i)] =
          *observed[case_i].begin();
  rep.wall_ms = sw.ms();
  return rep;
}

}  // namespace gtight::suites
