#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtight/errors.hpp"
#include "gtight/groupoid.hpp"
#include "gtight/operator_model.hpp"

namespace gtight {

/// The four-element Weyl group <w1, w2 | w1^2 = w2^2 = 1, w1 w2 = w2 w1>.
enum class Weyl { one = 0, w1 = 1, w2 = 2, w1w2 = 3 };

inline Weyl weyl_mul(Weyl a, Weyl b) {
  return static_cast<Weyl>(static_cast<int>(a) ^ static_cast<int>(b));
}

inline std::string to_string(Weyl w) {
  switch (w) {
    case Weyl::one:
      return "1";
    case Weyl::w1:
      return "w1";
    case Weyl::w2:
      return "w2";
    default:
      return "w1w2";
  }
}

/// A unit-modulus parameter t0 of the circle.
struct TorusPoint {
  Complex t0;

  explicit TorusPoint(Complex value) : t0(value) {
    if (std::abs(std::abs(value) - 1.0) > 1e-12)
      throw std::invalid_argument("TorusPoint: |t0| must be 1");
  }

  static TorusPoint from_turns(double turns) {
    const double a = 2.0 * std::numbers::pi * turns;
    return TorusPoint(Complex(std::cos(a), std::sin(a)));
  }

  Complex pow(int n) const {
    Complex out(1.0);
    Complex base = n >= 0 ? t0 : std::conj(t0);
    for (int i = 0; i < std::abs(n); ++i) out *= base;
    return out;
  }
};

/// Small dense complex matrix for the representation spaces.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<Complex> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Complex& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  Complex at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  Mat operator*(const Mat& rhs) const {
    Mat out(rows, rhs.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Complex v = at(i, k);
        if (v == Complex(0.0)) continue;
        for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += v * rhs.at(k, j);
      }
    return out;
  }

  Mat scaled(Complex s) const {
    Mat out = *this;
    for (auto& x : out.a) x *= s;
    return out;
  }

  Mat dagger() const {
    Mat out(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
  }

  double max_abs_diff(const Mat& rhs) const {
    if (rows != rhs.rows || cols != rhs.cols)
      return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      worst = std::max(worst, std::abs(a[i] - rhs.a[i]));
    return worst;
  }
};

namespace detail {

inline Mat trunc_shift_up(int dim) {  // S* on a length-dim window
  Mat m(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) m.at(k + 1, k) = 1.0;
  return m;
}

inline Mat trunc_p(int dim) {
  Mat m(dim, dim);
  m.at(0, 0) = 1.0;
  return m;
}

inline Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      const Complex v = x.at(i, j);
      if (v == Complex(0.0)) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l)
          out.at(i * y.rows + k, j * y.cols + l) = v * y.at(k, l);
    }
  return out;
}

}  // namespace detail

/// The four irreducible families, as generator images (order g1..g4):
///   w1w2 on l2(N)(x)l2(N): t0(S*(x)S*, S*(x)p, p(x)S*, p(x)p)
///   w1   on l2(N):         (t0 S*, 0, t0 p, 0)
///   w2   on l2(N):         (t0 S*, t0 p, 0, 0)
///   1    on C:             (t0, 0, 0, 0)
inline std::array<Mat, 4> soibelman(Weyl w, const TorusPoint& t0, int window) {
  using detail::kron;
  using detail::trunc_p;
  using detail::trunc_shift_up;
  switch (w) {
    case Weyl::w1w2: {
      const Mat s = trunc_shift_up(window), p = trunc_p(window);
      return {kron(s, s).scaled(t0.t0), kron(s, p).scaled(t0.t0),
              kron(p, s).scaled(t0.t0), kron(p, p).scaled(t0.t0)};
    }
    case Weyl::w1: {
      const Mat s = trunc_shift_up(window), p = trunc_p(window);
      return {s.scaled(t0.t0), Mat(window, window), p.scaled(t0.t0),
              Mat(window, window)};
    }
    case Weyl::w2: {
      const Mat s = trunc_shift_up(window), p = trunc_p(window);
      return {s.scaled(t0.t0), p.scaled(t0.t0), Mat(window, window),
              Mat(window, window)};
    }
    default: {
      Mat t(1, 1);
      t.at(0, 0) = t0.t0;
      return {t, Mat(1, 1), Mat(1, 1), Mat(1, 1)};
    }
  }
}

/// Base unit of each case: (inf,inf), (inf,c), (c,inf), (c,c).
inline UnitPoint rep_base_unit(int case_i, int c = 0) {
  switch (case_i) {
    case 1:
      return UnitPoint{ExtendedNat::infinity(), ExtendedNat::infinity()};
    case 2:
      return UnitPoint{ExtendedNat::infinity(), ExtendedNat(c)};
    case 3:
      return UnitPoint{ExtendedNat(c), ExtendedNat::infinity()};
    case 4:
      return UnitPoint{ExtendedNat(c), ExtendedNat(c)};
    default:
      throw std::invalid_argument("rep case must be 1..4");
  }
}

using GermFn = std::vector<std::pair<Germ, Complex>>;

/// The isotropy-valued pairing <phi,psi>_*: a function on winding labels,
///   <phi,psi>_*(sigma_r) = sum over the source fibre of conj(phi(y)) psi(y sigma_r).
/// Conjugate-linear in the first argument.
inline std::map<int, Complex> star_inner(const GermFn& phi, const GermFn& psi,
                                         const UnitPoint& u) {
  std::map<int, Complex> out;
  for (const auto& [y, cy] : phi) {
    if (y.source() != u)
      throw std::invalid_argument("star_inner: germ is not in the u-fibre");
    for (const auto& [z, cz] : psi) {
      if (z.source() != u)
        throw std::invalid_argument("star_inner: germ is not in the u-fibre");
      // z = y . sigma_r exactly when the two germs share a range and differ
      // only in winding
      if (z.range() != y.range() || z.d1() != y.d1() || z.d2() != y.d2())
        continue;
      out[z.winding() - y.winding()] += std::conj(cy) * cz;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == Complex(0.0) ? out.erase(it) : std::next(it);
  return out;
}

/// Gram matrix of germ labels under <phi,psi> = L(<phi,psi>_*), where L is
/// the character sending the winding-r isotropy germ to t0^r.
inline Mat gram(const std::vector<Germ>& labels, const TorusPoint& t0,
                const UnitPoint& u) {
  Mat g(static_cast<int>(labels.size()), static_cast<int>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const auto si = star_inner({{labels[i], 1.0}}, {{labels[j], 1.0}}, u);
      Complex v = 0.0;
      for (const auto& [r, c] : si) v += c * t0.pow(r);
      g.at(static_cast<int>(i), static_cast<int>(j)) = v;
    }
  return g;
}

/// The finite-rank model of the induced space: a label window over the
/// source fibre, its Gram form, and the explicit isometric identification
/// with the window of C, l2(N) or l2(N)(x)l2(N).
struct InducedSpace {
  int case_i;
  TorusPoint t0;
  int bound;
  UnitPoint base;

  std::vector<Germ> labels;  // source-fibre window, sorted
  Mat gram_matrix;
  int rank = 0;
  double min_eigenvalue = 0.0;
  bool psd = false;

  int qdim() const {
    switch (case_i) {
      case 1:
        return 1;
      case 2:
      case 3:
        return bound + 1;
      default:
        return (bound + 1) * (bound + 1);
    }
  }

  /// Quotient basis index of a fibre germ, by its range coordinates; for
  /// case 4 the tensor factors are (second coordinate, first coordinate).
  /// nullopt once the range leaves the window.
  std::optional<int> basis_index(const Germ& g) const {
    const int w = bound + 1;
    switch (case_i) {
      case 1:
        return 0;
      case 2: {
        const int j = g.range().k2.value();
        return j < w ? std::optional<int>(j) : std::nullopt;
      }
      case 3: {
        const int j = g.range().k1.value();
        return j < w ? std::optional<int>(j) : std::nullopt;
      }
      default: {
        const int a = g.range().k1.value(), b = g.range().k2.value();
        if (a >= w || b >= w) return std::nullopt;
        return b * w + a;
      }
    }
  }

  /// The isometry sends e_label to t0^winding times its basis vector.
  Complex phase(const Germ& g) const { return t0.pow(g.winding()); }
};

namespace detail {

inline void rank_and_psd(InducedSpace& sp, double rank_threshold) {
  const int n = sp.gram_matrix.rows;
  Eigen::MatrixXcd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = sp.gram_matrix.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G,
                                                     Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  sp.min_eigenvalue = ev.minCoeff();
  const double scale = std::max(1.0, ev.maxCoeff());
  sp.psd = sp.min_eigenvalue >= -1e-12 * scale;
  sp.rank = 0;
  for (int i = 0; i < n; ++i)
    if (ev(i) > rank_threshold) ++sp.rank;
}

}  // namespace detail

/// Builds the label window, the Gram form and its rank-revealing quotient;
/// raises GramDegeneracyMismatch when the quotient dimension differs from
/// the identified space.  Null vectors are those below the rank threshold.
inline InducedSpace induced_space(int case_i, const TorusPoint& t0, int bound,
                                  int base_coordinate = 0,
                                  double rank_threshold = 1e-9) {
  if (bound < 1) throw std::invalid_argument("induced_space: bound >= 1");
  InducedSpace sp{case_i, t0, bound, rep_base_unit(case_i, base_coordinate),
                  {}, Mat(), 0, 0.0, false};
  sp.labels = fiber_s(sp.base, bound);
  sp.gram_matrix = gram(sp.labels, t0, sp.base);
  detail::rank_and_psd(sp, rank_threshold);
  if (sp.rank != sp.qdim())
    throw GramDegeneracyMismatch(
        "induced space: Gram rank " + std::to_string(sp.rank) +
        " does not match the identified dimension " +
        std::to_string(sp.qdim()));
  return sp;
}

/// Exactness of the identification: conj(phase(a)) phase(b) [same basis
/// vector] reproduces the Gram form entry by entry.
inline double isometry_defect(const InducedSpace& sp) {
  double worst = 0.0;
  for (std::size_t i = 0; i < sp.labels.size(); ++i)
    for (std::size_t j = 0; j < sp.labels.size(); ++j) {
      const auto bi = sp.basis_index(sp.labels[i]);
      const auto bj = sp.basis_index(sp.labels[j]);
      Complex ip = 0.0;
      if (bi && bj && *bi == *bj)
        ip = std::conj(sp.phase(sp.labels[i])) * sp.phase(sp.labels[j]);
      worst = std::max(worst, std::abs(ip - sp.gram_matrix.at(
                                                static_cast<int>(i),
                                                static_cast<int>(j))));
    }
  return worst;
}

/// Left convolution by the indicator of Theta_w on a fibre germ:
/// a_w * e_g = e_{eta . g} for the unique germ eta of w with
/// source(eta) = range(g), zero when no such germ exists.  The indicator
/// membership a_w(eta) = 1 is re-checked through `equivalent`.
inline std::optional<Germ> convolve_indicator(const Word& w, const Germ& g) {
  UnitPoint z{};
  try {
    z = UnitPoint{g.range().k1.shift(w.m()[0], w.n()[0]),
                  g.range().k2.shift(w.m()[1], w.n()[1])};
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  if (!in_sigma(z, w)) return std::nullopt;
  const Germ eta = canonicalize(z, w);
  const Word cw = eta.word();
  int mb = 1;
  for (int i = 0; i < 2; ++i)
    mb = std::max({mb, w.n()[i], w.m()[i], cw.n()[i], cw.m()[i]});
  for (ExtendedNat c : {z.k1, z.k2})
    if (c.is_finite()) mb = std::max(mb, c.value());
  if (!equivalent(SigmaPair{z, cw}, SigmaPair{z, w}, mb + 1))
    return std::nullopt;  // unreachable; the membership test is definitional
  return compose(eta, g);
}

/// Image of one word on the identified quotient window.
inline Mat induced_word_image(const InducedSpace& sp, const Word& w) {
  Mat out(sp.qdim(), sp.qdim());
  for (const auto& g : sp.labels) {
    if (g.winding() != 0) continue;  // quotient basis = winding-zero labels
    const auto col = sp.basis_index(g);
    if (!col) continue;
    const auto img = convolve_indicator(w, g);
    if (!img) continue;
    const auto row = sp.basis_index(*img);
    if (!row) continue;  // image left the window
    out.at(*row, *col) = sp.phase(*img);
  }
  return out;
}

/// Generator images of the induced representation, pushed through the
/// quotient identification.
inline std::array<Mat, 4> induced_rep(int case_i, const TorusPoint& t0,
                                      int bound, int base_coordinate = 0) {
  const InducedSpace sp = induced_space(case_i, t0, bound, base_coordinate);
  return {induced_word_image(sp, generator(GeneratorId::g1)),
          induced_word_image(sp, generator(GeneratorId::g2)),
          induced_word_image(sp, generator(GeneratorId::g3)),
          induced_word_image(sp, generator(GeneratorId::g4))};
}

struct EquivalenceReport {
  int case_i = 0;
  double t0_turns = 0.0;
  int bound = 0;
  int gram_rank = 0;
  bool gram_psd = false;
  bool isometry_ok = false;
  std::optional<Weyl> matched;
  double matched_err = 0.0;
  std::vector<std::pair<Weyl, double>> candidate_errors;

  bool ok() const { return gram_psd && isometry_ok && matched.has_value(); }
};

namespace detail {

// Entrywise comparison away from the window boundary: only columns whose
// basis coordinates stay below the top index, where the truncations of the
// two constructions coincide.
inline double masked_diff(const Mat& a, const Mat& b, int case_i, int bound) {
  if (a.rows != b.rows || a.cols != b.cols)
    return std::numeric_limits<double>::infinity();
  const int w = bound + 1;
  auto col_ok = [&](int c) {
    if (case_i == 1) return true;
    if (case_i == 2 || case_i == 3) return c + 1 < w;
    return c % w + 1 < w && c / w + 1 < w;
  };
  double worst = 0.0;
  for (int j = 0; j < a.cols; ++j) {
    if (!col_ok(j)) continue;
    for (int i = 0; i < a.rows; ++i)
      worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
  }
  return worst;
}

}  // namespace detail

/// Matches the induced generator images against the four families and
/// reports the (unique) equivalent one, at tolerance 1e-12.
inline EquivalenceReport check_equivalence(int case_i, const TorusPoint& t0,
                                           int bound,
                                           double t0_turns_hint = 0.0) {
  EquivalenceReport rep;
  rep.case_i = case_i;
  rep.bound = bound;
  rep.t0_turns = t0_turns_hint;
  const InducedSpace sp = induced_space(case_i, t0, bound);
  rep.gram_rank = sp.rank;
  rep.gram_psd = sp.psd;
  rep.isometry_ok = isometry_defect(sp) <= 1e-12;
  const std::array<Mat, 4> ind = {
      induced_word_image(sp, generator(GeneratorId::g1)),
      induced_word_image(sp, generator(GeneratorId::g2)),
      induced_word_image(sp, generator(GeneratorId::g3)),
      induced_word_image(sp, generator(GeneratorId::g4))};
  const int window = case_i == 1 ? 1 : bound + 1;
  for (Weyl w : {Weyl::one, Weyl::w1, Weyl::w2, Weyl::w1w2}) {
    const auto fam = soibelman(w, t0, window);
    if (fam[0].rows != ind[0].rows) continue;
    double err = 0.0;
    for (int i = 0; i < 4; ++i)
      err = std::max(err, detail::masked_diff(ind[i], fam[i], case_i, bound));
    rep.candidate_errors.emplace_back(w, err);
    if (err <= 1e-12) {
      if (rep.matched)
        throw InternalInconsistency("check_equivalence: two families match");
      rep.matched = w;
      rep.matched_err = err;
    }
  }
  return rep;
}

}  // namespace gtight
