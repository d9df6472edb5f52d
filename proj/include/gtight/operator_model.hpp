#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gtight/errors.hpp"
#include "gtight/word.hpp"

namespace gtight {

using Complex = std::complex<double>;

/// Truncation window: Fock indices 0..fock-1 on each natural leg, winding
/// indices -winding..winding on the integer leg.  q = 0 selects the exact
/// integer-entry regime.
struct TruncConfig {
  int fock = 12;
  int winding = 8;
  double q = 0.0;

  TruncConfig(int fock_ = 12, int winding_ = 8, double q_ = 0.0)
      : fock(fock_), winding(winding_), q(q_) {
    if (fock < 2 || winding < 1 || q < 0.0 || q >= 1.0)
      throw std::invalid_argument("TruncConfig: need fock>=2, winding>=1, "
                                  "0<=q<1");
  }

  int zdim() const { return 2 * winding + 1; }
  std::int64_t dim() const {
    return static_cast<std::int64_t>(fock) * fock * zdim();
  }
  std::int64_t index(int i, int j, int r) const {
    return (static_cast<std::int64_t>(i) * fock + j) * zdim() + (r + winding);
  }
  std::array<int, 3> decode(std::int64_t idx) const {
    const int r = static_cast<int>(idx % zdim()) - winding;
    idx /= zdim();
    const int j = static_cast<int>(idx % fock);
    const int i = static_cast<int>(idx / fock);
    return {i, j, r};
  }

  /// Interior indices: away from the artificial truncation boundaries.  The
  /// bottom of a natural leg is genuine, so only its top is margined; the
  /// integer leg is margined on both sides.
  bool interior(std::int64_t idx, int margin) const {
    const auto [i, j, r] = decode(idx);
    return i + margin < fock && j + margin < fock &&
           std::abs(r) + margin <= winding;
  }

  friend bool operator==(const TruncConfig& a, const TruncConfig& b) {
    return a.fock == b.fock && a.winding == b.winding && a.q == b.q;
  }
};

/// Sparse operator on the truncated space.  Every operator built here maps
/// each basis vector to at most one basis vector (a weighted partial
/// permutation), which products and adjoints preserve.
class TruncatedOperator {
 public:
  explicit TruncatedOperator(TruncConfig cfg)
      : cfg_(cfg), tgt_(cfg.dim(), -1), val_(cfg.dim()) {}

  const TruncConfig& cfg() const { return cfg_; }

  void set(std::int64_t col, std::int64_t row, Complex v) {
    tgt_[col] = static_cast<std::int32_t>(row);
    val_[col] = v;
  }

  std::int32_t target(std::int64_t col) const { return tgt_[col]; }
  Complex value(std::int64_t col) const { return val_[col]; }

  Complex entry(std::int64_t row, std::int64_t col) const {
    return tgt_[col] == row ? val_[col] : Complex(0.0);
  }

  std::int64_t nnz() const {
    std::int64_t c = 0;
    for (auto t : tgt_)
      if (t >= 0) ++c;
    return c;
  }

  /// Operator product (*this) o rhs.
  TruncatedOperator operator*(const TruncatedOperator& rhs) const {
    if (!(cfg_ == rhs.cfg_))
      throw std::invalid_argument("TruncatedOperator: window mismatch");
    TruncatedOperator out(cfg_);
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(tgt_.size()); ++c) {
      const std::int32_t mid = rhs.tgt_[c];
      if (mid < 0) continue;
      const std::int32_t row = tgt_[mid];
      if (row < 0) continue;
      out.set(c, row, val_[mid] * rhs.val_[c]);
    }
    return out;
  }

  TruncatedOperator adjoint() const {
    TruncatedOperator out(cfg_);
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(tgt_.size()); ++c) {
      if (tgt_[c] < 0) continue;
      if (out.tgt_[tgt_[c]] >= 0)
        throw InternalInconsistency(
            "adjoint: operator is not injective on its support");
      out.set(tgt_[c], c, std::conj(val_[c]));
    }
    return out;
  }

  TruncatedOperator abs() const {
    TruncatedOperator out = *this;
    for (auto& v : out.val_) v = std::abs(v);
    return out;
  }

  /// Largest difference over entries whose row and column both lie in the
  /// interior; margin < 0 compares the whole window.
  double max_abs_diff(const TruncatedOperator& rhs, int margin = -1) const {
    double worst = 0.0;
    auto row_ok = [&](std::int32_t t) {
      return t >= 0 && (margin < 0 || cfg_.interior(t, margin));
    };
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(tgt_.size()); ++c) {
      if (margin >= 0 && !cfg_.interior(c, margin)) continue;
      const std::int32_t ta = tgt_[c], tb = rhs.tgt_[c];
      if (ta == tb) {
        if (row_ok(ta))
          worst = std::max(worst, std::abs(val_[c] - rhs.val_[c]));
      } else {
        if (row_ok(ta)) worst = std::max(worst, std::abs(val_[c]));
        if (row_ok(tb)) worst = std::max(worst, std::abs(rhs.val_[c]));
      }
    }
    return worst;
  }

  /// Coordinate-list text: one `row col re im` line per entry.
  std::string coordinate_list() const {
    std::string out;
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(tgt_.size()); ++c) {
      if (tgt_[c] < 0) continue;
      const auto [ri, rj, rr] = cfg_.decode(tgt_[c]);
      const auto [ci, cj, cr] = cfg_.decode(c);
      out += std::to_string(ri) + "," + std::to_string(rj) + "," +
             std::to_string(rr) + "  " + std::to_string(ci) + "," +
             std::to_string(cj) + "," + std::to_string(cr) + "  " +
             std::to_string(val_[c].real()) + " " +
             std::to_string(val_[c].imag()) + "\n";
    }
    return out;
  }

 private:
  TruncConfig cfg_;
  std::vector<std::int32_t> tgt_;
  std::vector<Complex> val_;
};

namespace detail {

// S*^n p^k S^m applied to a Fock basis index; nullopt covers both the
// genuine kernel and the dropped top-of-window transitions.
inline std::optional<int> leg_apply(ShiftMonomial l, int x, int fock) {
  if (x < l.m) return std::nullopt;
  if (l.k == 1 && x != l.m) return std::nullopt;
  const int t = x - l.m + l.n;
  if (t >= fock) return std::nullopt;
  return t;
}

}  // namespace detail

/// The phase-stripped monomial tensor of a word: entries in {0,1}, the
/// integer leg truncated without wrap-around.
inline TruncatedOperator realize(const Word& w, const TruncConfig& cfg) {
  TruncatedOperator out(cfg);
  if (w.is_zero()) return out;
  const ShiftMonomial l1 = w.leg1(), l2 = w.leg2();
  for (int i = 0; i < cfg.fock; ++i) {
    const auto ti = detail::leg_apply(l1, i, cfg.fock);
    if (!ti) continue;
    for (int j = 0; j < cfg.fock; ++j) {
      const auto tj = detail::leg_apply(l2, j, cfg.fock);
      if (!tj) continue;
      for (int r = -cfg.winding; r <= cfg.winding; ++r) {
        const int tr = r - w.r();  // t is the left shift on the integer leg
        if (tr < -cfg.winding || tr > cfg.winding) continue;
        out.set(cfg.index(i, j, r), cfg.index(*ti, *tj, tr), 1.0);
      }
    }
  }
  return out;
}

/// The q-deformed generator on the truncated space, with its scalar sign.
/// q^N acts as the diagonal q^i (q^0 = 1, so at q = 0 this is the rank-one
/// projection p); sqrt(1-q^{2N}) weights the shifted index.
inline TruncatedOperator gen_q(GeneratorId id, const TruncConfig& cfg) {
  TruncatedOperator out(cfg);
  const double q = cfg.q;
  auto root = [&](int n) { return std::sqrt(1.0 - std::pow(q, 2 * n)); };
  auto diag = [&](int n) { return n == 0 ? 1.0 : std::pow(q, n); };
  for (int i = 0; i < cfg.fock; ++i)
    for (int j = 0; j < cfg.fock; ++j)
      for (int r = -cfg.winding; r <= cfg.winding; ++r) {
        if (r - 1 < -cfg.winding) continue;
        int ti = i, tj = j;
        double v = 0.0;
        switch (id) {
          case GeneratorId::g1:
            ti = i + 1;
            tj = j + 1;
            v = root(i + 1) * root(j + 1);
            break;
          case GeneratorId::g2:
            tj = j + 1;
            v = -diag(i) * root(j + 1);
            break;
          case GeneratorId::g3:
            ti = i + 1;
            v = -root(i + 1) * diag(j);
            break;
          default:
            v = -diag(i) * diag(j);
        }
        if (ti >= cfg.fock || tj >= cfg.fock) continue;
        if (v == 0.0) continue;
        out.set(cfg.index(i, j, r), cfg.index(ti, tj, r - 1), v);
      }
  return out;
}

/// Closed-form basis action of the induced representation at the base point
/// phi(0,0), with the source fibre labeled by the image of the integer-leg
/// basepoint (the identification under which generator i acts exactly as its
/// truncated operator):
///   a1: (m,n,r) -> (m+1,n+1,r-1)
///   a2: (0,n,r) -> (0,n+1,r-1), zero off m=0
///   a3: (m,0,r) -> (m+1,0,r-1), zero off n=0
///   a4: (0,0,r) -> (0,0,r-1),  zero elsewhere
/// Total on the abstract lattice; nullopt is the zero vector.
inline std::optional<std::array<int, 3>> psi_action(GeneratorId id,
                                                    std::array<int, 3> x) {
  const auto [m, n, r] = x;
  switch (id) {
    case GeneratorId::g1:
      return std::array<int, 3>{m + 1, n + 1, r - 1};
    case GeneratorId::g2:
      if (m != 0) return std::nullopt;
      return std::array<int, 3>{0, n + 1, r - 1};
    case GeneratorId::g3:
      if (n != 0) return std::nullopt;
      return std::array<int, 3>{m + 1, 0, r - 1};
    default:
      if (m != 0 || n != 0) return std::nullopt;
      return std::array<int, 3>{0, 0, r - 1};
  }
}

/// psi_action written into the truncation window.
inline TruncatedOperator psi_matrix(GeneratorId id, const TruncConfig& cfg) {
  TruncatedOperator out(cfg);
  for (std::int64_t c = 0; c < cfg.dim(); ++c) {
    const auto t = psi_action(id, cfg.decode(c));
    if (!t) continue;
    const auto [i, j, r] = *t;
    if (i >= cfg.fock || j >= cfg.fock || r < -cfg.winding || r > cfg.winding)
      continue;
    out.set(c, cfg.index(i, j, r), 1.0);
  }
  return out;
}

struct PsiReport {
  std::array<bool, 4> generator_match{};
  std::array<double, 4> generator_err{};
  bool swapped_control_detected = false;  // a2/a3 swap must be caught
  bool q_control_detected = false;        // q=0.5 generators must differ
  std::vector<std::string> failures;

  bool ok() const {
    for (bool m : generator_match)
      if (!m) return false;
    return swapped_control_detected && q_control_detected;
  }
};

/// Finite-window content of the isomorphism: the basis action of the induced
/// representation at phi(0,0) equals the phase-stripped generator matrices
/// on the interior, and the designed negative controls fail.
inline PsiReport verify_psi(const TruncConfig& cfg) {
  PsiReport rep;
  const std::array<GeneratorId, 4> ids = {GeneratorId::g1, GeneratorId::g2,
                                          GeneratorId::g3, GeneratorId::g4};
  for (int i = 0; i < 4; ++i) {
    const auto psi = psi_matrix(ids[i], cfg);
    const auto gen = realize(generator(ids[i]), cfg);
    rep.generator_err[i] = psi.max_abs_diff(gen, 1);
    // also against the q->0 generator with phases stripped
    const double gq =
        psi.max_abs_diff(gen_q(ids[i], TruncConfig(cfg.fock, cfg.winding, 0.0))
                             .abs(),
                         1);
    rep.generator_match[i] = rep.generator_err[i] == 0.0 && gq == 0.0;
    if (!rep.generator_match[i])
      rep.failures.push_back("generator " + std::to_string(i + 1) +
                             " mismatch, err=" +
                             std::to_string(rep.generator_err[i]));
  }
  const double swapped = psi_matrix(GeneratorId::g2, cfg).max_abs_diff(
      realize(generator(GeneratorId::g3), cfg), 1);
  rep.swapped_control_detected = swapped > 0.5;
  if (!rep.swapped_control_detected)
    rep.failures.push_back("swapped a2/a3 control was not detected");
  const TruncConfig qc(cfg.fock, cfg.winding, 0.5);
  double qdiff = 0.0;
  for (auto id : ids)
    qdiff = std::max(
        qdiff, psi_matrix(id, cfg).max_abs_diff(gen_q(id, qc).abs(), 1));
  rep.q_control_detected = qdiff > 1e-3;
  if (!rep.q_control_detected)
    rep.failures.push_back("q=0.5 control was not detected");
  return rep;
}

}  // namespace gtight
