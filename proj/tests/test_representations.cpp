#include <catch2/catch_amalgamated.hpp>

#include "gtight/representations.hpp"

using namespace gtight;

namespace {

const ExtendedNat inf = ExtendedNat::infinity();

UnitPoint unit(int a, int b) { return {ExtendedNat(a), ExtendedNat(b)}; }

double masked(const Mat& a, const Mat& b, int case_i, int bound, int slack) {
  REQUIRE(a.rows == b.rows);
  const int w = bound + 1;
  auto col_ok = [&](int c) {
    if (case_i == 1) return true;
    if (case_i == 2 || case_i == 3) return c <= bound - slack;
    return c % w <= bound - slack && c / w <= bound - slack;
  };
  double worst = 0.0;
  for (int j = 0; j < a.cols; ++j) {
    if (!col_ok(j)) continue;
    for (int i = 0; i < a.rows; ++i)
      worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
  }
  return worst;
}

}  // namespace

TEST_CASE("Weyl group table") {
  CHECK(weyl_mul(Weyl::w1, Weyl::w1) == Weyl::one);
  CHECK(weyl_mul(Weyl::w2, Weyl::w2) == Weyl::one);
  CHECK(weyl_mul(Weyl::w1, Weyl::w2) == Weyl::w1w2);
  CHECK(weyl_mul(Weyl::w2, Weyl::w1) == Weyl::w1w2);
  CHECK(weyl_mul(Weyl::w1w2, Weyl::w1) == Weyl::w2);
  for (Weyl w : {Weyl::one, Weyl::w1, Weyl::w2, Weyl::w1w2})
    CHECK(weyl_mul(w, w) == Weyl::one);
}

TEST_CASE("torus points") {
  CHECK_THROWS_AS(TorusPoint(Complex(2.0, 0.0)), std::invalid_argument);
  const TorusPoint t = TorusPoint::from_turns(0.25);
  CHECK(std::abs(t.t0 - Complex(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(t.pow(-1) - Complex(0.0, -1.0)) < 1e-12);
  CHECK(std::abs(TorusPoint::from_turns(0.3).t0 -
                 std::exp(Complex(0.0, 0.6 * std::numbers::pi))) < 1e-12);
}

TEST_CASE("the four families") {
  const TorusPoint t0 = TorusPoint::from_turns(0.3);
  SECTION("trivial family acts by the scalar") {
    const auto fam = soibelman(Weyl::one, t0, 1);
    CHECK(fam[0].rows == 1);
    CHECK(std::abs(fam[0].at(0, 0) - t0.t0) < 1e-15);
    for (int j = 1; j < 4; ++j) CHECK(std::abs(fam[j].at(0, 0)) == 0.0);
  }
  SECTION("the w1w2 family on the doubled window") {
    const auto fam = soibelman(Weyl::w1w2, t0, 3);
    CHECK(std::abs(fam[3].at(0, 0) - t0.t0) < 1e-15);  // p (x) p
    // S* (x) p sends (x,0) to (x+1,0)
    CHECK(std::abs(fam[1].at(1 * 3 + 0, 0 * 3 + 0) - t0.t0) < 1e-15);
    CHECK(std::abs(fam[2].at(0 * 3 + 1, 0 * 3 + 0) - t0.t0) < 1e-15);
  }
  SECTION("images are partial isometries times the phase") {
    for (Weyl w : {Weyl::one, Weyl::w1, Weyl::w2, Weyl::w1w2})
      for (const Mat& m : soibelman(w, t0, 4))
        CHECK((m * m.dagger() * m).max_abs_diff(m) < 1e-14);
  }
}

TEST_CASE("star inner products reduce to the closed forms") {
  SECTION("doubly infinite base: label differences") {
    const UnitPoint u{inf, inf};
    for (int r1 = -2; r1 <= 2; ++r1)
      for (int r2 = -2; r2 <= 2; ++r2) {
        const auto si = star_inner({{Germ(u, r1, 0, 0), 1.0}},
                                   {{Germ(u, r2, 0, 0), 1.0}}, u);
        REQUIRE(si.size() == 1);
        CHECK(si.begin()->first == r2 - r1);
        CHECK(si.begin()->second == Complex(1.0));
      }
  }
  SECTION("half infinite base: delta in the range coordinate") {
    const UnitPoint u{ExtendedNat(0), inf};
    const auto fibre = fiber_s(u, 2);
    for (const auto& y : fibre)
      for (const auto& z : fibre) {
        const auto si = star_inner({{y, 1.0}}, {{z, 1.0}}, u);
        if (y.range() == z.range()) {
          REQUIRE(si.size() == 1);
          CHECK(si.begin()->first == z.winding() - y.winding());
        } else {
          CHECK(si.empty());
        }
      }
  }
  SECTION("finite base: delta in both coordinates, positivity at the unit") {
    const UnitPoint u = unit(0, 0);
    const Germ y = canonicalize(unit(1, 2), Word::make(4, 2, {1, 2}, {0, 0}));
    const Germ z = canonicalize(unit(2, 1), Word::make(4, 2, {2, 1}, {0, 0}));
    CHECK(star_inner({{y, 1.0}}, {{z, 1.0}}, u).empty());
    GermFn phi = {{y, Complex(0.5, 1.0)}, {z, Complex(-2.0, 0.25)}};
    const auto self = star_inner(phi, phi, u);
    const auto it = self.find(0);
    REQUIRE(it != self.end());
    CHECK(it->second.imag() == 0.0);
    CHECK(it->second.real() >= 0.0);
  }
  SECTION("germs outside the fibre are rejected") {
    const Germ g = canonicalize(unit(1, 1), Word::make(4, 0, {1, 1}, {2, 2}));
    CHECK_THROWS_AS(star_inner({{g, 1.0}}, {{g, 1.0}}, unit(0, 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("Gram matrices") {
  const TorusPoint t0 = TorusPoint::from_turns(0.3);
  SECTION("two isotropy labels at the corner are linearly dependent") {
    const UnitPoint u{inf, inf};
    const std::vector<Germ> labels = {Germ(u, 1, 0, 0), Germ(u, 3, 0, 0)};
    const Mat g = gram(labels, t0, u);
    CHECK(std::abs(g.at(0, 0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(g.at(0, 1) - t0.pow(2)) < 1e-15);
    CHECK(std::abs(g.at(1, 0) - t0.pow(-2)) < 1e-15);
    const Complex det = g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0);
    CHECK(std::abs(det) <= 1e-12);
  }
  SECTION("distinct rays give the identity Gram") {
    const UnitPoint u{ExtendedNat(0), inf};
    const std::vector<Germ> labels = {
        Germ({ExtendedNat(1), inf}, 0, 0, 0),
        Germ({ExtendedNat(3), inf}, 0, 0, 0)};
    const Mat g = gram(labels, t0, u);
    CHECK(std::abs(g.at(0, 0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(g.at(1, 1) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(g.at(0, 1)) == 0.0);
    CHECK(std::abs(g.at(1, 0)) == 0.0);
  }
}

TEST_CASE("induced spaces: positivity, rank, isometry") {
  for (double turns : {0.0, 0.25, 0.3}) {
    const TorusPoint t0 = TorusPoint::from_turns(turns);
    for (int case_i = 1; case_i <= 4; ++case_i) {
      const auto sp = induced_space(case_i, t0, 3);
      CHECK(sp.psd);
      CHECK(sp.rank == sp.qdim());
      CHECK(isometry_defect(sp) <= 1e-14);
    }
  }
  // a hostile rank threshold flushes every vector and trips the guard
  CHECK_THROWS_AS(
      induced_space(1, TorusPoint::from_turns(0.3), 3, 0, 1e12),
      GramDegeneracyMismatch);
}

TEST_CASE("induced representations match one family per case") {
  const int bound = 4;
  for (double turns : {0.25, 0.3}) {
    const TorusPoint t0 = TorusPoint::from_turns(turns);
    const auto r1 = check_equivalence(1, t0, bound, turns);
    CHECK(r1.matched == Weyl::one);
    const auto r2 = check_equivalence(2, t0, bound, turns);
    CHECK(r2.matched == Weyl::w1);
    const auto r3 = check_equivalence(3, t0, bound, turns);
    CHECK(r3.matched == Weyl::w2);
    const auto r4 = check_equivalence(4, t0, bound, turns);
    CHECK(r4.matched == Weyl::w1w2);
    // the rejected cousin in each half-infinite case misses by a full phase
    for (const auto& [w, err] : r2.candidate_errors)
      if (w == Weyl::w2) CHECK(err > 0.5);
    for (const auto& [w, err] : r3.candidate_errors)
      if (w == Weyl::w1) CHECK(err > 0.5);
  }
}

TEST_CASE("negative control: the wrong phase never matches") {
  const TorusPoint t0 = TorusPoint::from_turns(0.3);
  const TorusPoint conj(std::conj(t0.t0));
  const int bound = 3;
  const auto sp = induced_space(4, t0, bound);
  const auto bad = soibelman(Weyl::w1w2, conj, bound + 1);
  const Mat ind1 = induced_word_image(sp, generator(GeneratorId::g1));
  CHECK(masked(ind1, bad[0], 4, bound, 1) > 0.5);
}

TEST_CASE("base-point independence within an orbit") {
  const TorusPoint t0 = TorusPoint::from_turns(0.3);
  const int bound = 3;
  for (int case_i : {2, 3, 4}) {
    const auto at0 = induced_space(case_i, t0, bound, 0);
    const auto at2 = induced_space(case_i, t0, bound, 2);
    for (auto id : {GeneratorId::g1, GeneratorId::g2, GeneratorId::g3,
                    GeneratorId::g4})
      CHECK(masked(induced_word_image(at0, generator(id)),
                   induced_word_image(at2, generator(id)), case_i, bound,
                   1) <= 1e-14);
  }
}

TEST_CASE("phase equivariance in t0") {
  const TorusPoint a = TorusPoint::from_turns(0.3);
  const TorusPoint b = TorusPoint::from_turns(0.05);
  const Complex ratio = b.t0 / a.t0;
  const int bound = 3;
  for (int case_i = 1; case_i <= 4; ++case_i) {
    const auto sa = induced_space(case_i, a, bound);
    const auto sb = induced_space(case_i, b, bound);
    for (auto id : {GeneratorId::g1, GeneratorId::g2, GeneratorId::g3,
                    GeneratorId::g4}) {
      const Mat ma = induced_word_image(sa, generator(id)).scaled(ratio);
      const Mat mb = induced_word_image(sb, generator(id));
      CHECK(masked(ma, mb, case_i, bound, 1) <= 1e-14);
    }
  }
}

TEST_CASE("the induced images are multiplicative on generator pairs") {
  const TorusPoint t0 = TorusPoint::from_turns(0.3);
  const int bound = 4;
  const std::array<GeneratorId, 4> ids = {GeneratorId::g1, GeneratorId::g2,
                                          GeneratorId::g3, GeneratorId::g4};
  for (int case_i = 1; case_i <= 4; ++case_i) {
    const auto sp = induced_space(case_i, t0, bound);
    std::array<Mat, 4> img;
    for (int i = 0; i < 4; ++i)
      img[i] = induced_word_image(sp, generator(ids[i]));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const Word prod = word_mul(generator(ids[i]), generator(ids[j]));
        const Mat direct = induced_word_image(sp, prod);
        CHECK(masked(img[i] * img[j], direct, case_i, bound, 2) <= 1e-14);
      }
  }
}
