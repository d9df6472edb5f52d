#include <catch2/catch_amalgamated.hpp>

#include "gtight/semilattice.hpp"

using namespace gtight;

namespace {

const ExtendedNat inf = ExtendedNat::infinity();

UnitPoint unit(int a, int b) { return {ExtendedNat(a), ExtendedNat(b)}; }

}  // namespace

TEST_CASE("extended naturals") {
  CHECK(ExtendedNat(3) < inf);
  CHECK(min(ExtendedNat(3), inf) == ExtendedNat(3));
  CHECK(inf.shift(5, 2) == inf);
  CHECK(ExtendedNat(4).shift(1, 3) == ExtendedNat(6));
  CHECK_THROWS(ExtendedNat(1).shift(2, 0));
  CHECK_THROWS(ExtendedNat(-1));
}

TEST_CASE("projection product table cases") {
  const Projection p1_22 = Projection::make(1, {2, 2});
  const Projection p4_35 = Projection::make(4, {3, 5});
  CHECK(proj_mul(p1_22, p4_35) == p4_35);

  const Projection p2_41 = Projection::make(2, {4, 1});
  const Projection p2_61 = Projection::make(2, {6, 1});
  CHECK(proj_mul(p2_41, p2_61) == p2_61);

  const Projection p3_25 = Projection::make(3, {2, 5});
  CHECK(!proj_mul(p2_41, p3_25).has_value());
}

TEST_CASE("projection order") {
  CHECK(leq(Projection::make(4, {3, 5}), Projection::make(1, {2, 2})));
  const Projection p = Projection::make(2, {4, 1});
  CHECK(leq(p, p));
  CHECK(!leq(Projection::make(1, {2, 2}), Projection::make(4, {3, 5})));
}

TEST_CASE("proj_mul is commutative and idempotent over the window") {
  const auto ps = projections_upto(4);
  for (const auto& a : ps) {
    CHECK(proj_mul(a, a) == a);
    for (const auto& b : ps) CHECK(proj_mul(a, b) == proj_mul(b, a));
  }
}

TEST_CASE("filter membership") {
  CHECK(in_filter(Projection::make(1, {2, 2}), unit(3, 5)));
  CHECK(in_filter(Projection::make(2, {5, 2}), {inf, ExtendedNat(2)}));
  CHECK(!in_filter(Projection::make(4, {3, 5}), unit(3, 4)));
  // the identity projection lies in every filter
  const auto one = Projection::make(1, {0, 0});
  for (const auto& u : {unit(0, 0), unit(3, 5), UnitPoint{inf, inf}})
    CHECK(in_filter(one, u));
}

TEST_CASE("filters are upward and multiplicatively closed, 0-free") {
  std::vector<UnitPoint> units;
  std::vector<ExtendedNat> coords = {ExtendedNat(0), ExtendedNat(2),
                                     ExtendedNat(4), inf};
  for (auto a : coords)
    for (auto b : coords) units.push_back({a, b});
  const auto ps = projections_upto(5);
  for (const auto& u : units) {
    std::vector<Projection> members;
    for (const auto& p : ps)
      if (in_filter(p, u)) members.push_back(p);
    for (const auto& a : members) {
      for (const auto& b : members) {
        const auto ab = proj_mul(a, b);
        REQUIRE(ab.has_value());
        CHECK(in_filter(*ab, u));
      }
      for (const auto& q : ps)
        if (leq(a, q)) CHECK(in_filter(q, u));
    }
  }
}

TEST_CASE("minimum of a filter") {
  CHECK(minimum_of_filter(unit(3, 5)) == Projection::make(4, {3, 5}));
  CHECK(!minimum_of_filter({ExtendedNat(3), inf}).has_value());
  CHECK(!minimum_of_filter({inf, inf}).has_value());
  // and it really is the minimum
  const auto m = *minimum_of_filter(unit(3, 5));
  for (const auto& p : projections_upto(6))
    if (in_filter(p, unit(3, 5))) CHECK(leq(m, p));
}

TEST_CASE("ultrafilter witnesses") {
  SECTION("finite unit, every excluded projection annihilated") {
    const auto rep = ultrafilter_witness(unit(1, 1), 3);
    CHECK(rep.filter_axioms_ok);
    CHECK(rep.excluded_checked > 0);
    CHECK(static_cast<int>(rep.witnesses.size()) == rep.excluded_checked);
  }
  SECTION("doubly infinite unit") {
    const auto rep = ultrafilter_witness({inf, inf}, 3);
    const Projection p = Projection::make(4, {1, 2});
    bool found = false;
    for (const auto& w : rep.witnesses)
      if (w.excluded == p) {
        found = true;
        CHECK(w.witness.cls == 1);
      }
    CHECK(found);
    // the canonical diagonal witness annihilates it
    CHECK(!proj_mul(Projection::make(1, {3, 3}), p).has_value());
  }
  SECTION("half-infinite unit") {
    const auto rep = ultrafilter_witness({ExtendedNat(2), inf}, 4);
    const Projection p = Projection::make(2, {3, 1});
    for (const auto& w : rep.witnesses)
      if (w.excluded == p) {
        CHECK(w.witness.cls == 3);
        CHECK(w.witness.n[0] == 2);
        CHECK(w.witness.n[1] > 1);
      }
  }
  SECTION("bound precondition") {
    CHECK_THROWS_AS(ultrafilter_witness(unit(4, 4), 3),
                    std::invalid_argument);
  }
}

TEST_CASE("character convergence probes") {
  const Projection probe = Projection::make(3, {2, 4});
  std::vector<UnitPoint> seq;
  for (int a = 0; a <= 10; ++a) seq.push_back(unit(2, a));
  CHECK(char_converges(seq, {ExtendedNat(2), inf}, probe));

  std::vector<UnitPoint> constant(5, unit(1, 1));
  CHECK(char_converges(constant, unit(1, 1), Projection::make(4, {1, 1})));

  std::vector<UnitPoint> diag;
  for (int a = 0; a <= 6; ++a) diag.push_back(unit(a, a));
  CHECK(char_converges(diag, {inf, inf}, Projection::make(4, {1, 1})));

  // a probe that has not stabilized yet is detected
  std::vector<UnitPoint> shortseq = {unit(2, 0), unit(2, 1)};
  CHECK(!char_converges(shortseq, {ExtendedNat(2), inf},
                        Projection::make(3, {2, 4})));
}

TEST_CASE("distinct units have distinct bounded filters") {
  std::vector<UnitPoint> units;
  std::vector<ExtendedNat> coords = {ExtendedNat(0), ExtendedNat(1),
                                     ExtendedNat(3), ExtendedNat(4), inf};
  for (auto a : coords)
    for (auto b : coords) units.push_back({a, b});
  const auto ps = projections_upto(5);
  for (std::size_t i = 0; i < units.size(); ++i)
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      bool separated = false;
      for (const auto& p : ps)
        if (char_eval(units[i], p) != char_eval(units[j], p)) separated = true;
      CHECK(separated);
    }
}

TEST_CASE("unit text round trips") {
  for (const char* text : {"phi(3,5)", "phi(inf,2)", "phi(inf,inf)",
                           "phi(0,0)"}) {
    CHECK(format_unit(parse_unit(text)) == text);
  }
  CHECK(parse_unit(" phi( inf , 4 )") ==
        UnitPoint{inf, ExtendedNat(4)});
  CHECK_THROWS_AS(parse_unit("phi(3)"), ParseError);
  CHECK_THROWS_AS(parse_unit("psi(3,5)"), ParseError);
}
