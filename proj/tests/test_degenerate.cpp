#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbitlab/degenerate.hpp"
#include "orbitlab/error.hpp"

using namespace orbitlab;

TEST_CASE("detect degeneracy") {
  const DegeneracyResult a = detect_degeneracy(PolyMap::univariate(std::vector<double>{0, 1, 1}), 0.0);
  CHECK(a.kind == DegeneracyKind::Degenerate);
  REQUIRE(a.normal_form);
  CHECK(a.normal_form->order == 1);
  CHECK(a.normal_form->leading == 1.0);

  const DegeneracyResult b = detect_degeneracy(PolyMap::univariate(std::vector<double>{0, 1, 0, 1}), 0.0);
  REQUIRE(b.normal_form);
  CHECK(b.normal_form->order == 2);
  CHECK(b.normal_form->leading == 1.0);

  const DegeneracyResult c = detect_degeneracy(PolyMap::univariate(std::vector<double>{0, 0.5}), 0.0);
  CHECK(c.kind == DegeneracyKind::Hyperbolic);
  CHECK(c.multiplier == 0.5);

  // x -> -x + x^2 at 0: multiplier -1, not a saddle-node.
  CHECK(detect_degeneracy(PolyMap::univariate(std::vector<double>{0, -1, 1}), 0.0).kind == DegeneracyKind::MarginalNonUnit);

  // Shifted base point: x -> x + (x - 1)^2 at 1.
  const DegeneracyResult s = detect_degeneracy(PolyMap::univariate(std::vector<double>{1, -1, 1}), 1.0);
  REQUIRE(s.normal_form);
  CHECK(s.normal_form->order == 1);

  CHECK_THROWS_AS(detect_degeneracy(PolyMap::univariate(std::vector<double>{0, 1, 1}), 0.5), InvalidInput);
  CHECK_THROWS_AS(detect_degeneracy(PolyMap::univariate(std::vector<double>{0, 1}), 0.0), Error);
}

TEST_CASE("split m = 2 reproduces the quadratic-formula example") {
  const SplitPlan p = split(NormalForm{}, 2);
  // x + x^2 - 0.01: fixed points +-0.1, multipliers 1 +- 0.2.
  REQUIRE(p.roots.size() == 2);
  CHECK(p.roots[0] == doctest::Approx(-0.1));
  CHECK(p.roots[1] == doctest::Approx(0.1));
  const auto c = p.map.univariate_coefficients();
  CHECK(std::abs(c[0] - Scalar(-0.01)) < 1e-15);
  CHECK(std::abs(c[1] - Scalar(1.0)) < 1e-15);
  CHECK(std::abs(c[2] - Scalar(1.0)) < 1e-15);
  REQUIRE(p.multipliers.size() == 2);
  CHECK(p.multipliers[0] == doctest::Approx(0.8));
  CHECK(p.multipliers[1] == doctest::Approx(1.2));
  CHECK(p.certified_count == 2);
}

TEST_CASE("split m = 1 and m = 12") {
  const SplitPlan one = split(NormalForm{}, 1);
  CHECK(one.certified_count == 1);
  CHECK(one.filler_roots.size() == 1);

  const SplitPlan p = split(NormalForm{}, 12);
  CHECK(p.certified_count == 12);
  CHECK(p.min_margin >= 10 * kDefaultEta);
  // Every window fixed point is hyperbolic by an independent check.
  for (double r : p.roots) {
    const DegeneracyResult d = detect_degeneracy(p.map, r, kDefaultEta, 1e-9);
    CHECK(d.kind == DegeneracyKind::Hyperbolic);
  }
}

TEST_CASE("split of a higher-order seed uses filler roots") {
  NormalForm seed{3, -2.0, 1.0};
  const SplitPlan p = split(seed, 2);
  CHECK(p.certified_count == 2);
  CHECK(p.filler_roots.size() == 2);
  for (double r : p.filler_roots) CHECK(std::abs(r) > p.window);
  CHECK(p.map.degree() == 4);
}

TEST_CASE("split errors") {
  CHECK_THROWS_AS(split(NormalForm{}, 0), InvalidInput);
  CHECK_THROWS_AS(split(NormalForm{}, 65), Infeasible);
  SplitOptions o;
  o.cap = 10;
  CHECK_THROWS_AS(split(NormalForm{}, 11, o), Infeasible);
}

TEST_CASE("demand schedules") {
  const DemandResult a = demand_schedule([](int) { return 1LL; }, 3);
  CHECK(a.plan.target == 3);
  CHECK(a.census.row(3).P >= 3);

  const DemandResult b = demand_schedule([](int n) { return static_cast<long long>(n); }, 4);
  CHECK(b.plan.target == 16);
  CHECK(b.census.row(4).available);
  CHECK(b.census.row(4).P >= 16);

  const DemandResult c = demand_schedule([](int n) { return static_cast<long long>(std::pow(n, n)); }, 2);
  CHECK(c.plan.target == 8);
  CHECK(c.census.row(2).P >= 8);
  const GrowthStats g = growth_stats(c.census);
  REQUIRE(g.bowen_sequence[1]);
  CHECK(*g.bowen_sequence[1] >= std::log(8.0) / 2);

  auto nn = [](int n) { return static_cast<long long>(std::pow(n, n)); };
  CHECK(largest_feasible_n1(nn, 64) == 2);
  try {
    demand_schedule(nn, 3);
    FAIL("expected Infeasible");
  } catch (const Infeasible& e) {
    CHECK(std::string(e.what()).find("largest feasible n1 is 2") != std::string::npos);
  }
}
