#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orbitlab/error.hpp"
#include "orbitlab/genericity.hpp"

using namespace orbitlab;

TEST_CASE("margin scaling on synthetic data") {
  const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> freq;
  for (double e : eps) freq.push_back(0.37 * e);
  const ScalingFit fit = margin_scaling(eps, freq);
  REQUIRE(fit.slope.has_value());
  CHECK(std::abs(*fit.slope - 1.0) < 0.05);
  CHECK(fit.rungs_used == 4);

  const ScalingFit zero = margin_scaling(eps, {0, 0, 0, 0});
  CHECK_FALSE(zero.slope.has_value());
  CHECK(zero.note == "degenerate: all-zero");

  const ScalingFit few = margin_scaling(eps, {0.1, 0.01, 0, 0});
  CHECK_FALSE(few.slope.has_value());
  CHECK(few.note.rfind("degenerate", 0) == 0);

  std::vector<double> sq;
  for (double e : eps) sq.push_back(e * e);
  CHECK(std::abs(*margin_scaling(eps, sq).slope - 2.0) < 1e-9);
}

TEST_CASE("config validation") {
  SampleConfig c;
  c.trials = 0;
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = SampleConfig{};
  c.eps_ladder = {1e-3, 1e-2};
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = SampleConfig{};
  c.lambda0s = {Scalar(0.5, 0)};
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = SampleConfig{};
  c.k_max = 9;
  CHECK_THROWS_AS(validate(c), Infeasible);
  c = SampleConfig{};
  c.dimension = 2;
  CHECK_THROWS_AS(validate(c), Infeasible);
}

TEST_CASE("planted controls") {
  SampleConfig c;
  const TrialOutcome par = examine_map(parabolic_control(1, 2), c);
  REQUIRE(par.ok);
  CHECK(par.hits[0] == 1);  // lambda0 = 1
  CHECK(par.hits[1] == 0);
  CHECK(par.min_margin < 1e-12);

  const TrialOutcome hyp = examine_map(hyperbolic_control(1, 2), c);
  REQUIRE(hyp.ok);
  for (int h : hyp.hits) CHECK(h == 0);
  CHECK(hyp.min_margin > 0.5);
  // Orbits of x^2 - 2 with least period <= 4: 2 + 1 + 2 + 3.
  CHECK(hyp.orbits == 8);
}

TEST_CASE("sampler run: zero hits, monotone ladder, determinism") {
  SampleConfig c;
  c.trials = 200;
  c.rng_seed = 7;
  const GenericityReport a = run_sampler(c);
  CHECK(a.trials_used + a.trials_excluded == 200);
  for (const Lambda0Hits& h : a.hits) CHECK(h.orbit_hits == 0);
  for (std::size_t i = 1; i < a.frequencies.size(); ++i) CHECK(a.frequencies[i] <= a.frequencies[i - 1]);
  REQUIRE(a.controls.size() == 2);
  for (const ControlResult& r : a.controls) CHECK(r.passed);
  CHECK(a.margins.min <= a.margins.q01);
  CHECK(a.margins.q01 <= a.margins.median);
  CHECK(a.margins.median <= a.margins.max);

  const GenericityReport b = run_sampler(c);
  CHECK(a.frequencies == b.frequencies);
  CHECK(a.margins.min == b.margins.min);
  CHECK(a.orbits_examined == b.orbits_examined);
  CHECK(genericity_csv(a) == genericity_csv(b));
  CHECK(genericity_csv(a).rfind("epsilon,frequency\n", 0) == 0);

  c.rng_seed = 8;
  CHECK(run_sampler(c).margins.min != a.margins.min);
}

TEST_CASE("N = 2 sampler with a seed plan") {
  SampleConfig c;
  c.dimension = 2;
  c.k_max = 1;
  c.trials = 10;
  c.solve.seeds = SeedPlan{-3, 3, 0, 200};
  const GenericityReport r = run_sampler(c);
  CHECK(r.trials_used + r.trials_excluded == 10);
  for (const Lambda0Hits& h : r.hits) CHECK(h.orbit_hits == 0);
}
