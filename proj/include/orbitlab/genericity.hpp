#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitlab/classify.hpp"
#include "orbitlab/polymap.hpp"
#include "orbitlab/solver.hpp"

namespace orbitlab {

struct SampleConfig {
  int dimension = 1;
  int degree = 2;
  int k_max = 4;
  int trials = 1000;
  std::uint64_t rng_seed = 0;
  std::vector<double> eps_ladder{1e-2, 1e-3, 1e-4};
  std::vector<Scalar> lambda0s{Scalar(1, 0), Scalar(-1, 0), Scalar(0, 1),
                               std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0)};
  double lambda0_tol = 1e-6;
  // Orbits of the real map are enumerated over this field. Complex covers
  // every solution of the periodic-orbit system; Real restricts to R^N.
  Field orbit_field = Field::Complex;
  bool planted_controls = true;
  SolveConfig solve;  // seed plan required for N >= 2
  ClassifyOptions classify;
};

struct MarginSummary {
  double min = 0.0;
  double q01 = 0.0;
  double q10 = 0.0;
  double median = 0.0;
  double max = 0.0;
};

struct Lambda0Hits {
  Scalar lambda0;
  int orbit_hits = 0;  // orbits with a multiplier within tol of lambda0
  int trial_hits = 0;  // trials with at least one such orbit
};

struct ControlResult {
  std::string name;
  std::vector<int> hits;  // per lambda0, orbit count
  double min_margin = 0.0;
  bool expect_hit = false;
  bool passed = false;
};

struct GenericityReport {
  SampleConfig config;
  int trials_used = 0;
  int trials_excluded = 0;
  std::map<std::string, int> exclusion_reasons;
  long long orbits_examined = 0;
  std::vector<int> eps_counts;
  std::vector<double> frequencies;  // per ladder rung: share of trials with an orbit margin < eps
  MarginSummary margins;            // of per-trial minimum margins
  std::vector<Lambda0Hits> hits;
  std::vector<ControlResult> controls;
};

// Validates the ladder (strictly decreasing, positive), T >= 1 and unit
// lambda0 values; throws Infeasible when D^k_max exceeds the degree cap (N = 1)
// or no seed plan is given (N >= 2).
void validate(const SampleConfig& config);

// Draws T real coefficient vectors uniform on [-1, 1]^(N mu), classifies all
// orbits of least period <= k_max, and accumulates margins and lambda0 hits.
GenericityReport run_sampler(const SampleConfig& config);

// Result of examining a single map (exposed for planted controls and tests).
struct TrialOutcome {
  bool ok = false;
  std::string failure;
  double min_margin = INFINITY;
  std::vector<int> hits;  // per lambda0
  long long orbits = 0;
};
TrialOutcome examine_map(const PolyMap& map, const SampleConfig& config);

// x_1 -> x_1 + x_1^2 (parabolic fixed point at 0); extra coordinates x_i -> x_i / 2.
PolyMap parabolic_control(int dimension, int degree);
// x_i -> x_i^2 - 2 in every coordinate: all periodic orbits hyperbolic.
PolyMap hyperbolic_control(int dimension, int degree);

struct ScalingFit {
  std::optional<double> slope;  // of log frequency against log eps
  std::string note;             // "degenerate: all-zero" etc. when no slope
  int rungs_used = 0;
};

ScalingFit margin_scaling(const std::vector<double>& eps, const std::vector<double>& frequencies);
ScalingFit margin_scaling(const GenericityReport& report);

std::string genericity_csv(const GenericityReport& report);

}  // namespace orbitlab
