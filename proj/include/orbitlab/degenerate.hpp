#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orbitlab/census.hpp"
#include "orbitlab/classify.hpp"
#include "orbitlab/polymap.hpp"

namespace orbitlab {

// x -> x + l x^(k+1) near 0: multiplier 1 with a displacement vanishing to
// order k.
struct NormalForm {
  int order = 1;
  double leading = 1.0;        // l_{k+1}, nonzero
  double window = 1.0;         // half-width of the interval studied around 0

  PolyMap to_map() const;
};

enum class DegeneracyKind { Degenerate, Hyperbolic, MarginalNonUnit };
std::string to_string(DegeneracyKind k);

struct DegeneracyResult {
  DegeneracyKind kind = DegeneracyKind::Hyperbolic;
  double multiplier = 0.0;
  std::optional<NormalForm> normal_form;  // set for Degenerate
  std::vector<double> displacement_taylor;  // coefficients of f(x0 + t) - x0 - t
};

// Throws InvalidInput unless x0 is a real fixed point of an N = 1 map within
// residual_tol, and Error when every displacement coefficient vanishes
// (flat at the map's degree).
DegeneracyResult detect_degeneracy(const PolyMap& map, double x0, double eta = kDefaultEta,
                                   double residual_tol = 1e-10);

struct SplitOptions {
  double delta = 0.2;             // spacing of the root grid
  std::optional<double> amplitude;  // c; defaults to l_{k+1}
  int cap = 64;
  double eta = kDefaultEta;
  double min_slope = 1e-3;        // |g'(root)| floor, keeps roots simple
  int retries = 4;                // delta is halved on each failed verification
};

struct SplitPlan {
  NormalForm seed;
  int target = 0;
  double delta = 0.0;
  double amplitude = 0.0;
  std::vector<double> roots;          // window roots, ascending
  std::vector<double> filler_roots;   // outside the window, present when m < k + 1
  double window = 0.0;                // fixed points are counted in (-window, window)
  PolyMap map = PolyMap::univariate(std::vector<double>{0.0, 1.0});
  double perturbation_norm = 0.0;     // max coefficient difference from the seed map
  double perturbation_bound = 0.0;
  int certified_count = 0;
  double min_margin = 0.0;
  std::vector<double> multipliers;    // at the window fixed points, ascending position
  int attempts = 0;
  std::optional<int> n1;
  std::optional<long long> a_n1;
};

// Builds x -> x + c prod_i (x - r_i) prod_j (x - R_j) with the m roots r_i
// on a grid of spacing delta centred at 0 and k + 1 - m filler roots R_j
// outside the window, then verifies through the solver and classify that
// exactly m fixed points lie in the window, each with margin >= 10 eta.
// Throws InvalidInput for m < 1, Infeasible above the cap and
// CertificationFailure once the retries are used up.
SplitPlan split(const NormalForm& seed, int m, const SplitOptions& options = {});

// Largest n with n * a(n) <= cap, 0 when none.
int largest_feasible_n1(const std::function<long long(int)>& a, int cap);

struct DemandResult {
  SplitPlan plan;
  CensusTable census;
};

// m = n1 * a(n1) fixed points via split, then a census through period n1
// over the reals. Fixed points are period-n1 points, so P_{n1} >= m.
DemandResult demand_schedule(const std::function<long long(int)>& a, int n1, const NormalForm& seed = {},
                             const SplitOptions& options = {}, int seed_grid = 4001);

}  // namespace orbitlab
