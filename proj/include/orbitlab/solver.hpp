#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitlab/polymap.hpp"

namespace orbitlab {

struct SolverTolerances {
  double residual = 1e-10;  // acceptance: max-norm of P^(n)(x) - x
  double polish = 1e-12;    // Newton polishing target
  double dedup = 1e-7;      // max-norm distance under which points coincide
  double singular = 1e-8;   // smallest singular value for an isolation certificate
};

// Seeds for the Newton path: a uniform grid with `grid` points per real axis
// of the box [lower, upper] (each real and, over C, each imaginary part),
// plus `random` uniform draws from the same box.
struct SeedPlan {
  double lower = -2.0;
  double upper = 2.0;
  int grid = 0;
  int random = 0;
};

struct SolveConfig {
  SolverTolerances tol;
  std::size_t degree_cap = kDefaultDegreeCap;      // refuse D^k above this
  std::size_t companion_cap = kDefaultDegreeCap;   // companion matrix up to this degree, Aberth above
  SeedPlan seeds;
  std::uint64_t rng_seed = 0;
  int max_newton_iterations = 100;
};

enum class Completeness { Certified, Heuristic };
std::string to_string(Completeness c);

enum class SolveMethod { Auto, Univariate, Newton };
std::string to_string(SolveMethod m);
SolveMethod solve_method_from_string(const std::string& s);

struct PeriodicPoint {
  Point location;
  int period_n = 0;
  double residual = 0.0;
  bool newton_converged = false;
  bool isolated_certificate = false;
  double min_singular_value = 0.0;  // of x -> P^(n)(x) - x at the point
  int multiplicity = 1;             // root cluster size on the univariate path
};

struct SolveDiagnostics {
  std::string root_method;        // "companion", "aberth" or "newton"
  int iterate_degree = -1;        // actual degree of P^(n)(x) - x (univariate)
  bool degree_deficient = false;  // iterate degree below the Bezout bound
  bool identically_periodic = false;  // P^(n)(x) - x vanishes identically
  int rejected = 0;               // candidates failing residual acceptance
  int seeds = 0;
  int diverged = 0;               // seeds whose Newton run overflowed
  int not_converged = 0;
  bool refined = false;           // Aberth refinement after a root collision
};

struct SolveReport {
  int period = 0;
  Field field = Field::Complex;
  std::vector<PeriodicPoint> points;  // in the map's field, canonical order
  std::size_t bezout_bound = 0;       // D^(kN)
  Completeness completeness = Completeness::Heuristic;
  std::optional<std::size_t> complex_count;  // distinct points over C, when known
  std::optional<std::size_t> complex_isolated;  // of those, isolated ones
  std::optional<long long> deficit;          // bezout_bound - complex_count
  SolveDiagnostics diagnostics;

  std::size_t isolated_count() const;
};

// All period-k points of an N = 1 map from the explicit iterate polynomial.
// Completeness is certified; multiple roots come back with
// isolated_certificate = false and their cluster size as multiplicity.
SolveReport solve_univariate(const PolyMap& map, int k, const SolveConfig& config = {});

// Damped Newton on P^(k)(x) - x from every seed of config.seeds.
// Deterministic given config.rng_seed.
SolveReport solve_newton(const PolyMap& map, int k, const SolveConfig& config);

// Univariate when N = 1 and D^k fits the degree cap, Newton otherwise.
SolveReport solve(const PolyMap& map, int k, const SolveConfig& config, SolveMethod method = SolveMethod::Auto);

struct Orbit {
  std::vector<PeriodicPoint> points;  // x_0, P(x_0), ..., in map order
  int least_period = 0;
};

// Groups period-n points into cycles by following the map. Throws
// Inconsistent when an image matches no point or a cycle fails to close.
std::vector<Orbit> orbit_partition(const std::vector<PeriodicPoint>& points, const PolyMap& map,
                                   double match_tolerance = SolverTolerances{}.dedup);

// Lexicographic order on (re, im) of each coordinate.
bool canonical_less(const Point& a, const Point& b);
double max_norm_distance(const Point& a, const Point& b);

}  // namespace orbitlab
