#pragma once

#include <string>
#include <vector>

#include "orbitlab/polymap.hpp"
#include "orbitlab/solver.hpp"

namespace orbitlab {

inline constexpr double kDefaultEta = 1e-8;

// hyperbolic: margin > eta. marginal: margin <= eta. nonhyperbolic: margin <=
// eta and some orbit point has a singular P^(n)(x) - x Jacobian, which makes
// 1 an exact eigenvalue of the period-n linearization.
enum class Classification { Hyperbolic, Marginal, Nonhyperbolic };
std::string to_string(Classification c);

struct OrbitRecord {
  std::vector<Point> points;        // x_0, P(x_0), ..., x_{d-1}
  int least_period = 0;
  std::vector<Scalar> multipliers;  // eigenvalues of d P^(d) at x_0, canonical order
  Classification classification = Classification::Marginal;
  double margin = 0.0;              // min over multipliers of ||lambda| - 1|
  std::vector<double> char_residual;  // |det(d P^(d) - lambda I)| per multiplier
  bool isolated = true;             // every point carried an isolation certificate
};

struct TransversalityVerdict {
  int period_n = 0;
  std::vector<Scalar> resonant_roots;
  bool transversal = true;
};

struct ClassifyOptions {
  double eta = kDefaultEta;
  double closure_tolerance = 1e-6;
};

// Multipliers of a cycle from the Jacobian product around it.
// Throws Inconsistent when the cycle does not close, NonFinite on overflow.
OrbitRecord multipliers(const PolyMap& map, const std::vector<Point>& cycle, const ClassifyOptions& options = {});
OrbitRecord multipliers(const PolyMap& map, const Orbit& orbit, const ClassifyOptions& options = {});

// Eigenvalues of d P^(n) along the orbit, for n a multiple of the least
// period: each least-period multiplier raised to n / d.
std::vector<Scalar> period_multipliers(const OrbitRecord& record, int n);

// True iff some multiplier lies within tol of lambda0 (|lambda0| = 1).
bool check_lambda0(const OrbitRecord& record, Scalar lambda0, double tol);

TransversalityVerdict check_transversal(const OrbitRecord& record, int period_n, double tol);

}  // namespace orbitlab
