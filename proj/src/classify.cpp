#include "orbitlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbitlab/error.hpp"

namespace orbitlab {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Hyperbolic: return "hyperbolic";
    case Classification::Nonhyperbolic: return "nonhyperbolic";
    default: return "marginal";
  }
}

namespace {

OrbitRecord build_record(const PolyMap& map, const std::vector<Point>& cycle, bool isolated,
                         const ClassifyOptions& options) {
  if (cycle.empty()) throw InvalidInput("empty cycle");
  const int n = map.dimension();
  const PolyMap cmap = map.complexified();
  Matrix product = Matrix::Identity(n, n);
  Point image;
  Matrix jac;
  const std::size_t d = cycle.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (cycle[i].size() != n) throw InvalidInput("cycle point has wrong dimension");
    cmap.evaluate_into(cycle[i], image, &jac);
    if (!jac.allFinite() || !image.allFinite())
      throw NonFinite("Jacobian along the cycle overflowed", static_cast<int>(i) + 1);
    if (max_norm_distance(image, cycle[(i + 1) % d]) > options.closure_tolerance)
      throw Inconsistent("cycle does not close under the map");
    product = jac * product;
  }
  if (!product.allFinite()) throw NonFinite("cycle Jacobian product overflowed", static_cast<int>(d));

  OrbitRecord r;
  r.points = cycle;
  r.least_period = static_cast<int>(d);
  r.isolated = isolated;
  Eigen::ComplexEigenSolver<Matrix> es(product, false);
  for (Eigen::Index i = 0; i < n; ++i) r.multipliers.push_back(es.eigenvalues()[i]);
  std::sort(r.multipliers.begin(), r.multipliers.end(), [](Scalar a, Scalar b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  r.margin = INFINITY;
  for (const Scalar& lambda : r.multipliers) {
    r.margin = std::min(r.margin, std::abs(std::abs(lambda) - 1.0));
    const Matrix shifted = product - lambda * Matrix::Identity(n, n);
    r.char_residual.push_back(std::abs(shifted.determinant()));
  }
  if (r.margin > options.eta) r.classification = Classification::Hyperbolic;
  else r.classification = isolated ? Classification::Marginal : Classification::Nonhyperbolic;
  return r;
}

}  // namespace

OrbitRecord multipliers(const PolyMap& map, const std::vector<Point>& cycle, const ClassifyOptions& options) {
  return build_record(map, cycle, true, options);
}

OrbitRecord multipliers(const PolyMap& map, const Orbit& orbit, const ClassifyOptions& options) {
  std::vector<Point> cycle;
  bool isolated = true;
  for (const PeriodicPoint& p : orbit.points) {
    cycle.push_back(p.location);
    isolated = isolated && p.isolated_certificate;
  }
  return build_record(map, cycle, isolated, options);
}

std::vector<Scalar> period_multipliers(const OrbitRecord& record, int n) {
  if (n < 1 || n % record.least_period != 0)
    throw InvalidInput("period must be a positive multiple of the least period");
  std::vector<Scalar> out;
  for (const Scalar& m : record.multipliers) out.push_back(std::pow(m, n / record.least_period));
  return out;
}

bool check_lambda0(const OrbitRecord& record, Scalar lambda0, double tol) {
  if (std::abs(std::abs(lambda0) - 1.0) > 1e-12) throw InvalidInput("lambda0 must lie on the unit circle");
  return std::any_of(record.multipliers.begin(), record.multipliers.end(),
                     [&](const Scalar& m) { return std::abs(m - lambda0) <= tol; });
}

TransversalityVerdict check_transversal(const OrbitRecord& record, int period_n, double tol) {
  if (period_n < 1) throw InvalidInput("period must be >= 1");
  TransversalityVerdict v;
  v.period_n = period_n;
  for (const Scalar& m : record.multipliers) {
    // Nearest n-th root of unity to m.
    const double turns = std::arg(m) / (2.0 * std::numbers::pi) * period_n;
    long j = std::lround(turns) % period_n;
    if (j < 0) j += period_n;
    const Scalar root = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / period_n);
    if (std::abs(m - root) <= tol) v.resonant_roots.push_back(root);
  }
  v.transversal = v.resonant_roots.empty();
  return v;
}

}  // namespace orbitlab
