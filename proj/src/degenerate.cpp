#include "orbitlab/degenerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orbitlab/error.hpp"

namespace orbitlab {

PolyMap NormalForm::to_map() const {
  if (order < 1) throw InvalidInput("normal form order must be >= 1");
  if (leading == 0.0 || !std::isfinite(leading)) throw InvalidInput("normal form leading coefficient must be nonzero");
  std::vector<double> c(static_cast<std::size_t>(order) + 2, 0.0);
  c[1] = 1.0;
  c.back() = leading;
  return PolyMap::univariate(c);
}

std::string to_string(DegeneracyKind k) {
  switch (k) {
    case DegeneracyKind::Degenerate: return "degenerate";
    case DegeneracyKind::Hyperbolic: return "hyperbolic";
    case DegeneracyKind::MarginalNonUnit: return "marginal non-unit";
  }
  return "?";
}

namespace {

std::vector<double> real_coefficients(const PolyMap& map) {
  if (map.dimension() != 1) throw InvalidInput("expected a map of the line (N = 1)");
  std::vector<double> out;
  for (const Scalar& z : map.univariate_coefficients()) {
    if (z.imag() != 0.0) throw InvalidInput("expected real coefficients");
    out.push_back(z.real());
  }
  return out;
}

}  // namespace

DegeneracyResult detect_degeneracy(const PolyMap& map, double x0, double eta, double residual_tol) {
  const Univariate<double> f(real_coefficients(map));
  if (!std::isfinite(x0)) throw InvalidInput("x0 must be finite");
  if (std::abs(f(x0) - x0) > residual_tol * std::max(1.0, std::abs(x0)))
    throw InvalidInput("x0 is not a fixed point within the residual tolerance");

  const Univariate<double> shifted = f.compose(Univariate<double>(std::vector<double>{x0, 1.0}));
  std::vector<double> d(static_cast<std::size_t>(std::max(shifted.degree(), 1)) + 1, 0.0);
  for (int i = 0; i <= shifted.degree(); ++i) d[static_cast<std::size_t>(i)] = shifted.coefficient(i);
  d[0] -= x0;
  d[1] -= 1.0;

  DegeneracyResult r;
  r.displacement_taylor = d;
  r.multiplier = 1.0 + d[1];
  if (std::abs(d[1]) > eta) {
    r.kind = std::abs(std::abs(r.multiplier) - 1.0) > eta ? DegeneracyKind::Hyperbolic
                                                          : DegeneracyKind::MarginalNonUnit;
    return r;
  }
  for (std::size_t j = 2; j < d.size(); ++j) {
    if (std::abs(d[j]) > eta) {
      r.kind = DegeneracyKind::Degenerate;
      r.normal_form = NormalForm{static_cast<int>(j) - 1, d[j], 1.0};
      return r;
    }
  }
  throw Error("displacement is flat up to the map's degree at x0");
}

namespace {

struct Built {
  std::vector<double> roots, fillers;
  double window = 0.0;
  double amplitude = 0.0;
  Univariate<double> g;
};

Built build(const NormalForm& seed, int m, double delta, double c0, double min_slope) {
  Built b;
  b.window = m * delta / 2.0;
  for (int i = 1; i <= m; ++i) b.roots.push_back((i - (m + 1) / 2.0) * delta);
  const int extra = std::max(0, seed.order + 1 - m);
  for (int j = 1; j <= extra; ++j) b.fillers.push_back((j % 2 == 1 ? 1.0 : -1.0) * (b.window + j * delta));

  Univariate<double> shape = Univariate<double>::constant(1.0);
  for (double r : b.roots) shape = shape * Univariate<double>(std::vector<double>{-r, 1.0});
  for (double r : b.fillers) shape = shape * Univariate<double>(std::vector<double>{-r, 1.0});
  const Univariate<double> ds = shape.derivative();

  double c = c0;
  double smallest = INFINITY;
  for (double r : b.roots) smallest = std::min(smallest, std::abs(c * ds(r)));
  if (smallest < min_slope) c *= 1.5 * min_slope / smallest;
  // Keep every multiplier 1 + g'(r) away from -1 as well.
  for (int guard = 0; guard < 64; ++guard) {
    bool near_flip = false;
    for (double r : b.roots) near_flip = near_flip || std::abs(c * ds(r) + 2.0) < min_slope;
    if (!near_flip) break;
    c *= 1.05;
  }
  b.amplitude = c;
  b.g = Univariate<double>::constant(c) * shape;
  return b;
}

}  // namespace

SplitPlan split(const NormalForm& seed, int m, const SplitOptions& options) {
  if (seed.order < 1 || seed.leading == 0.0) throw InvalidInput("seed must have order >= 1 and nonzero leading coefficient");
  if (m < 1) throw InvalidInput("target count must be >= 1");
  if (m > options.cap) throw Infeasible("target count " + std::to_string(m) + " exceeds the split cap " + std::to_string(options.cap));
  if (!(options.delta > 0.0)) throw InvalidInput("root spacing must be positive");

  const std::vector<double> seed_coeffs = real_coefficients(seed.to_map());
  const double c0 = options.amplitude.value_or(seed.leading);
  if (c0 == 0.0 || !std::isfinite(c0)) throw InvalidInput("amplitude must be nonzero");

  double delta = options.delta;
  std::string last_failure;
  for (int attempt = 1; attempt <= options.retries + 1; ++attempt, delta /= 2.0) {
    const Built b = build(seed, m, delta, c0, options.min_slope);
    std::vector<double> coeffs = b.g.coefficients();
    if (coeffs.size() < 2) coeffs.resize(2, 0.0);
    coeffs[1] += 1.0;

    SplitPlan plan;
    plan.seed = seed;
    plan.target = m;
    plan.delta = delta;
    plan.amplitude = b.amplitude;
    plan.roots = b.roots;
    plan.filler_roots = b.fillers;
    plan.window = b.window;
    plan.map = PolyMap::univariate(coeffs);
    plan.attempts = attempt;
    for (std::size_t i = 0; i < std::max(coeffs.size(), seed_coeffs.size()); ++i) {
      const double a = i < coeffs.size() ? coeffs[i] : 0.0;
      const double s = i < seed_coeffs.size() ? seed_coeffs[i] : 0.0;
      plan.perturbation_norm = std::max(plan.perturbation_norm, std::abs(a - s));
    }
    double bound = std::abs(b.amplitude);
    for (double r : b.roots) bound *= 1.0 + std::abs(r);
    for (double r : b.fillers) bound *= 1.0 + std::abs(r);
    plan.perturbation_bound = bound + std::abs(seed.leading);

    SolveConfig cfg;
    cfg.degree_cap = std::max<std::size_t>(cfg.degree_cap, coeffs.size());
    const SolveReport report = solve_univariate(plan.map, 1, cfg);
    ClassifyOptions copt;
    copt.eta = options.eta;
    plan.min_margin = INFINITY;
    bool ok = true;
    for (const PeriodicPoint& p : report.points) {
      const double x = p.location(0).real();
      if (std::abs(x) >= plan.window) continue;
      if (!p.isolated_certificate) {
        ok = false;
        last_failure = "nonisolated fixed point in the window";
        break;
      }
      const OrbitRecord rec = multipliers(plan.map, std::vector<Point>{p.location}, copt);
      plan.min_margin = std::min(plan.min_margin, rec.margin);
      plan.multipliers.push_back(rec.multipliers.front().real());
      if (rec.margin >= 10.0 * options.eta) ++plan.certified_count;
    }
    if (ok && plan.certified_count != m) {
      ok = false;
      last_failure = "found " + std::to_string(plan.certified_count) + " certified fixed points in the window, expected " +
                     std::to_string(m);
    }
    if (ok && static_cast<int>(plan.multipliers.size()) != m) {
      ok = false;
      last_failure = "window holds " + std::to_string(plan.multipliers.size()) + " fixed points, expected " + std::to_string(m);
    }
    if (ok) return plan;
  }
  throw CertificationFailure("split verification failed after " + std::to_string(options.retries + 1) +
                             " attempts: " + last_failure);
}

int largest_feasible_n1(const std::function<long long(int)>& a, int cap) {
  int best = 0;
  for (int n = 1; n <= cap; ++n) {
    const long long v = a(n);
    if (v < 1) throw InvalidInput("sequence values must be positive integers");
    if (v > cap / n) break;
    best = n;
  }
  return best;
}

DemandResult demand_schedule(const std::function<long long(int)>& a, int n1, const NormalForm& seed,
                             const SplitOptions& options, int seed_grid) {
  if (n1 < 1) throw InvalidInput("n1 must be >= 1");
  const long long an = a(n1);
  if (an < 1) throw InvalidInput("sequence values must be positive integers");
  if (an > options.cap / n1) {
    throw Infeasible("n1 * a(n1) exceeds the split cap " + std::to_string(options.cap) +
                     "; largest feasible n1 is " + std::to_string(largest_feasible_n1(a, options.cap)));
  }
  const int m = static_cast<int>(n1 * an);
  DemandResult out{split(seed, m, options), CensusTable{}};
  out.plan.n1 = n1;
  out.plan.a_n1 = an;

  CensusConfig cfg;
  cfg.classify.eta = options.eta;
  cfg.solve.seeds.lower = -out.plan.window;
  cfg.solve.seeds.upper = out.plan.window;
  cfg.solve.seeds.grid = seed_grid;
  out.census = build_census(out.plan.map, n1, cfg);
  return out;
}

}  // namespace orbitlab
