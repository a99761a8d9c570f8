#include "orbitlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "orbitlab/error.hpp"
#include "orbitlab/random.hpp"
#include "orbitlab/roots.hpp"

namespace orbitlab {

std::string to_string(Completeness c) { return c == Completeness::Certified ? "certified" : "heuristic"; }

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Univariate: return "univariate";
    case SolveMethod::Newton: return "newton";
    default: return "auto";
  }
}

SolveMethod solve_method_from_string(const std::string& s) {
  if (s == "auto") return SolveMethod::Auto;
  if (s == "univariate") return SolveMethod::Univariate;
  if (s == "newton") return SolveMethod::Newton;
  throw InvalidInput("unknown solve method '" + s + "'");
}

std::size_t SolveReport::isolated_count() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const PeriodicPoint& p) { return p.isolated_certificate; }));
}

bool canonical_less(const Point& a, const Point& b) {
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

double max_norm_distance(const Point& a, const Point& b) {
  double d = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

namespace {

bool finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// P^(k)(z) - z and its derivative for an N = 1 map, by Horner per step.
class UnivariateIterate {
 public:
  UnivariateIterate(const PolyMap& map, int k) : coeffs_(map.univariate_coefficients()), k_(k) {}

  bool operator()(Scalar z, Scalar& f, Scalar& df) const {
    Scalar x = z, d(1);
    for (int s = 0; s < k_; ++s) {
      Scalar v(0), dv(0);
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        dv = dv * x + v;
        v = v * x + *it;
      }
      d *= dv;
      x = v;
      if (!finite(x) || !finite(d)) return false;
    }
    f = x - z;
    df = d - 1.0;
    return true;
  }

 private:
  std::vector<Scalar> coeffs_;
  int k_;
};

struct Polished {
  Scalar z;
  double residual;
  Scalar derivative;
  bool ok;
};

// Newton until the residual stops decreasing; multiple roots converge
// linearly, so no early exit at the polishing target.
Polished polish_root(const UnivariateIterate& f, Scalar z, bool keep_real) {
  if (keep_real) z = Scalar(z.real(), 0.0);
  Scalar v, d;
  if (!f(z, v, d)) return {z, INFINITY, Scalar(0), false};
  double r = std::abs(v);
  for (int it = 0; it < 100 && r > 0.0; ++it) {
    if (d == Scalar(0)) break;
    Scalar next = z - v / d;
    if (keep_real) next = Scalar(next.real(), 0.0);
    Scalar nv, nd;
    if (!f(next, nv, nd)) break;
    const double nr = std::abs(nv);
    if (!(nr < r)) break;
    z = next;
    v = nv;
    d = nd;
    r = nr;
  }
  return {z, r, d, true};
}

struct Cluster {
  Scalar center;
  int size;
};

std::vector<Cluster> cluster_roots(std::vector<Scalar> roots, double tol) {
  std::sort(roots.begin(), roots.end(), [](Scalar a, Scalar b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (roots[j].real() - roots[i].real() > tol) break;
      if (std::abs(roots[i] - roots[j]) <= tol) parent[find(j)] = find(i);
    }
  std::vector<Cluster> out;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.size());
      out.push_back({Scalar(0), 0});
    }
    Cluster& c = out[static_cast<std::size_t>(slot[r])];
    c.center += roots[i];
    ++c.size;
  }
  for (Cluster& c : out) c.center /= static_cast<double>(c.size);
  return out;
}

PeriodicPoint make_point(Scalar z, int k, const Polished& p, int multiplicity, const SolverTolerances& tol) {
  PeriodicPoint pt;
  pt.location = Point::Constant(1, z);
  pt.period_n = k;
  pt.residual = p.residual;
  pt.newton_converged = p.residual <= tol.polish;
  pt.min_singular_value = std::abs(p.derivative);
  pt.multiplicity = multiplicity;
  pt.isolated_certificate = multiplicity == 1 && pt.min_singular_value >= tol.singular;
  return pt;
}

void sort_points(std::vector<PeriodicPoint>& pts) {
  std::sort(pts.begin(), pts.end(),
            [](const PeriodicPoint& a, const PeriodicPoint& b) { return canonical_less(a.location, b.location); });
}

void enforce_bezout(const SolveReport& r) {
  if (r.complex_count && *r.complex_count > r.bezout_bound) {
    std::ostringstream os;
    os << "Bezout ceiling violated: " << *r.complex_count << " period-" << r.period << " points exceed "
       << r.bezout_bound;
    throw CertificationFailure(os.str());
  }
}

}  // namespace

SolveReport solve_univariate(const PolyMap& map, int k, const SolveConfig& config) {
  if (map.dimension() != 1) throw InvalidInput("univariate solve requires N = 1");
  if (k < 1) throw InvalidInput("period must be >= 1");
  const PolyMap cmap = map.complexified();
  const Univariate<Scalar> iterate_poly = iterate_polynomial(cmap, k, config.degree_cap);
  const Univariate<Scalar> f_poly = iterate_poly - Univariate<Scalar>::identity();

  SolveReport report;
  report.period = k;
  report.field = map.field();
  report.bezout_bound = checked_power(static_cast<std::size_t>(map.degree()), static_cast<std::size_t>(k));
  report.completeness = Completeness::Certified;
  SolveDiagnostics& diag = report.diagnostics;
  diag.iterate_degree = f_poly.degree();
  diag.degree_deficient = f_poly.degree() < static_cast<int>(report.bezout_bound);

  if (f_poly.is_zero()) {
    // Every point is periodic: no isolated points exist.
    diag.identically_periodic = true;
    diag.root_method = "none";
    report.complex_count = 0;
    report.complex_isolated = 0;
    report.deficit = static_cast<long long>(report.bezout_bound);
    return report;
  }

  const UnivariateIterate f(cmap, k);
  std::vector<Scalar> raw;
  if (f_poly.degree() >= 1) {
    if (static_cast<std::size_t>(f_poly.degree()) <= config.companion_cap) {
      diag.root_method = "companion";
      raw = companion_roots(f_poly.coefficients());
    } else {
      diag.root_method = "aberth";
      raw = circle_guesses(f_poly.coefficients());
      aberth_refine(f, raw);
    }
  } else {
    diag.root_method = "none";
  }

  std::vector<Cluster> clusters;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<Scalar> polished;
    polished.reserve(raw.size());
    for (Scalar z : raw) polished.push_back(polish_root(f, z, false).z);
    clusters = cluster_roots(polished, config.tol.dedup);
    bool collision = false;
    for (const Cluster& c : clusters) {
      if (c.size < 2) continue;
      Scalar v, d;
      if (f(c.center, v, d) && std::abs(d) >= config.tol.singular) collision = true;
    }
    if (!collision || attempt == 1) break;
    // Two approximations converged to one simple root, so another root was
    // missed. Spread the duplicates and let Aberth repel them apart.
    diag.refined = true;
    raw.clear();
    for (const Cluster& c : clusters)
      for (int j = 0; j < c.size; ++j)
        raw.push_back(c.center + std::polar(1e-3 * std::max(1.0, std::abs(c.center)), 2.0 * M_PI * j / c.size + 0.3));
    aberth_refine(f, raw);
  }

  std::vector<PeriodicPoint> complex_points;
  std::vector<PeriodicPoint> real_points;
  for (const Cluster& c : clusters) {
    Polished p = c.size == 1 ? polish_root(f, c.center, false) : Polished{c.center, 0.0, Scalar(0), true};
    if (c.size > 1) {
      Scalar v, d;
      p.ok = f(c.center, v, d);
      p.residual = std::abs(v);
      p.derivative = d;
    }
    if (!p.ok || !(p.residual <= config.tol.residual)) {
      ++diag.rejected;
      continue;
    }
    complex_points.push_back(make_point(p.z, k, p, c.size, config.tol));
    if (map.field() == Field::Real && std::abs(p.z.imag()) <= config.tol.dedup * std::max(1.0, std::abs(p.z))) {
      Polished rp = c.size == 1 ? polish_root(f, p.z, true) : p;
      if (c.size > 1) {
        rp.z = Scalar(p.z.real(), 0.0);
        Scalar v, d;
        rp.ok = f(rp.z, v, d);
        rp.residual = std::abs(v);
        rp.derivative = d;
      }
      if (rp.ok && rp.residual <= config.tol.residual) real_points.push_back(make_point(rp.z, k, rp, c.size, config.tol));
    }
  }

  report.complex_count = complex_points.size();
  report.complex_isolated = static_cast<std::size_t>(std::count_if(
      complex_points.begin(), complex_points.end(), [](const PeriodicPoint& p) { return p.isolated_certificate; }));
  report.deficit = static_cast<long long>(report.bezout_bound) - static_cast<long long>(complex_points.size());
  report.points = map.field() == Field::Real ? std::move(real_points) : std::move(complex_points);
  sort_points(report.points);
  enforce_bezout(report);
  return report;
}

namespace {

struct NewtonResult {
  bool diverged = false;
  bool accepted = false;
  PeriodicPoint point;
};

bool eval_system(const PolyMap& map, int k, const Point& x, Point& f, Matrix& jf) {
  const int n = map.dimension();
  Point cur = x, next;
  Matrix step, acc = Matrix::Identity(n, n);
  for (int s = 0; s < k; ++s) {
    map.evaluate_into(cur, next, &step);
    acc = step * acc;
    cur = next;
  }
  f = cur - x;
  jf = acc - Matrix::Identity(n, n);
  return f.allFinite() && jf.allFinite();
}

NewtonResult newton_from(const PolyMap& map, int k, Point x, bool real, const SolveConfig& cfg) {
  NewtonResult out;
  Point f;
  Matrix jf;
  if (!eval_system(map, k, x, f, jf)) {
    out.diverged = true;
    return out;
  }
  double r = f.cwiseAbs().maxCoeff();
  for (int it = 0; it < cfg.max_newton_iterations && r > 0.0; ++it) {
    const Point delta = jf.fullPivLu().solve(-f);
    if (!delta.allFinite()) break;
    double t = 1.0;
    bool improved = false;
    while (t >= 1e-6) {
      Point trial = x + t * delta;
      if (real) trial = trial.real().cast<Scalar>();
      Point tf;
      Matrix tj;
      if (eval_system(map, k, trial, tf, tj)) {
        const double tr = tf.cwiseAbs().maxCoeff();
        if (tr < (1.0 - 1e-4 * t) * r || (r <= cfg.tol.residual && tr < r)) {
          x = trial;
          f = tf;
          jf = tj;
          r = tr;
          improved = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!improved) break;
    if (x.cwiseAbs().maxCoeff() > 1e12) {
      out.diverged = true;
      return out;
    }
  }
  if (!(r <= cfg.tol.residual)) return out;
  out.accepted = true;
  PeriodicPoint& p = out.point;
  p.location = x;
  p.period_n = k;
  p.residual = r;
  p.newton_converged = r <= cfg.tol.polish;
  Eigen::JacobiSVD<Matrix> svd(jf);
  p.min_singular_value = svd.singularValues().minCoeff();
  p.isolated_certificate = p.min_singular_value >= cfg.tol.singular;
  return out;
}

}  // namespace

SolveReport solve_newton(const PolyMap& map, int k, const SolveConfig& config) {
  if (k < 1) throw InvalidInput("period must be >= 1");
  const SeedPlan& plan = config.seeds;
  if (plan.grid < 0 || plan.random < 0 || (plan.grid == 0 && plan.random == 0))
    throw InvalidInput("seed plan has zero seeds");
  if (!(plan.lower < plan.upper)) throw InvalidInput("seed box must satisfy lower < upper");

  const int n = map.dimension();
  const bool real = map.field() == Field::Real;
  const int axes = real ? n : 2 * n;
  const std::size_t grid_count = plan.grid > 0 ? checked_power(static_cast<std::size_t>(plan.grid), static_cast<std::size_t>(axes)) : 0;
  if (grid_count > 50'000'000) throw Infeasible("seed grid too large");

  const PolyMap cmap = map.complexified();
  SolveReport report;
  report.period = k;
  report.field = map.field();
  report.bezout_bound = checked_power(static_cast<std::size_t>(map.degree()),
                                      static_cast<std::size_t>(k) * static_cast<std::size_t>(n));
  report.completeness = Completeness::Heuristic;
  SolveDiagnostics& diag = report.diagnostics;
  diag.root_method = "newton";

  auto coordinate = [&](const std::vector<double>& reals) {
    Point x(n);
    for (int i = 0; i < n; ++i)
      x[i] = real ? Scalar(reals[static_cast<std::size_t>(i)], 0.0)
                  : Scalar(reals[static_cast<std::size_t>(2 * i)], reals[static_cast<std::size_t>(2 * i + 1)]);
    return x;
  };

  std::vector<PeriodicPoint> candidates;
  auto run = [&](const Point& seed) {
    ++diag.seeds;
    NewtonResult r = newton_from(cmap, k, seed, real, config);
    if (r.diverged) ++diag.diverged;
    else if (!r.accepted) ++diag.not_converged;
    else candidates.push_back(std::move(r.point));
  };

  std::vector<double> reals(static_cast<std::size_t>(axes));
  const double width = plan.upper - plan.lower;
  for (std::size_t g = 0; g < grid_count; ++g) {
    std::size_t rem = g;
    for (int a = 0; a < axes; ++a) {
      const std::size_t idx = rem % static_cast<std::size_t>(plan.grid);
      rem /= static_cast<std::size_t>(plan.grid);
      reals[static_cast<std::size_t>(a)] = plan.lower + width * (static_cast<double>(idx) + 0.5) / plan.grid;
    }
    run(coordinate(reals));
  }
  Rng rng(config.rng_seed);
  for (int s = 0; s < plan.random; ++s) {
    for (double& v : reals) v = rng.uniform(plan.lower, plan.upper);
    run(coordinate(reals));
  }

  // Seeds may land on only part of a cycle; add the polished images of every
  // accepted point so the set is closed under the map.
  const std::size_t found = candidates.size();
  for (std::size_t c = 0; c < found; ++c) {
    Point y = candidates[c].location;
    for (int s = 1; s < k; ++s) {
      Point next;
      cmap.evaluate_into(y, next, nullptr);
      if (!next.allFinite()) break;
      y = next;
      NewtonResult r = newton_from(cmap, k, y, real, config);
      if (r.accepted) candidates.push_back(std::move(r.point));
    }
  }

  sort_points(candidates);
  std::vector<PeriodicPoint> unique;
  for (PeriodicPoint& c : candidates) {
    auto hit = std::find_if(unique.begin(), unique.end(), [&](const PeriodicPoint& u) {
      return max_norm_distance(u.location, c.location) <= config.tol.dedup;
    });
    if (hit == unique.end()) unique.push_back(std::move(c));
    else if (c.residual < hit->residual) *hit = std::move(c);
  }
  sort_points(unique);
  report.points = std::move(unique);
  if (!real) {
    report.complex_count = report.points.size();
    report.complex_isolated = report.isolated_count();
    report.deficit = static_cast<long long>(report.bezout_bound) - static_cast<long long>(report.points.size());
  }
  enforce_bezout(report);
  return report;
}

SolveReport solve(const PolyMap& map, int k, const SolveConfig& config, SolveMethod method) {
  if (method == SolveMethod::Univariate) return solve_univariate(map, k, config);
  if (method == SolveMethod::Newton) return solve_newton(map, k, config);
  if (map.dimension() == 1 &&
      checked_power(static_cast<std::size_t>(map.degree()), static_cast<std::size_t>(k)) <= config.degree_cap)
    return solve_univariate(map, k, config);
  if (config.seeds.grid > 0 || config.seeds.random > 0) return solve_newton(map, k, config);
  if (map.dimension() == 1)
    throw Infeasible("iterate degree " + std::to_string(map.degree()) + "^" + std::to_string(k) +
                     " exceeds the degree cap and no seed plan was given");
  throw InvalidInput("N >= 2 requires a seed plan");
}

std::vector<Orbit> orbit_partition(const std::vector<PeriodicPoint>& points, const PolyMap& map,
                                   double match_tolerance) {
  if (points.empty()) return {};
  const int period = points.front().period_n;
  for (const PeriodicPoint& p : points)
    if (p.period_n != period) throw InvalidInput("orbit_partition: points have different periods");

  const PolyMap cmap = map.complexified();
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(points[a].location, points[b].location); });

  std::vector<int> owner(points.size(), -1);
  std::vector<Orbit> orbits;
  for (std::size_t start : order) {
    if (owner[start] >= 0) continue;
    const int id = static_cast<int>(orbits.size());
    Orbit orbit;
    std::vector<std::size_t> members{start};
    owner[start] = id;
    std::size_t cur = start;
    while (true) {
      Point image;
      cmap.evaluate_into(points[cur].location, image, nullptr);
      std::size_t best = points.size();
      double best_d = INFINITY;
      for (std::size_t j = 0; j < points.size(); ++j) {
        const double d = max_norm_distance(image, points[j].location);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (!(best_d <= match_tolerance))
        throw Inconsistent("orbit_partition: image of a point matches no point in the set");
      if (best == start) break;
      if (owner[best] >= 0)
        throw Inconsistent("orbit_partition: orbit does not close on its starting point");
      owner[best] = id;
      members.push_back(best);
      cur = best;
      if (static_cast<int>(members.size()) > period)
        throw Inconsistent("orbit_partition: cycle longer than the queried period");
    }
    orbit.least_period = static_cast<int>(members.size());
    if (period % orbit.least_period != 0)
      throw Inconsistent("orbit_partition: least period does not divide the queried period");
    for (std::size_t m : members) orbit.points.push_back(points[m]);
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace orbitlab
