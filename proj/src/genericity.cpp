#include "orbitlab/genericity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orbitlab/error.hpp"
#include "orbitlab/random.hpp"

namespace orbitlab {

void validate(const SampleConfig& c) {
  if (c.dimension < 1) throw InvalidInput("dimension must be >= 1");
  if (c.degree < 1) throw InvalidInput("degree must be >= 1");
  if (c.k_max < 1) throw InvalidInput("k_max must be >= 1");
  if (c.trials < 1) throw InvalidInput("trials must be >= 1");
  if (c.eps_ladder.empty()) throw InvalidInput("epsilon ladder is empty");
  for (std::size_t i = 0; i < c.eps_ladder.size(); ++i) {
    if (!(c.eps_ladder[i] > 0.0)) throw InvalidInput("epsilon ladder entries must be positive");
    if (i > 0 && !(c.eps_ladder[i] < c.eps_ladder[i - 1]))
      throw InvalidInput("epsilon ladder must be strictly decreasing");
  }
  for (const Scalar& l : c.lambda0s)
    if (std::abs(std::abs(l) - 1.0) > 1e-12) throw InvalidInput("lambda0 values must lie on the unit circle");
  if (c.dimension == 1) {
    if (checked_power(static_cast<std::size_t>(c.degree), static_cast<std::size_t>(c.k_max)) > c.solve.degree_cap)
      throw Infeasible("degree^k_max exceeds the degree cap");
  } else if (c.solve.seeds.grid <= 0 && c.solve.seeds.random <= 0) {
    throw Infeasible("N >= 2 sampling needs a seed plan");
  }
}

PolyMap parabolic_control(int dimension, int degree) {
  PolyMap::CoefficientTable t;
  auto unit = [&](int i) {
    std::vector<int> e(static_cast<std::size_t>(dimension), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return e;
  };
  std::vector<Scalar> v(static_cast<std::size_t>(dimension), Scalar(0));
  v[0] = 1.0;
  t[MultiIndex(unit(0))] = v;
  std::vector<int> sq(static_cast<std::size_t>(dimension), 0);
  sq[0] = 2;
  t[MultiIndex(sq)] = v;
  for (int i = 1; i < dimension; ++i) {
    std::vector<Scalar> w(static_cast<std::size_t>(dimension), Scalar(0));
    w[static_cast<std::size_t>(i)] = 0.5;
    t[MultiIndex(unit(i))] = w;
  }
  return PolyMap(dimension, std::max(degree, 2), Field::Real, std::move(t));
}

PolyMap hyperbolic_control(int dimension, int degree) {
  PolyMap::CoefficientTable t;
  std::vector<int> zero(static_cast<std::size_t>(dimension), 0);
  t[MultiIndex(zero)] = std::vector<Scalar>(static_cast<std::size_t>(dimension), Scalar(-2.0));
  for (int i = 0; i < dimension; ++i) {
    std::vector<int> e(static_cast<std::size_t>(dimension), 0);
    e[static_cast<std::size_t>(i)] = 2;
    std::vector<Scalar> v(static_cast<std::size_t>(dimension), Scalar(0));
    v[static_cast<std::size_t>(i)] = 1.0;
    t[MultiIndex(e)] = v;
  }
  return PolyMap(dimension, std::max(degree, 2), Field::Real, std::move(t));
}

TrialOutcome examine_map(const PolyMap& map, const SampleConfig& config) {
  TrialOutcome out;
  out.hits.assign(config.lambda0s.size(), 0);
  const PolyMap target = config.orbit_field == Field::Complex ? map.complexified() : map;
  try {
    for (int k = 1; k <= config.k_max; ++k) {
      const SolveReport report = solve(target, k, config.solve);
      if (map.dimension() >= 2 && config.orbit_field == Field::Complex && report.deficit && *report.deficit != 0) {
        out.failure = "incomplete solve (nonzero Bezout deficit)";
        return out;
      }
      if (report.diagnostics.identically_periodic) {
        out.failure = "every point periodic";
        return out;
      }
      for (const Orbit& orbit : orbit_partition(report.points, target, config.solve.tol.dedup)) {
        if (orbit.least_period != k) continue;
        const OrbitRecord rec = multipliers(target, orbit, config.classify);
        ++out.orbits;
        out.min_margin = std::min(out.min_margin, rec.margin);
        for (std::size_t i = 0; i < config.lambda0s.size(); ++i)
          if (check_lambda0(rec, config.lambda0s[i], config.lambda0_tol)) ++out.hits[i];
      }
    }
  } catch (const CertificationFailure&) {
    throw;
  } catch (const Error& e) {
    out.failure = e.what();
    return out;
  }
  out.ok = true;
  return out;
}

namespace {

PolyMap random_map(const SampleConfig& c, Rng& rng) {
  PolyMap::CoefficientTable t;
  for (const MultiIndex& alpha : all_multi_indices(c.dimension, c.degree)) {
    std::vector<Scalar> v(static_cast<std::size_t>(c.dimension));
    for (Scalar& z : v) z = Scalar(rng.uniform(-1.0, 1.0), 0.0);
    t[alpha] = v;
  }
  return PolyMap(c.dimension, c.degree, Field::Real, std::move(t));
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const std::size_t idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(sorted.size() - 1)));
  return sorted[idx];
}

}  // namespace

GenericityReport run_sampler(const SampleConfig& config) {
  validate(config);
  GenericityReport rep;
  rep.config = config;
  rep.eps_counts.assign(config.eps_ladder.size(), 0);
  rep.hits.resize(config.lambda0s.size());
  for (std::size_t i = 0; i < config.lambda0s.size(); ++i) rep.hits[i].lambda0 = config.lambda0s[i];

  Rng rng(config.rng_seed);
  std::vector<double> trial_margins;
  for (int t = 0; t < config.trials; ++t) {
    const PolyMap map = random_map(config, rng);
    const TrialOutcome o = examine_map(map, config);
    if (!o.ok) {
      ++rep.trials_excluded;
      ++rep.exclusion_reasons[o.failure];
      continue;
    }
    ++rep.trials_used;
    rep.orbits_examined += o.orbits;
    trial_margins.push_back(o.min_margin);
    for (std::size_t e = 0; e < config.eps_ladder.size(); ++e)
      if (o.min_margin < config.eps_ladder[e]) ++rep.eps_counts[e];
    for (std::size_t i = 0; i < o.hits.size(); ++i) {
      rep.hits[i].orbit_hits += o.hits[i];
      if (o.hits[i] > 0) ++rep.hits[i].trial_hits;
    }
  }
  if (rep.trials_used == 0) throw Error("all sampler trials failed");

  for (int c : rep.eps_counts) rep.frequencies.push_back(static_cast<double>(c) / rep.trials_used);
  std::sort(trial_margins.begin(), trial_margins.end());
  rep.margins = {trial_margins.front(), quantile(trial_margins, 0.01), quantile(trial_margins, 0.10),
                 quantile(trial_margins, 0.5), trial_margins.back()};

  if (config.planted_controls) {
    struct Planted {
      std::string name;
      PolyMap map;
      bool expect_hit;
    };
    const Planted planted[] = {
        {"parabolic", parabolic_control(config.dimension, config.degree), true},
        {"hyperbolic", hyperbolic_control(config.dimension, config.degree), false},
    };
    for (const Planted& p : planted) {
      const TrialOutcome o = examine_map(p.map, config);
      ControlResult cr;
      cr.name = p.name;
      cr.hits = o.hits;
      cr.min_margin = o.min_margin;
      cr.expect_hit = p.expect_hit;
      if (!o.ok) {
        cr.passed = false;
      } else if (p.expect_hit) {
        // The parabolic point has multiplier exactly 1: one orbit hits
        // lambda0 = 1 whenever 1 is among the tested values.
        cr.passed = true;
        for (std::size_t i = 0; i < config.lambda0s.size(); ++i)
          if (std::abs(config.lambda0s[i] - Scalar(1.0)) == 0.0 && o.hits[i] != 1) cr.passed = false;
        cr.passed = cr.passed && std::any_of(o.hits.begin(), o.hits.end(), [](int h) { return h > 0; });
      } else {
        cr.passed = std::all_of(o.hits.begin(), o.hits.end(), [](int h) { return h == 0; });
      }
      rep.controls.push_back(std::move(cr));
    }
  }
  return rep;
}

ScalingFit margin_scaling(const std::vector<double>& eps, const std::vector<double>& frequencies) {
  ScalingFit fit;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < eps.size() && i < frequencies.size(); ++i) {
    if (frequencies[i] <= 0.0) continue;
    xs.push_back(std::log(eps[i]));
    ys.push_back(std::log(frequencies[i]));
  }
  fit.rungs_used = static_cast<int>(xs.size());
  if (xs.empty()) {
    fit.note = "degenerate: all-zero";
    return fit;
  }
  if (xs.size() < 3) {
    fit.note = "degenerate: fewer than 3 nonzero rungs";
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.note = "least-squares slope of log frequency vs log eps";
  return fit;
}

ScalingFit margin_scaling(const GenericityReport& report) {
  return margin_scaling(report.config.eps_ladder, report.frequencies);
}

std::string genericity_csv(const GenericityReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "epsilon,frequency\n";
  for (std::size_t i = 0; i < report.frequencies.size(); ++i)
    os << report.config.eps_ladder[i] << ',' << report.frequencies[i] << '\n';
  return os.str();
}

}  // namespace orbitlab
