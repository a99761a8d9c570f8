#include "orbitlab/census.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orbitlab/error.hpp"
#include "orbitlab/series.hpp"

namespace orbitlab {

CensusTable build_census(const PolyMap& map, int n_max, const CensusConfig& config) {
  if (n_max < 1) throw InvalidInput("n_max must be >= 1");
  CensusTable table;
  table.n_max = n_max;
  table.field = map.field();
  table.dimension = map.dimension();
  table.degree = map.degree();
  for (int n = 1; n <= n_max; ++n) {
    CensusRow row;
    row.n = n;
    try {
      const SolveReport report = solve(map, n, config.solve, config.method);
      row.method = report.diagnostics.root_method;
      row.completeness = report.completeness;
      row.bezout_bound = report.bezout_bound;
      row.P_complex = report.complex_isolated;
      row.P = report.isolated_count();
      row.nonisolated = report.points.size() - row.P;
      const std::vector<Orbit> orbits = orbit_partition(report.points, map, config.solve.tol.dedup);
      for (const Orbit& orbit : orbits) {
        const OrbitRecord rec = multipliers(map, orbit, config.classify);
        if (rec.classification != Classification::Hyperbolic) ++row.marginal_orbits;
        if (orbit.least_period != n) continue;
        row.min_margin = std::min(row.min_margin, rec.margin);
        for (const PeriodicPoint& p : orbit.points)
          if (p.isolated_certificate) ++row.Q;
      }
      if (report.diagnostics.identically_periodic) row.flags.push_back("every point is periodic (nonisolated)");
      if (row.nonisolated > 0) row.flags.push_back(std::to_string(row.nonisolated) + " nonisolated point(s)");
      if (row.marginal_orbits > 0) row.flags.push_back(std::to_string(row.marginal_orbits) + " marginal orbit(s)");
      if (report.completeness == Completeness::Heuristic) row.flags.push_back("heuristic completeness (seeded Newton)");
      row.flagged = !row.flags.empty();
      row.available = true;
    } catch (const CertificationFailure&) {
      throw;
    } catch (const Error& e) {
      row.available = false;
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

ZetaTruncation finish_zeta(const std::vector<double>& counts) {
  const int order = static_cast<int>(counts.size());
  ZetaTruncation z;
  z.order = order;
  std::vector<double> log_series(static_cast<std::size_t>(order) + 1, 0.0);
  for (int n = 1; n <= order; ++n) log_series[static_cast<std::size_t>(n)] = counts[static_cast<std::size_t>(n - 1)] / n;
  z.coefficients = series::exp(log_series);

  const int tail = (order + 1) / 2;
  double growth = 0.0;
  for (int n = order - tail + 1; n <= order; ++n)
    growth = std::max(growth, std::pow(std::abs(z.coefficients[static_cast<std::size_t>(n)]), 1.0 / n));
  z.radius_estimate = growth > 0.0 ? 1.0 / growth : INFINITY;

  for (int n = 1; n <= order; ++n) {
    const double p = counts[static_cast<std::size_t>(n - 1)];
    if (p < 1.0) continue;
    const double c = std::log(p) / n;
    if (!z.am_argmax || c > z.am_constant) {
      z.am_constant = c;
      z.am_argmax = n;
    }
  }
  return z;
}

}  // namespace

ZetaTruncation zeta_from_counts(const std::vector<double>& counts) {
  if (counts.empty()) throw InvalidInput("zeta order must be >= 1");
  return finish_zeta(counts);
}

ZetaTruncation zeta_truncation(const CensusTable& table, int order) {
  if (order < 1 || order > table.n_max) throw InvalidInput("zeta order must lie in [1, n_max]");
  std::vector<double> counts;
  for (int n = 1; n <= order; ++n) {
    const CensusRow& r = table.row(n);
    if (!r.available) throw InvalidInput("census row " + std::to_string(n) + " is unavailable: " + r.error);
    if (r.flagged) {
      std::string why;
      for (const std::string& f : r.flags) why += (why.empty() ? "" : "; ") + f;
      throw InvalidInput("census row " + std::to_string(n) + " is flagged (" + why + "); zeta needs exact counts");
    }
    counts.push_back(static_cast<double>(r.P));
  }
  return finish_zeta(counts);
}

GrowthStats growth_stats(const CensusTable& table, int window) {
  GrowthStats g;
  g.window = window > 0 ? std::min(window, table.n_max) : (table.n_max + 1) / 2;
  for (const CensusRow& r : table.rows) {
    if (r.available && r.P >= 1) g.bowen_sequence.emplace_back(std::log(static_cast<double>(r.P)) / r.n);
    else g.bowen_sequence.emplace_back(std::nullopt);
  }
  for (std::size_t i = g.bowen_sequence.size() - static_cast<std::size_t>(g.window); i < g.bowen_sequence.size(); ++i) {
    const auto& v = g.bowen_sequence[i];
    if (v && (!g.bowen_limsup_proxy || *v > *g.bowen_limsup_proxy)) g.bowen_limsup_proxy = v;
  }
  return g;
}

std::vector<int> mobius_violations(const CensusTable& table) {
  std::vector<int> bad;
  for (const CensusRow& r : table.rows) {
    bool usable = true;
    std::size_t sum = 0;
    for (int d = 1; d <= r.n; ++d) {
      if (r.n % d != 0) continue;
      const CensusRow& rd = table.row(d);
      if (!rd.available || rd.flagged) usable = false;
      sum += rd.Q;
    }
    if (usable && sum != r.P) bad.push_back(r.n);
  }
  return bad;
}

double log_derivative_mismatch(const ZetaTruncation& zeta, const std::vector<double>& counts) {
  const std::vector<double> dz = series::derivative(zeta.coefficients);
  const std::vector<double> q = series::divide(dz, zeta.coefficients);
  double worst = 0.0;
  for (std::size_t i = 0; i < q.size() && i < counts.size(); ++i)
    worst = std::max(worst, std::abs(q[i] - counts[i]) / std::max(1.0, std::abs(counts[i])));
  return worst;
}

std::string census_csv(const CensusTable& table) {
  std::ostringstream os;
  os.precision(17);
  os << "n,P_n,Q_n,log_P_n_over_n\n";
  for (const CensusRow& r : table.rows) {
    os << r.n << ',';
    if (!r.available) {
      os << ",,\n";
      continue;
    }
    os << r.P << ',' << r.Q << ',';
    if (r.P >= 1) os << std::log(static_cast<double>(r.P)) / r.n;
    os << '\n';
  }
  return os.str();
}

}  // namespace orbitlab
