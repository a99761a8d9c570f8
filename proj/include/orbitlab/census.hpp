#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orbitlab/classify.hpp"
#include "orbitlab/polymap.hpp"
#include "orbitlab/solver.hpp"

namespace orbitlab {

struct CensusConfig {
  SolveConfig solve;
  SolveMethod method = SolveMethod::Auto;
  ClassifyOptions classify;
};

struct CensusRow {
  int n = 0;
  bool available = false;
  std::string error;                  // why the row is unavailable
  std::size_t P = 0;                  // isolated fixed points of P^n in the map's field
  std::size_t Q = 0;                  // of those, points of least period exactly n
  std::optional<std::size_t> P_complex;  // isolated count over C, when known
  std::size_t nonisolated = 0;
  std::size_t marginal_orbits = 0;
  bool flagged = false;               // P is then only a lower bound
  std::vector<std::string> flags;
  Completeness completeness = Completeness::Heuristic;
  std::string method;
  std::size_t bezout_bound = 0;
  double min_margin = INFINITY;       // over orbits of least period n
};

struct CensusTable {
  int n_max = 0;
  Field field = Field::Complex;
  int dimension = 1;
  int degree = 1;
  std::vector<CensusRow> rows;  // rows[i].n == i + 1

  const CensusRow& row(int n) const { return rows.at(static_cast<std::size_t>(n - 1)); }
};

struct ZetaTruncation {
  int order = 0;
  std::vector<double> coefficients;   // c_0..c_M of exp(sum P_n z^n / n)
  double radius_estimate = INFINITY;  // 1 / max |c_n|^(1/n) over the trailing ceil(M/2) terms
  double am_constant = 0.0;           // max_n log(P_n) / n over n <= M
  std::optional<int> am_argmax;
};

struct GrowthStats {
  std::vector<std::optional<double>> bowen_sequence;  // log P_n / n, empty when P_n = 0
  std::optional<double> bowen_limsup_proxy;           // max over the trailing window
  int window = 0;
};

// Solves periods 1..n_max, counts isolated points into P and least-period
// points into Q, and flags rows with marginal or nonisolated detections.
// Solver errors mark a row unavailable; a Bezout violation propagates.
CensusTable build_census(const PolyMap& map, int n_max, const CensusConfig& config = {});

// Throws InvalidInput when order > n_max or a row within range is
// unavailable or flagged.
ZetaTruncation zeta_truncation(const CensusTable& table, int order);

// Same expansion from a raw count sequence P_1..P_M.
ZetaTruncation zeta_from_counts(const std::vector<double>& counts);

// window <= 0 selects ceil(n_max / 2).
GrowthStats growth_stats(const CensusTable& table, int window = 0);

// Rows n (unflagged, with every divisor row unflagged) where
// P_n != sum_{d | n} Q_d.
std::vector<int> mobius_violations(const CensusTable& table);

// Max relative mismatch between the series zeta'/zeta and sum P_n z^(n-1)
// through order M - 1.
double log_derivative_mismatch(const ZetaTruncation& zeta, const std::vector<double>& counts);

// CSV with header n,P_n,Q_n,log_P_n_over_n.
std::string census_csv(const CensusTable& table);

}  // namespace orbitlab
