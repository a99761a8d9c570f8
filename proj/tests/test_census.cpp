#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orbitlab/census.hpp"
#include "orbitlab/error.hpp"
#include "orbitlab/series.hpp"

using namespace orbitlab;

namespace {

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// Least-period counts from P by Moebius inversion, computed independently
// of the census: Q_n = P_n - sum_{d | n, d < n} Q_d.
std::vector<long long> least_counts(const std::vector<long long>& P) {
  std::vector<long long> Q(P.size());
  for (std::size_t n = 1; n <= P.size(); ++n) {
    long long q = P[n - 1];
    for (std::size_t d = 1; d < n; ++d)
      if (n % d == 0) q -= Q[d - 1];
    Q[n - 1] = q;
  }
  return Q;
}

}  // namespace

TEST_CASE("z^2 census: P_n = 2^n") {
  const PolyMap z2 = PolyMap::univariate({0.0, 0.0, 1.0}, Field::Complex);
  const CensusTable t = build_census(z2, 8);
  std::vector<long long> P;
  for (int n = 1; n <= 8; ++n) {
    const CensusRow& r = t.row(n);
    REQUIRE(r.available);
    CHECK_FALSE(r.flagged);
    CHECK(r.P == (1u << n));
    P.push_back(static_cast<long long>(r.P));
  }
  const auto Q = least_counts(P);
  for (int n = 1; n <= 8; ++n) CHECK(static_cast<long long>(t.row(n).Q) == Q[static_cast<std::size_t>(n - 1)]);
  CHECK(mobius_violations(t).empty());

  // The roots of z^(2^n) - z are 0 and the (2^n - 1)-th roots of unity:
  // pairwise separation of the returned points certifies distinctness.
  SolveConfig cfg;
  const SolveReport r = solve_univariate(z2, 8, cfg);
  double sep = INFINITY;
  for (std::size_t i = 0; i < r.points.size(); ++i)
    for (std::size_t j = i + 1; j < r.points.size(); ++j)
      sep = std::min(sep, std::abs(r.points[i].location[0] - r.points[j].location[0]));
  CHECK(sep > 2 * std::sin(std::numbers::pi / 255) * 0.99);
}

TEST_CASE("contraction and Chebyshev censuses") {
  const PolyMap half = PolyMap::univariate(std::vector<double>{0.0, 0.5});
  const CensusTable a = build_census(half, 8);
  for (const CensusRow& r : a.rows) CHECK(r.P == 1);

  const PolyMap cheb = PolyMap::univariate(std::vector<double>{-2.0, 0.0, 1.0});
  const CensusTable b = build_census(cheb, 8);
  for (const CensusRow& r : b.rows) {
    CHECK(r.P == (1u << r.n));
    CHECK(r.P_complex == (1u << r.n));
  }
  CHECK(mobius_violations(b).empty());
}

TEST_CASE("parabolic map rows are flagged and block the zeta expansion") {
  const PolyMap par = PolyMap::univariate(std::vector<double>{0.0, 1.0, 1.0});
  const CensusTable t = build_census(par, 3);
  CHECK(t.row(1).flagged);
  CHECK_THROWS_AS(zeta_truncation(t, 3), InvalidInput);
}

TEST_CASE("zeta against closed-form series") {
  std::vector<double> pow2, ones, zeros, lucas;
  double l0 = 2, l1 = 1;
  for (int n = 1; n <= 12; ++n) {
    pow2.push_back(std::ldexp(1.0, n));
    ones.push_back(1.0);
    zeros.push_back(0.0);
    lucas.push_back(l1);
    const double next = l0 + l1;
    l0 = l1;
    l1 = next;
  }
  const ZetaTruncation a = zeta_from_counts(pow2);  // 1/(1-2z)
  for (int n = 0; n <= 12; ++n) CHECK(close_rel(a.coefficients[static_cast<std::size_t>(n)], std::ldexp(1.0, n), 1e-12));
  CHECK(std::abs(a.radius_estimate - 0.5) <= 0.025);

  const ZetaTruncation b = zeta_from_counts(ones);  // 1/(1-z)
  for (double c : b.coefficients) CHECK(close_rel(c, 1.0, 1e-12));
  CHECK(std::abs(b.radius_estimate - 1.0) < 1e-12);

  const ZetaTruncation c = zeta_from_counts(zeros);
  CHECK(c.coefficients[0] == 1.0);
  for (std::size_t i = 1; i < c.coefficients.size(); ++i) CHECK(c.coefficients[i] == 0.0);
  CHECK(std::isinf(c.radius_estimate));

  // P_n = Lucas numbers: zeta = 1/(1 - z - z^2), coefficients Fibonacci F_{n+1}.
  const ZetaTruncation d = zeta_from_counts(lucas);
  double f0 = 1, f1 = 1;
  for (std::size_t n = 0; n < d.coefficients.size(); ++n) {
    CHECK(close_rel(d.coefficients[n], f0, 1e-12));
    const double next = f0 + f1;
    f0 = f1;
    f1 = next;
  }
  CHECK(log_derivative_mismatch(d, lucas) < 1e-12);
  CHECK(log_derivative_mismatch(d, pow2) > 0.1);  // wrong counts are detected
}

TEST_CASE("series helpers") {
  // exp(z) coefficients 1/n!.
  std::vector<double> a(10, 0.0);
  a[1] = 1.0;
  const auto e = series::exp(a);
  double f = 1.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    if (n > 0) f *= static_cast<double>(n);
    CHECK(close_rel(e[n], 1.0 / f, 1e-15));
  }
  const auto q = series::divide(series::derivative(e), e);
  for (std::size_t n = 0; n < q.size(); ++n) CHECK(std::abs(q[n] - (n == 0 ? 1.0 : 0.0)) < 1e-14);
}

TEST_CASE("zeta truncation from a census and growth statistics") {
  const PolyMap z2 = PolyMap::univariate({0.0, 0.0, 1.0}, Field::Complex);
  const CensusTable t = build_census(z2, 6);
  const ZetaTruncation z = zeta_truncation(t, 6);
  for (int n = 0; n <= 6; ++n) CHECK(close_rel(z.coefficients[static_cast<std::size_t>(n)], std::ldexp(1.0, n), 1e-12));
  CHECK(z.am_constant == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(zeta_truncation(t, 7), InvalidInput);

  const GrowthStats g = growth_stats(t);
  for (const auto& b : g.bowen_sequence) {
    REQUIRE(b.has_value());
    CHECK(std::abs(*b - std::log(2.0)) < 1e-12);
  }
  REQUIRE(g.bowen_limsup_proxy.has_value());
  CHECK(std::abs(*g.bowen_limsup_proxy - std::log(2.0)) < 1e-12);

  const PolyMap half = PolyMap::univariate(std::vector<double>{0.0, 0.5});
  for (const auto& b : growth_stats(build_census(half, 4)).bowen_sequence) CHECK(*b == 0.0);
}

TEST_CASE("census CSV") {
  const PolyMap half = PolyMap::univariate(std::vector<double>{0.0, 0.5});
  const std::string csv = census_csv(build_census(half, 2));
  CHECK(csv.rfind("n,P_n,Q_n,log_P_n_over_n\n", 0) == 0);
  CHECK(csv.find("\n1,1,1,0") != std::string::npos);
}
