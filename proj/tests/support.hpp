#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "orbitlab/eliminate.hpp"
#include "orbitlab/polymap.hpp"
#include "orbitlab/random.hpp"
#include "orbitlab/roots.hpp"
#include "orbitlab/solver.hpp"

namespace testing {

using orbitlab::Field;
using orbitlab::Matrix;
using orbitlab::Point;
using orbitlab::PolyMap;
using orbitlab::Scalar;

// Random map with coefficients uniform in [-scale, scale] (imaginary parts
// too when complex).
inline PolyMap random_map(orbitlab::Rng& rng, int n, int degree, Field field, double scale = 1.0) {
  PolyMap::CoefficientTable t;
  for (const auto& alpha : orbitlab::all_multi_indices(n, degree)) {
    std::vector<Scalar> v(static_cast<std::size_t>(n));
    for (Scalar& z : v)
      z = Scalar(rng.uniform(-scale, scale), field == Field::Complex ? rng.uniform(-scale, scale) : 0.0);
    t[alpha] = v;
  }
  return PolyMap(n, degree, field, std::move(t));
}

// k-step evaluation without derivatives.
inline Point step_k(const PolyMap& map, Point x, int k) {
  for (int s = 0; s < k; ++s) x = orbitlab::evaluate(map, x);
  return x;
}

// Central differences of the k-step map. For complex maps the function is
// holomorphic, so the real-direction difference gives the complex derivative.
inline Matrix fd_jacobian(const PolyMap& map, const Point& x, int k, double h = 1e-6) {
  const auto n = x.size();
  Matrix j(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Point xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    j.col(c) = (step_k(map, xp, k) - step_k(map, xm, k)) / (2.0 * h);
  }
  return j;
}

// Greedy multiset distance: max over a of the distance to its partner in b.
inline double multiset_distance(std::vector<Scalar> a, std::vector<Scalar> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const Scalar& z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Scalar p, Scalar q) { return std::abs(p - z) < std::abs(q - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

using QPoly = orbitlab::Univariate<mpq_class>;

inline QPoly q_trim(std::vector<mpq_class> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return QPoly(std::move(c));
}

// Quotient and remainder of a by b over Q.
inline std::pair<QPoly, QPoly> q_divmod(const QPoly& a, const QPoly& b) {
  std::vector<mpq_class> r = a.coefficients();
  const int db = b.degree();
  std::vector<mpq_class> q(static_cast<std::size_t>(std::max(a.degree() - db + 1, 1)), mpq_class(0));
  for (int i = a.degree(); i >= db && i >= 0; --i) {
    const mpq_class f = r[static_cast<std::size_t>(i)] / b.leading();
    q[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coefficient(j);
  }
  r.resize(static_cast<std::size_t>(std::max(db, 1)));
  return {q_trim(q), q_trim(r)};
}

inline QPoly q_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = q_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Yun's square-free factorization: factors[i] has simple roots, each of
// multiplicity i + 1 in f.
inline std::vector<QPoly> square_free(const QPoly& f) {
  std::vector<QPoly> out;
  const QPoly fp = f.derivative();
  QPoly a = q_gcd(f, fp);
  QPoly b = q_divmod(f, a).first;
  QPoly c = q_divmod(fp, a).first;
  QPoly d = c - b.derivative();
  while (b.degree() >= 1) {
    a = q_gcd(b, d);
    out.push_back(a);
    const QPoly nb = q_divmod(b, a).first;
    c = q_divmod(d, a).first;
    b = nb;
    d = c - b.derivative();
  }
  return out;
}

// Roots in lambda of R(a, lambda) against d/dx P^(k) at every period-k point
// of P = a_0 + a_1 x + ..., both as multisets. Repeated roots (two points of
// one cycle share a multiplier) are separated exactly first, so every
// numerical root is simple. Returns the largest mismatch relative to
// max(1, |multiplier|).
inline double resultant_multiplier_gap(const orbitlab::EliminationResult& r, const std::vector<mpq_class>& a) {
  const QPoly restricted = q_trim(orbitlab::specialize_coefficients(r, a));
  std::vector<Scalar> lambda_roots;
  const auto factors = square_free(restricted);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() < 1) continue;
    std::vector<Scalar> fc;
    for (const mpq_class& c : factors[i].coefficients()) fc.emplace_back(c.get_d(), 0.0);
    for (const Scalar& z : orbitlab::companion_roots(fc))
      for (std::size_t m = 0; m <= i; ++m) lambda_roots.push_back(z);
  }

  std::vector<Scalar> coeffs;
  for (const mpq_class& c : a) coeffs.emplace_back(c.get_d(), 0.0);
  const PolyMap map = PolyMap::univariate(coeffs, Field::Complex);
  const orbitlab::SolveReport rep = orbitlab::solve_univariate(map, r.period);
  std::vector<Scalar> mult;
  for (const orbitlab::PeriodicPoint& p : rep.points)
    for (int j = 0; j < p.multiplicity; ++j) mult.push_back(orbitlab::iterate(map, p.location, r.period).jacobian(0, 0));
  if (mult.size() != lambda_roots.size()) return INFINITY;
  double worst = 0.0;
  for (const Scalar& z : mult) {
    auto it = std::min_element(lambda_roots.begin(), lambda_roots.end(),
                               [&](Scalar p, Scalar q) { return std::abs(p - z) < std::abs(q - z); });
    worst = std::max(worst, std::abs(*it - z) / std::max(1.0, std::abs(z)));
    lambda_roots.erase(it);
  }
  return worst;
}

// Small random rational in [-range, range] with denominator up to den.
inline mpq_class random_rational(orbitlab::Rng& rng, int range, int den) {
  const long q = static_cast<long>(rng.integer(1, den));
  mpq_class v(static_cast<long>(rng.integer(-range * q, range * q)), q);
  v.canonicalize();
  return v;
}

}  // namespace testing
