#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "orbitlab/polymap.hpp"
#include "orbitlab/sparse_poly.hpp"

namespace orbitlab {

// Variables a0..aD, x, lambda.
std::vector<std::string> system_variables(int degree);

struct PeriodicSystem {
  int degree = 0;
  int period = 0;
  SparsePoly f1;  // P^(k)(a, x) - x
  SparsePoly f2;  // d/dx P^(k)(a, x) - lambda
};

// Hard cap: D <= 2, k <= 2 (Infeasible above).
PeriodicSystem build_system(int degree, int period);

struct NonzeroCertificate {
  std::vector<mpq_class> point;  // over the polynomial's variables
  mpq_class value;               // nonzero; for a Gaussian slice, the real part
  mpq_class value_imag = 0;      // imaginary part (Gaussian slices)
};

struct EliminationResult {
  int degree = 0;
  int period = 0;
  SparsePoly resultant;  // R(a, lambda)
  std::map<std::string, int> degrees;
  NonzeroCertificate certificate;
};

// Sylvester determinant in x, by fraction-free elimination. Throws Error
// when R vanishes identically (reporting the leading coefficients in x).
SparsePoly resultant_x(const SparsePoly& f1, const SparsePoly& f2);
EliminationResult eliminate(const PeriodicSystem& system, std::uint64_t seed = 0);

// A point of small random rationals where p does not vanish. Throws Error
// when none is found within the attempt budget.
NonzeroCertificate find_nonzero(const SparsePoly& p, std::uint64_t seed, int attempts = 2000);

// lambda0 = re + i im, rational parts, |lambda0| = 1 exactly.
struct GaussianRational {
  mpq_class re = 1;
  mpq_class im = 0;
};
GaussianRational gaussian_from_string(const std::string& text);  // "RE,IM", each "p" or "p/q"

struct LambdaSlice {
  GaussianRational lambda0;
  // d^deg R(a, lambda0) split into real and imaginary integer polynomials in a,
  // where d is the common denominator of lambda0 and deg the lambda-degree of R.
  SparsePoly real;
  SparsePoly imag;
  NonzeroCertificate certificate;
};

// Throws Error when the slice vanishes identically.
LambdaSlice lambda0_slice(const EliminationResult& result, const GaussianRational& lambda0, std::uint64_t seed = 0);

// Exact check that the certificate evaluates to the stated nonzero value.
bool validate_certificate(const SparsePoly& p, const NonzeroCertificate& c);
bool validate_certificate(const LambdaSlice& slice);

// Restricts R to a rational point a, leaving a polynomial in lambda
// (coefficients c_0..c_m).
std::vector<mpq_class> specialize_coefficients(const EliminationResult& result, const std::vector<mpq_class>& a);

// Exact test whether f1 and f2 share a root x at the rational point (a, lambda).
bool shares_root(const PeriodicSystem& system, const std::vector<mpq_class>& a, const mpq_class& lambda);

}  // namespace orbitlab
