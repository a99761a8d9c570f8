#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "orbitlab/univariate.hpp"

namespace orbitlab {

using Scalar = std::complex<double>;
using Point = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class Field { Real, Complex };

std::string to_string(Field f);
Field field_from_string(const std::string& s);

// Exponent vector alpha in Z_+^N. Ordered graded-lexicographically: first by
// total order |alpha|, then lexicographically on the exponents.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  std::size_t size() const { return exps_.size(); }
  int order() const { return order_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.order_ <=> b.order_; c != 0) return c;
    return a.exps_ <=> b.exps_;
  }
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<int> exps_;
  int order_ = 0;
};

// mu(N, D) = #{alpha in Z_+^N : |alpha| <= D} = binomial(N + D, D).
std::size_t multi_index_count(int n, int degree);

// Every alpha with |alpha| <= degree, in graded-lexicographic order.
std::vector<MultiIndex> all_multi_indices(int n, int degree);

// Polynomial self-map x -> sum_alpha a_alpha x^alpha of N-space with
// vector coefficients a_alpha in C^N (real maps carry zero imaginary parts).
// Absent indices are zero. Immutable after construction.
class PolyMap {
 public:
  using CoefficientTable = std::map<MultiIndex, std::vector<Scalar>>;

  PolyMap(int n, int degree, Field field, CoefficientTable coeffs);

  // N = 1 map from dense coefficients c_0..c_D; degree = coeffs.size() - 1.
  static PolyMap univariate(const std::vector<Scalar>& coeffs, Field field);
  static PolyMap univariate(const std::vector<double>& coeffs);
  // (z_1, ..., z_N) -> (z_1^D, ..., z_N^D) over the given field.
  static PolyMap power_map(int n, int degree, Field field = Field::Complex);

  int dimension() const { return n_; }
  int degree() const { return degree_; }
  Field field() const { return field_; }
  std::size_t mu() const { return multi_index_count(n_, degree_); }
  const CoefficientTable& coefficients() const { return coeffs_; }

  // Dense c_0..c_D; requires N = 1.
  std::vector<Scalar> univariate_coefficients() const;
  // Same coefficients, field set to Complex (for solving over C).
  PolyMap complexified() const;

  // Internal fast-path evaluation without argument or finiteness checks.
  // Writes P(x) and, when jac != nullptr, d_x P.
  void evaluate_into(const Point& x, Point& out, Matrix* jac) const;

 private:
  struct Term {
    std::vector<int> exps;
    std::vector<Scalar> value;
  };

  int n_;
  int degree_;
  Field field_;
  CoefficientTable coeffs_;
  std::vector<Term> terms_;
  std::vector<Scalar> dense_;  // N = 1 only
};

// P(x). Throws InvalidInput on dimension mismatch, non-finite input, or a
// non-real point on a real map; NonFinite when the value overflows.
Point evaluate(const PolyMap& map, const Point& x);

// d_x P computed from the coefficient table.
Matrix jacobian(const PolyMap& map, const Point& x);

struct IterateResult {
  Point value;
  Matrix jacobian;
};

// P^(k)(x) and d_x P^(k) = J(x_{k-1}) ... J(x_1) J(x_0). Throws NonFinite
// carrying the first step whose value or Jacobian is not finite.
IterateResult iterate(const PolyMap& map, const Point& x, int k);

inline constexpr std::size_t kDefaultDegreeCap = 256;

// Explicit univariate polynomial of the k-th iterate (N = 1 only), returned
// as a map of degree D^k. Throws InvalidInput for N > 1 and Infeasible when
// D^k exceeds degree_cap.
PolyMap compose_symbolic(const PolyMap& map, int k, std::size_t degree_cap = kDefaultDegreeCap);

// Same expansion in the floating backend, as a dense polynomial.
Univariate<Scalar> iterate_polynomial(const PolyMap& map, int k, std::size_t degree_cap = kDefaultDegreeCap);

// Exact rational backend.
using ExactPoly = Univariate<mpq_class>;
ExactPoly to_exact(const PolyMap& map);  // N = 1 real map; doubles convert exactly
ExactPoly compose_exact(const ExactPoly& p, int k, std::size_t degree_cap = kDefaultDegreeCap);
mpq_class iterate_exact(const ExactPoly& p, const mpq_class& x, int k);

// D^k with saturation at SIZE_MAX.
std::size_t checked_power(std::size_t base, std::size_t exp);

}  // namespace orbitlab
