#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace orbitlab {

// Multivariate polynomial with arbitrary-precision integer coefficients over
// a named variable list. Zero coefficients are never stored. Binary
// operations require identical variable lists.
class SparsePoly {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, mpz_class>;

  SparsePoly() = default;
  explicit SparsePoly(std::vector<std::string> variables);
  SparsePoly(std::vector<std::string> variables, Terms terms);

  static SparsePoly constant(const std::vector<std::string>& variables, const mpz_class& c);
  static SparsePoly variable(const std::vector<std::string>& variables, const std::string& name);

  const std::vector<std::string>& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t index_of(const std::string& name) const;  // throws InvalidInput when absent

  int degree_in(std::size_t var) const;  // -1 for the zero polynomial
  int total_degree() const;
  std::map<std::string, int> degrees() const;

  // Coefficient of var^j, as a polynomial over the same variables.
  SparsePoly coefficient_in(std::size_t var, int j) const;
  SparsePoly derivative(std::size_t var) const;
  // var := value, by Horner in var.
  SparsePoly substitute(std::size_t var, const SparsePoly& value) const;
  // Removes a variable the polynomial does not depend on.
  SparsePoly drop_variable(std::size_t var) const;

  mpq_class evaluate(const std::vector<mpq_class>& point) const;

  // Leading term in lexicographic order of the exponent vectors.
  const Terms::value_type& leading_term() const;

  SparsePoly operator-() const;
  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const mpz_class& c, const SparsePoly& b);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  SparsePoly pow(int e) const;

  // Sorted-term text: graded-lex descending, e.g. "4*a0*a2^2 - a1 + 1"; "0" when zero.
  std::string to_string() const;

 private:
  void require_same(const SparsePoly& other) const;
  void add_term(const Exponents& e, const mpz_class& c);

  std::vector<std::string> vars_;
  Terms terms_;
};

// a / b when b divides a exactly; throws Error otherwise.
SparsePoly divide_exact(const SparsePoly& a, const SparsePoly& b);

// Fraction-free (Bareiss) determinant with row pivoting.
SparsePoly bareiss_determinant(std::vector<std::vector<SparsePoly>> m);

}  // namespace orbitlab
