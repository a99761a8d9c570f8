#include "orbitlab/sparse_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "orbitlab/error.hpp"

namespace orbitlab {

SparsePoly::SparsePoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

SparsePoly::SparsePoly(std::vector<std::string> variables, Terms terms) : vars_(std::move(variables)) {
  for (auto& [e, c] : terms) {
    if (e.size() != vars_.size()) throw InvalidInput("exponent vector length does not match the variable list");
    for (int v : e)
      if (v < 0) throw InvalidInput("negative exponent");
    if (c != 0) terms_.emplace(e, c);
  }
}

SparsePoly SparsePoly::constant(const std::vector<std::string>& variables, const mpz_class& c) {
  SparsePoly p(variables);
  if (c != 0) p.terms_.emplace(Exponents(variables.size(), 0), c);
  return p;
}

SparsePoly SparsePoly::variable(const std::vector<std::string>& variables, const std::string& name) {
  SparsePoly p(variables);
  Exponents e(variables.size(), 0);
  e[p.index_of(name)] = 1;
  p.terms_.emplace(std::move(e), mpz_class(1));
  return p;
}

std::size_t SparsePoly::index_of(const std::string& name) const {
  const auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw InvalidInput("unknown variable " + name);
  return static_cast<std::size_t>(it - vars_.begin());
}

int SparsePoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int SparsePoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

std::map<std::string, int> SparsePoly::degrees() const {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) out[vars_[i]] = std::max(degree_in(i), 0);
  return out;
}

SparsePoly SparsePoly::coefficient_in(std::size_t var, int j) const {
  SparsePoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != j) continue;
    Exponents f = e;
    f[var] = 0;
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

SparsePoly SparsePoly::derivative(std::size_t var) const {
  SparsePoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    out.add_term(f, c * e[var]);
  }
  return out;
}

SparsePoly SparsePoly::substitute(std::size_t var, const SparsePoly& value) const {
  require_same(value);
  const int d = degree_in(var);
  SparsePoly acc(vars_);
  for (int j = d; j >= 0; --j) acc = acc * value + coefficient_in(var, j);
  return acc;
}

SparsePoly SparsePoly::drop_variable(std::size_t var) const {
  std::vector<std::string> vars = vars_;
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(var));
  SparsePoly out(vars);
  for (const auto& [e, c] : terms_) {
    if (e[var] != 0) throw InvalidInput("polynomial depends on " + vars_[var]);
    Exponents f = e;
    f.erase(f.begin() + static_cast<std::ptrdiff_t>(var));
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

mpq_class SparsePoly::evaluate(const std::vector<mpq_class>& point) const {
  if (point.size() != vars_.size()) throw InvalidInput("evaluation point has the wrong length");
  mpq_class sum = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), static_cast<unsigned long>(e[i]));
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), static_cast<unsigned long>(e[i]));
      t *= p;
    }
    sum += t;
  }
  return sum;
}

const SparsePoly::Terms::value_type& SparsePoly::leading_term() const {
  if (terms_.empty()) throw InvalidInput("zero polynomial has no leading term");
  return *terms_.rbegin();
}

void SparsePoly::require_same(const SparsePoly& other) const {
  if (vars_ != other.vars_) throw InvalidInput("polynomials over different variable lists");
}

void SparsePoly::add_term(const Exponents& e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
  a.require_same(b);
  SparsePoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
  a.require_same(b);
  SparsePoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
  return out;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  a.require_same(b);
  SparsePoly out(a.vars_);
  SparsePoly::Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

SparsePoly operator*(const mpz_class& c, const SparsePoly& b) {
  SparsePoly out(b.vars_);
  if (c == 0) return out;
  for (const auto& [e, v] : b.terms_) out.terms_.emplace(e, c * v);
  return out;
}

SparsePoly SparsePoly::pow(int e) const {
  if (e < 0) throw InvalidInput("negative power");
  SparsePoly result = constant(vars_, 1);
  SparsePoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Terms::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
    const int dx = std::accumulate(x->first.begin(), x->first.end(), 0);
    const int dy = std::accumulate(y->first.begin(), y->first.end(), 0);
    if (dx != dy) return dx > dy;
    return x->first > y->first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : order) {
    const mpz_class& c = t->second;
    const mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const int p = t->first[i];
      if (p == 0) continue;
      factors.push_back(p == 1 ? vars_[i] : vars_[i] + "^" + std::to_string(p));
    }
    if (factors.empty()) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

SparsePoly divide_exact(const SparsePoly& a, const SparsePoly& b) {
  if (b.is_zero()) throw InvalidInput("division by the zero polynomial");
  if (a.variables() != b.variables()) throw InvalidInput("polynomials over different variable lists");
  const auto& [eb, cb] = b.leading_term();
  SparsePoly quotient(a.variables());
  SparsePoly rem = a;
  SparsePoly::Terms step;
  while (!rem.is_zero()) {
    const auto& [er, cr] = rem.leading_term();
    SparsePoly::Exponents e(er.size());
    for (std::size_t i = 0; i < er.size(); ++i) {
      e[i] = er[i] - eb[i];
      if (e[i] < 0) throw Error("inexact polynomial division");
    }
    if (!mpz_divisible_p(cr.get_mpz_t(), cb.get_mpz_t())) throw Error("inexact polynomial division");
    step.clear();
    step.emplace(e, mpz_class(cr / cb));
    const SparsePoly t(a.variables(), step);
    quotient = quotient + t;
    rem = rem - t * b;
  }
  return quotient;
}

SparsePoly bareiss_determinant(std::vector<std::vector<SparsePoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw InvalidInput("empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw InvalidInput("matrix is not square");
  const std::vector<std::string> vars = m[0][0].variables();
  SparsePoly prev = SparsePoly::constant(vars, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return SparsePoly(vars);
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        SparsePoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = k == 0 ? std::move(num) : divide_exact(num, prev);
      }
      m[i][k] = SparsePoly(vars);
    }
    prev = m[k][k];
  }
  SparsePoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

}  // namespace orbitlab
