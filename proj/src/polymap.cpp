#include "orbitlab/polymap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orbitlab/error.hpp"

namespace orbitlab {

std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

Field field_from_string(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw InvalidInput("unknown field '" + s + "' (expected real or complex)");
}

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw InvalidInput("multi-index exponents must be nonnegative");
    order_ += e;
  }
}

std::size_t multi_index_count(int n, int degree) {
  // binomial(n + degree, degree), computed incrementally to stay exact.
  std::size_t r = 1;
  for (int i = 1; i <= degree; ++i) r = r * static_cast<std::size_t>(n + i) / static_cast<std::size_t>(i);
  return r;
}

namespace {

void fill_indices(int n, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.emplace_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur.push_back(e);
    fill_indices(n, remaining - e, cur, out);
    cur.pop_back();
  }
}

bool all_finite(const Point& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Scalar z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void check_point(const PolyMap& map, const Point& x) {
  if (x.size() != map.dimension())
    throw InvalidInput("point has dimension " + std::to_string(x.size()) + ", map has " +
                       std::to_string(map.dimension()));
  if (!all_finite(x)) throw InvalidInput("non-finite input coordinates");
  if (map.field() == Field::Real)
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x[i].imag() != 0.0) throw InvalidInput("complex point passed to a real-field map");
}

}  // namespace

std::vector<MultiIndex> all_multi_indices(int n, int degree) {
  std::vector<MultiIndex> out;
  std::vector<int> cur;
  fill_indices(n, degree, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

PolyMap::PolyMap(int n, int degree, Field field, CoefficientTable coeffs)
    : n_(n), degree_(degree), field_(field) {
  if (n < 1) throw InvalidInput("map dimension must be >= 1");
  if (degree < 1) throw InvalidInput("map degree must be >= 1");
  for (auto& [alpha, value] : coeffs) {
    if (static_cast<int>(alpha.size()) != n)
      throw InvalidInput("multi-index length does not match map dimension");
    if (alpha.order() > degree) throw InvalidInput("multi-index order exceeds map degree");
    if (static_cast<int>(value.size()) != n)
      throw InvalidInput("coefficient vector length does not match map dimension");
    bool nonzero = false;
    for (const Scalar& z : value) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidInput("non-finite coefficient");
      if (field == Field::Real && z.imag() != 0.0)
        throw InvalidInput("real-field map has a coefficient with nonzero imaginary part");
      nonzero = nonzero || z != Scalar(0);
    }
    if (nonzero) coeffs_.emplace(alpha, value);
  }
  for (const auto& [alpha, value] : coeffs_) terms_.push_back({alpha.exponents(), value});
  if (n == 1) {
    dense_.assign(static_cast<std::size_t>(degree) + 1, Scalar(0));
    for (const auto& t : terms_) dense_[static_cast<std::size_t>(t.exps[0])] = t.value[0];
  }
}

PolyMap PolyMap::univariate(const std::vector<Scalar>& coeffs, Field field) {
  if (coeffs.size() < 2) throw InvalidInput("univariate map needs at least two coefficients");
  CoefficientTable t;
  for (std::size_t i = 0; i < coeffs.size(); ++i) t[MultiIndex({static_cast<int>(i)})] = {coeffs[i]};
  return PolyMap(1, static_cast<int>(coeffs.size()) - 1, field, std::move(t));
}

PolyMap PolyMap::univariate(const std::vector<double>& coeffs) {
  std::vector<Scalar> c(coeffs.begin(), coeffs.end());
  return univariate(c, Field::Real);
}

PolyMap PolyMap::power_map(int n, int degree, Field field) {
  CoefficientTable t;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = degree;
    std::vector<Scalar> v(static_cast<std::size_t>(n), Scalar(0));
    v[static_cast<std::size_t>(i)] = 1.0;
    t[MultiIndex(e)] = v;
  }
  return PolyMap(n, degree, field, std::move(t));
}

std::vector<Scalar> PolyMap::univariate_coefficients() const {
  if (n_ != 1) throw InvalidInput("univariate coefficients requested for N > 1");
  return dense_;
}

PolyMap PolyMap::complexified() const { return PolyMap(n_, degree_, Field::Complex, coeffs_); }

void PolyMap::evaluate_into(const Point& x, Point& out, Matrix* jac) const {
  out.setZero(n_);
  if (jac) jac->setZero(n_, n_);
  if (n_ == 1) {
    Scalar v(0), d(0);
    const Scalar z = x[0];
    for (auto it = dense_.rbegin(); it != dense_.rend(); ++it) {
      d = d * z + v;
      v = v * z + *it;
    }
    out[0] = v;
    if (jac) (*jac)(0, 0) = d;
    return;
  }
  // Power table pw[j * (D + 1) + e] = x_j^e.
  const int stride = degree_ + 1;
  std::vector<Scalar> pw(static_cast<std::size_t>(n_ * stride));
  for (int j = 0; j < n_; ++j) {
    Scalar p(1);
    for (int e = 0; e <= degree_; ++e) {
      pw[static_cast<std::size_t>(j * stride + e)] = p;
      p *= x[j];
    }
  }
  for (const Term& t : terms_) {
    Scalar mono(1);
    for (int j = 0; j < n_; ++j) mono *= pw[static_cast<std::size_t>(j * stride + t.exps[j])];
    for (int i = 0; i < n_; ++i) out[i] += t.value[i] * mono;
    if (!jac) continue;
    for (int j = 0; j < n_; ++j) {
      if (t.exps[j] == 0) continue;
      Scalar partial(static_cast<double>(t.exps[j]));
      for (int l = 0; l < n_; ++l)
        partial *= pw[static_cast<std::size_t>(l * stride + (l == j ? t.exps[l] - 1 : t.exps[l]))];
      for (int i = 0; i < n_; ++i) (*jac)(i, j) += t.value[i] * partial;
    }
  }
}

Point evaluate(const PolyMap& map, const Point& x) {
  check_point(map, x);
  Point out;
  map.evaluate_into(x, out, nullptr);
  if (!all_finite(out)) throw NonFinite("evaluation overflowed", 1);
  return out;
}

Matrix jacobian(const PolyMap& map, const Point& x) {
  check_point(map, x);
  Point out;
  Matrix jac;
  map.evaluate_into(x, out, &jac);
  if (!all_finite(jac)) throw NonFinite("Jacobian overflowed", 1);
  return jac;
}

IterateResult iterate(const PolyMap& map, const Point& x, int k) {
  if (k < 1) throw InvalidInput("iterate count must be >= 1");
  check_point(map, x);
  const int n = map.dimension();
  IterateResult r{x, Matrix::Identity(n, n)};
  Point next;
  Matrix step;
  for (int s = 1; s <= k; ++s) {
    map.evaluate_into(r.value, next, &step);
    if (!all_finite(next) || !all_finite(step)) throw NonFinite("iterate overflowed", s);
    r.jacobian = step * r.jacobian;
    if (!all_finite(r.jacobian)) throw NonFinite("iterate Jacobian overflowed", s);
    r.value = next;
  }
  return r;
}

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base)
      return std::numeric_limits<std::size_t>::max();
    r *= base;
  }
  return r;
}

namespace {

void check_compose(int n, int degree, int k, std::size_t cap) {
  if (n != 1) throw InvalidInput("symbolic composition supports N = 1 only");
  if (k < 1) throw InvalidInput("iterate count must be >= 1");
  const std::size_t target = checked_power(static_cast<std::size_t>(degree), static_cast<std::size_t>(k));
  if (target > cap) {
    std::ostringstream os;
    os << "iterate degree " << degree << "^" << k << " exceeds the degree cap " << cap;
    throw Infeasible(os.str());
  }
}

}  // namespace

Univariate<Scalar> iterate_polynomial(const PolyMap& map, int k, std::size_t degree_cap) {
  check_compose(map.dimension(), map.degree(), k, degree_cap);
  const Univariate<Scalar> p(map.univariate_coefficients());
  Univariate<Scalar> q = p;
  for (int s = 1; s < k; ++s) q = p.compose(q);
  return q;
}

PolyMap compose_symbolic(const PolyMap& map, int k, std::size_t degree_cap) {
  const Univariate<Scalar> q = iterate_polynomial(map, k, degree_cap);
  const std::size_t target = checked_power(static_cast<std::size_t>(map.degree()), static_cast<std::size_t>(k));
  std::vector<Scalar> dense(target + 1, Scalar(0));
  for (int i = 0; i <= q.degree(); ++i) dense[static_cast<std::size_t>(i)] = q.coefficient(i);
  if (map.field() == Field::Real)
    for (Scalar& z : dense) z = Scalar(z.real(), 0.0);
  return PolyMap::univariate(dense, map.field());
}

ExactPoly to_exact(const PolyMap& map) {
  if (map.dimension() != 1) throw InvalidInput("exact conversion supports N = 1 only");
  if (map.field() != Field::Real) throw InvalidInput("exact conversion needs a real-field map");
  std::vector<mpq_class> c;
  for (const Scalar& z : map.univariate_coefficients()) c.emplace_back(z.real());
  return ExactPoly(std::move(c));
}

ExactPoly compose_exact(const ExactPoly& p, int k, std::size_t degree_cap) {
  check_compose(1, std::max(p.degree(), 1), k, degree_cap);
  ExactPoly q = p;
  for (int s = 1; s < k; ++s) q = p.compose(q);
  return q;
}

mpq_class iterate_exact(const ExactPoly& p, const mpq_class& x, int k) {
  mpq_class v = x;
  for (int s = 0; s < k; ++s) v = p(v);
  return v;
}

}  // namespace orbitlab
