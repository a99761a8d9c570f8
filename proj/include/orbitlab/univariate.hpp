#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace orbitlab {

// Dense univariate polynomial c_0 + c_1 x + ... + c_n x^n over a ring T.
// Used with std::complex<double> for the floating backend and mpq_class for
// the exact one. Trailing zero coefficients are trimmed, so the zero
// polynomial has no coefficients and degree -1.
template <typename T>
class Univariate {
 public:
  Univariate() = default;
  explicit Univariate(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Univariate constant(const T& v) { return Univariate(std::vector<T>{v}); }
  static Univariate identity() { return Univariate(std::vector<T>{T(0), T(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coefficients() const { return c_; }
  T coefficient(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : T(0);
  }
  const T& leading() const { return c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Univariate derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Univariate(std::move(d));
  }

  friend Univariate operator+(const Univariate& a, const Univariate& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Univariate(std::move(r));
  }

  friend Univariate operator-(const Univariate& a, const Univariate& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Univariate(std::move(r));
  }

  friend Univariate operator*(const Univariate& a, const Univariate& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Univariate(std::move(r));
  }

  // this(inner(x)), by Horner's rule in the polynomial ring.
  Univariate compose(const Univariate& inner) const {
    Univariate acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  friend bool operator==(const Univariate& a, const Univariate& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

}  // namespace orbitlab
