#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace orbitlab::series {

// Truncated formal power series: s[i] is the coefficient of z^i, kept
// through the vector's length.

// exp(a) for a[0] = 0, from n b_n = sum_{j=1..n} j a_j b_{n-j}.
inline std::vector<double> exp(const std::vector<double>& a) {
  if (a.empty()) return {};
  if (a[0] != 0.0) throw std::invalid_argument("series::exp requires a zero constant term");
  std::vector<double> b(a.size(), 0.0);
  b[0] = 1.0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j) acc += static_cast<double>(j) * a[j] * b[n - j];
    b[n] = acc / static_cast<double>(n);
  }
  return b;
}

inline std::vector<double> derivative(const std::vector<double>& a) {
  if (a.size() <= 1) return {};
  std::vector<double> d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = static_cast<double>(i) * a[i];
  return d;
}

// a / b through the length of a; b[0] != 0.
inline std::vector<double> divide(const std::vector<double>& a, const std::vector<double>& b) {
  if (b.empty() || b[0] == 0.0) throw std::invalid_argument("series::divide by a series with zero constant term");
  std::vector<double> q(a.size(), 0.0);
  for (std::size_t m = 0; m < a.size(); ++m) {
    double acc = a[m];
    for (std::size_t j = 1; j <= m && j < b.size(); ++j) acc -= b[j] * q[m - j];
    q[m] = acc / b[0];
  }
  return q;
}

}  // namespace orbitlab::series
