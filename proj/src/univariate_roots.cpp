#include "orbitlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "orbitlab/error.hpp"

namespace orbitlab {
namespace {

using cplx = std::complex<double>;

// Parlett-Reinsch balancing by powers of two; the diagonal similarity keeps
// the companion matrix upper Hessenberg.
template <typename M>
void balance(M& a) {
  const Eigen::Index n = a.rows();
  constexpr double gamma = 0.95;
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(a(i, j));
        col += std::abs(a(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double s_col = std::ldexp(col, exponent);
      const double s_row = std::ldexp(row, -exponent);
      if (s_col + s_row < gamma * (col + row)) {
        a.col(i) *= std::ldexp(1.0, exponent);
        a.row(i) *= std::ldexp(1.0, -exponent);
        changed = true;
      }
    }
  }
}

std::vector<cplx> real_quasi_triangular_eigenvalues(const Eigen::MatrixXd& t) {
  const Eigen::Index n = t.rows();
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  Eigen::Index i = 0;
  while (i < n) {
    if (i == n - 1 || t(i + 1, i) == 0.0) {
      out.emplace_back(t(i, i), 0.0);
      ++i;
      continue;
    }
    const double a = t(i, i), b = t(i, i + 1), c = t(i + 1, i), d = t(i + 1, i + 1);
    const double p = 0.5 * (a - d);
    const double disc = p * p + b * c;
    const double mid = 0.5 * (a + d);
    if (disc >= 0.0) {
      const double z = std::sqrt(disc);
      out.emplace_back(mid + z, 0.0);
      out.emplace_back(mid - z, 0.0);
    } else {
      const double z = std::sqrt(-disc);
      out.emplace_back(mid, z);
      out.emplace_back(mid, -z);
    }
    i += 2;
  }
  return out;
}

}  // namespace

std::vector<cplx> companion_roots(const std::vector<cplx>& coeffs) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == cplx(0)) --hi;
  if (hi == 0) throw InvalidInput("companion_roots: zero polynomial");
  std::size_t lo = 0;
  while (coeffs[lo] == cplx(0)) ++lo;

  std::vector<cplx> roots(lo, cplx(0));  // x^lo factor
  const Eigen::Index n = static_cast<Eigen::Index>(hi - 1 - lo);
  if (n == 0) return roots;

  const cplx lead = coeffs[hi - 1];
  const bool real = std::all_of(coeffs.begin() + static_cast<std::ptrdiff_t>(lo),
                                coeffs.begin() + static_cast<std::ptrdiff_t>(hi),
                                [](const cplx& z) { return z.imag() == 0.0; });
  if (n == 1) {
    roots.push_back(-coeffs[lo] / lead);
    return roots;
  }

  if (real) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -coeffs[lo + static_cast<std::size_t>(i)].real() / lead.real();
    balance(c);
    Eigen::RealSchur<Eigen::MatrixXd> schur(n);
    schur.computeFromHessenberg(c, Eigen::MatrixXd::Identity(n, n), false);
    if (schur.info() != Eigen::Success) throw Error("companion eigenvalue iteration did not converge");
    for (const cplx& z : real_quasi_triangular_eigenvalues(schur.matrixT())) roots.push_back(z);
  } else {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -coeffs[lo + static_cast<std::size_t>(i)] / lead;
    balance(c);
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(n);
    schur.computeFromHessenberg(c, Eigen::MatrixXcd::Identity(n, n), false);
    if (schur.info() != Eigen::Success) throw Error("companion eigenvalue iteration did not converge");
    for (Eigen::Index i = 0; i < n; ++i) roots.push_back(schur.matrixT()(i, i));
  }
  return roots;
}

std::vector<cplx> circle_guesses(const std::vector<cplx>& coeffs) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == cplx(0)) --hi;
  if (hi < 2) return {};
  const std::size_t n = hi - 1;
  const double lead = std::abs(coeffs[n]);
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(coeffs[i]);
    if (a > 0.0) radius = std::max(radius, std::pow(a / lead, 1.0 / static_cast<double>(n - i)));
  }
  if (radius == 0.0) radius = 1.0;
  std::vector<cplx> out(n);
  constexpr double offset = 0.4;  // avoids starting on a symmetry axis
  for (std::size_t j = 0; j < n; ++j)
    out[j] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n) + offset);
  return out;
}

int aberth_refine(const RootFunction& f, std::vector<cplx>& roots, const AberthOptions& options) {
  const std::size_t n = roots.size();
  const double degree = static_cast<double>(n);
  std::vector<bool> frozen(n, false);
  int sweep = 0;
  for (; sweep < options.max_sweeps; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      cplx v(1), d;
      cplx ratio;
      if (f(roots[i], v, d) && d != cplx(0)) {
        ratio = v / d;
      } else {
        // Overflow far from the roots: the leading term dominates, so the
        // Newton correction is z / n.
        ratio = roots[i] / degree;
        v = cplx(1);
      }
      if (v == cplx(0)) {
        frozen[i] = true;
        continue;
      }
      cplx repulsion(0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const cplx diff = roots[i] - roots[j];
        if (diff != cplx(0)) repulsion += 1.0 / diff;
      }
      const cplx step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      roots[i] -= step;
      if (std::abs(step) <= options.step_tolerance * std::max(1.0, std::abs(roots[i])))
        frozen[i] = true;
      else
        moved = true;
    }
    if (!moved) break;
  }
  return sweep;
}

}  // namespace orbitlab
