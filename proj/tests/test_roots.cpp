#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "orbitlab/random.hpp"
#include "orbitlab/roots.hpp"
#include "support.hpp"

using namespace orbitlab;
using cplx = std::complex<double>;

namespace {

// Expands prod (x - r) into ascending coefficients.
std::vector<cplx> from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

}  // namespace

TEST_CASE("companion roots recover planted roots") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 12;
    std::vector<cplx> roots;
    for (int i = 0; i < n; ++i) roots.emplace_back(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const auto found = companion_roots(from_roots(roots));
    CHECK(testing::multiset_distance(found, roots) < 1e-8);
  }
}

TEST_CASE("companion roots of z^n - 1 and exact zeros") {
  std::vector<cplx> c(9, 0.0);
  c[0] = -1.0;
  c[8] = 1.0;
  std::vector<cplx> unity;
  for (int j = 0; j < 8; ++j) unity.push_back(std::polar(1.0, 2 * std::numbers::pi * j / 8));
  CHECK(testing::multiset_distance(companion_roots(c), unity) < 1e-12);

  // z^3 (z - 1): three exact zeros.
  const auto r = companion_roots({0.0, 0.0, 0.0, -1.0, 1.0});
  int zeros = 0;
  for (const cplx& z : r) zeros += z == cplx(0.0);
  CHECK(zeros == 3);
  CHECK(r.size() == 4);

  // Leading zeros are trimmed.
  CHECK(companion_roots({-2.0, 1.0, 0.0, 0.0}).size() == 1);
}

TEST_CASE("aberth refinement matches companion on a degree-300 polynomial") {
  // z^300 - 1 has well-separated roots on the unit circle.
  const int n = 300;
  std::vector<cplx> c(n + 1, 0.0);
  c[0] = -1.0;
  c[n] = 1.0;
  RootFunction f = [&](cplx z, cplx& v, cplx& d) {
    v = std::pow(z, n) - 1.0;
    d = static_cast<double>(n) * std::pow(z, n - 1);
    return std::isfinite(std::abs(v)) && std::isfinite(std::abs(d));
  };
  auto roots = circle_guesses(c);
  REQUIRE(roots.size() == static_cast<std::size_t>(n));
  aberth_refine(f, roots);
  std::vector<cplx> unity;
  for (int j = 0; j < n; ++j) unity.push_back(std::polar(1.0, 2 * std::numbers::pi * j / n));
  CHECK(testing::multiset_distance(roots, unity) < 1e-10);
}
