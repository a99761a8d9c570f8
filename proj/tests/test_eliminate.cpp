#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "orbitlab/eliminate.hpp"
#include "orbitlab/error.hpp"
#include "support.hpp"

using namespace orbitlab;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(ORBITLAB_GOLDEN_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
  std::string line;
  std::getline(in, line);
  return line;
}

SparsePoly var(int degree, const std::string& name) { return SparsePoly::variable(system_variables(degree), name); }
SparsePoly num(int degree, long c) { return SparsePoly::constant(system_variables(degree), c); }

std::vector<mpq_class> random_a(Rng& rng, int degree) {
  std::vector<mpq_class> a;
  for (int i = 0; i <= degree; ++i) a.push_back(testing::random_rational(rng, 2, 4));
  if (a.back() == 0) a.back() = 1;
  return a;
}

}  // namespace

TEST_CASE("system forms") {
  const PeriodicSystem s1 = build_system(1, 1);
  const SparsePoly a0 = var(1, "a0"), a1 = var(1, "a1"), x = var(1, "x"), l = var(1, "lambda");
  CHECK(s1.f1 == a0 + (a1 - num(1, 1)) * x);
  CHECK(s1.f2 == a1 - l);

  const PeriodicSystem s2 = build_system(2, 1);
  const SparsePoly b0 = var(2, "a0"), b1 = var(2, "a1"), b2 = var(2, "a2"), y = var(2, "x"), m = var(2, "lambda");
  CHECK(s2.f1 == b2 * y.pow(2) + (b1 - num(2, 1)) * y + b0);
  CHECK(s2.f2 == mpz_class(2) * b2 * y + b1 - m);

  CHECK_THROWS_AS(build_system(3, 1), Infeasible);
  CHECK_THROWS_AS(build_system(2, 3), Infeasible);
  CHECK_THROWS_AS(build_system(0, 1), InvalidInput);
}

TEST_CASE("period-2 system agrees with exact composition at integer points") {
  const PeriodicSystem s = build_system(2, 2);
  CHECK(s.f1.degree_in(s.f1.index_of("x")) == 4);
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    std::vector<mpq_class> pt;
    for (int i = 0; i < 5; ++i) pt.push_back(mpq_class(static_cast<long>(rng.integer(-6, 6))));
    const ExactPoly p(std::vector<mpq_class>{pt[0], pt[1], pt[2]});
    const mpq_class& xv = pt[3];
    CHECK(s.f1.evaluate(pt) == iterate_exact(p, xv, 2) - xv);
    const ExactPoly p2 = compose_exact(p, 2);
    CHECK(s.f2.evaluate(pt) == p2.derivative()(xv) - pt[4]);
  }
}

TEST_CASE("resultants match golden files") {
  for (int d = 1; d <= 2; ++d)
    for (int k = 1; k <= 2; ++k) {
      const EliminationResult r = eliminate(build_system(d, k));
      const std::string tag = "D" + std::to_string(d) + "_k" + std::to_string(k) + ".txt";
      // Up to sign: the golden fixes the normalization, the Sylvester
      // layout fixes ours.
      const std::string g = golden("resultant_" + tag);
      CHECK((r.resultant.to_string() == g || (-r.resultant).to_string() == g));
      CHECK(validate_certificate(r.resultant, r.certificate));
      const LambdaSlice s = lambda0_slice(r, GaussianRational{});
      const std::string gs = golden("slice1_" + tag);
      CHECK((s.real.to_string() == gs || (-s.real).to_string() == gs));
      CHECK(s.imag.is_zero());
      CHECK(validate_certificate(s));
    }
}

TEST_CASE("closed forms for degree 1 and 2 fixed points") {
  const EliminationResult r1 = eliminate(build_system(1, 1));
  const SparsePoly a1 = SparsePoly::variable({"a0", "a1", "lambda"}, "a1");
  const SparsePoly l1 = SparsePoly::variable({"a0", "a1", "lambda"}, "lambda");
  CHECK((r1.resultant == a1 - l1 || r1.resultant == l1 - a1));

  // a2 (lambda - a1)^2 + 2 a2 (a1 - 1)(lambda - a1) + 4 a0 a2^2.
  const std::vector<std::string> v{"a0", "a1", "a2", "lambda"};
  const SparsePoly a0 = SparsePoly::variable(v, "a0"), b1 = SparsePoly::variable(v, "a1"), a2 = SparsePoly::variable(v, "a2"),
                   l = SparsePoly::variable(v, "lambda"), one = SparsePoly::constant(v, 1);
  const SparsePoly hand = a2 * (l - b1).pow(2) + mpz_class(2) * a2 * (b1 - one) * (l - b1) + mpz_class(4) * a0 * a2.pow(2);
  const EliminationResult r2 = eliminate(build_system(2, 1));
  CHECK((r2.resultant == hand || r2.resultant == -hand));
  CHECK(r2.degrees.at("lambda") == 2);

  // z^2: R(lambda) = lambda (lambda - 2) up to a unit.
  const auto c = specialize_coefficients(r2, {0, 0, 1});
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 0);
  CHECK(c[1] == -2 * c[2]);
  CHECK(abs(c[2]) == 1);
}

TEST_CASE("lambda0 slices") {
  const EliminationResult r1 = eliminate(build_system(1, 1));
  const LambdaSlice s1 = lambda0_slice(r1, GaussianRational{1, 0});
  const std::string t = s1.real.to_string();
  CHECK((t == "a1 - 1" || t == "-a1 + 1"));

  const EliminationResult r2 = eliminate(build_system(2, 1));
  const LambdaSlice s2 = lambda0_slice(r2, GaussianRational{1, 0});
  CHECK(abs(s2.real.evaluate({1, 0, 1})) == 3);
  CHECK(validate_certificate(s2));

  const LambdaSlice neg = lambda0_slice(r2, GaussianRational{-1, 0});
  CHECK(validate_certificate(neg));
  CHECK_FALSE(neg.real.is_zero());

  // lambda0 = (3 + 4i)/5: d^deg R(a, lambda0) recomputed with complex rationals.
  const GaussianRational g = gaussian_from_string("3/5,4/5");
  const LambdaSlice gs = lambda0_slice(r2, g);
  CHECK(validate_certificate(gs));
  const std::vector<mpq_class> a{mpq_class(1, 2), mpq_class(-2, 3), mpq_class(3)};
  const auto c = specialize_coefficients(r2, a);
  mpq_class re = 0, im = 0, pr = 1, pi = 0;
  for (const mpq_class& cj : c) {
    re += cj * pr;
    im += cj * pi;
    const mpq_class nr = pr * g.re - pi * g.im, ni = pr * g.im + pi * g.re;
    pr = nr;
    pi = ni;
  }
  CHECK(gs.real.evaluate(a) == re * 25);
  CHECK(gs.imag.evaluate(a) == im * 25);

  CHECK_THROWS_AS(lambda0_slice(r2, GaussianRational{1, 1}), InvalidInput);
  CHECK(gaussian_from_string("0,1").im == 1);
  CHECK(gaussian_from_string("-0.6,0.8").re == mpq_class(-3, 5));
  CHECK(gaussian_from_string("1").im == 0);
  CHECK_THROWS_AS(gaussian_from_string("x,1"), InvalidInput);
}

TEST_CASE("resultant roots match numeric multipliers") {
  Rng rng(99);
  for (int d = 1; d <= 2; ++d)
    for (int k = 1; k <= 2; ++k) {
      if (d == 1) continue;  // affine maps: a single fixed point, checked below
      const EliminationResult r = eliminate(build_system(d, k));
      for (int t = 0; t < 20; ++t) CHECK(testing::resultant_multiplier_gap(r, random_a(rng, d)) <= 1e-8);
    }
  const EliminationResult r = eliminate(build_system(1, 1));
  const auto c = specialize_coefficients(r, {mpq_class(1, 3), mpq_class(-2, 7)});
  REQUIRE(c.size() == 2);
  CHECK(-c[0] / c[1] == mpq_class(-2, 7));
}

TEST_CASE("R vanishes exactly where the system has a common root") {
  const PeriodicSystem s = build_system(2, 1);
  const EliminationResult r = eliminate(s);
  Rng rng(5);
  for (int t = 0; t < 25; ++t) {
    // Plant a rational fixed point x0 with multiplier a1 + 2 a2 x0.
    const mpq_class a1 = testing::random_rational(rng, 2, 3), x0 = testing::random_rational(rng, 2, 3);
    mpq_class a2 = testing::random_rational(rng, 2, 3);
    if (a2 == 0) a2 = 1;
    const mpq_class a0 = x0 - a1 * x0 - a2 * x0 * x0;
    const mpq_class lam = a1 + 2 * a2 * x0;
    CHECK(r.resultant.evaluate({a0, a1, a2, lam}) == 0);
    CHECK(shares_root(s, {a0, a1, a2}, lam));
    const mpq_class other = lam + mpq_class(1, 7);
    const bool zero = r.resultant.evaluate({a0, a1, a2, other}) == 0;
    CHECK(zero == shares_root(s, {a0, a1, a2}, other));
  }
}

TEST_CASE("period-2 quadratic elimination") {
  const EliminationResult r = eliminate(build_system(2, 2));
  CHECK_FALSE(r.resultant.is_zero());
  CHECK(r.degrees.at("lambda") == 4);
  CHECK(validate_certificate(r.resultant, r.certificate));
  const LambdaSlice s = lambda0_slice(r, GaussianRational{1, 0});
  CHECK(validate_certificate(s));
}
