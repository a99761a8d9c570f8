#include "orbitlab/eliminate.hpp"

#include <algorithm>
#include <cctype>

#include "orbitlab/error.hpp"
#include "orbitlab/random.hpp"
#include "orbitlab/univariate.hpp"

namespace orbitlab {

std::vector<std::string> system_variables(int degree) {
  std::vector<std::string> vars;
  for (int i = 0; i <= degree; ++i) vars.push_back("a" + std::to_string(i));
  vars.push_back("x");
  vars.push_back("lambda");
  return vars;
}

PeriodicSystem build_system(int degree, int period) {
  if (degree < 1 || period < 1) throw InvalidInput("degree and period must be >= 1");
  if (degree > 2 || period > 2) throw Infeasible("exact elimination is capped at degree <= 2, period <= 2");
  const std::vector<std::string> vars = system_variables(degree);
  const SparsePoly x = SparsePoly::variable(vars, "x");
  SparsePoly p(vars);
  for (int i = 0; i <= degree; ++i) p = p + SparsePoly::variable(vars, "a" + std::to_string(i)) * x.pow(i);

  const std::size_t xi = p.index_of("x");
  SparsePoly q = x;
  for (int j = 0; j < period; ++j) q = p.substitute(xi, q);
  return PeriodicSystem{degree, period, q - x, q.derivative(xi) - SparsePoly::variable(vars, "lambda")};
}

SparsePoly resultant_x(const SparsePoly& f1, const SparsePoly& f2) {
  if (f1.is_zero() || f2.is_zero()) throw InvalidInput("resultant of a zero polynomial");
  const std::size_t xi = f1.index_of("x");
  const int m = f1.degree_in(xi);
  const int n = f2.degree_in(xi);
  if (m + n == 0) throw InvalidInput("both polynomials are constant in x");
  const std::vector<std::string>& vars = f1.variables();
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<SparsePoly>> s(size, std::vector<SparsePoly>(size, SparsePoly(vars)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + m - i)] = f1.coefficient_in(xi, i);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j)
      s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + n - j)] = f2.coefficient_in(xi, j);
  SparsePoly det = bareiss_determinant(std::move(s));
  if (det.is_zero()) {
    throw Error("resultant vanishes identically; leading coefficients in x: " + f1.coefficient_in(xi, m).to_string() +
                " and " + f2.coefficient_in(xi, n).to_string());
  }
  return det.drop_variable(xi);
}

NonzeroCertificate find_nonzero(const SparsePoly& p, std::uint64_t seed, int attempts) {
  if (p.is_zero()) throw Error("polynomial is identically zero");
  Rng rng(seed);
  const std::size_t nv = p.variables().size();
  for (int t = 0; t < attempts; ++t) {
    NonzeroCertificate c;
    for (std::size_t i = 0; i < nv; ++i) {
      mpq_class v(static_cast<long>(rng.integer(-7, 7)), static_cast<unsigned long>(rng.integer(1, 5)));
      v.canonicalize();
      c.point.push_back(v);
    }
    c.value = p.evaluate(c.point);
    if (c.value != 0) return c;
  }
  throw Error("no nonzero point found for a nonzero polynomial");
}

EliminationResult eliminate(const PeriodicSystem& system, std::uint64_t seed) {
  EliminationResult r;
  r.degree = system.degree;
  r.period = system.period;
  r.resultant = resultant_x(system.f1, system.f2);
  r.degrees = r.resultant.degrees();
  r.certificate = find_nonzero(r.resultant, seed);
  return r;
}

namespace {

mpq_class parse_rational(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw InvalidInput("empty number");
  const auto dot = s.find('.');
  mpq_class v;
  try {
    if (dot == std::string::npos) {
      v = mpq_class(s, 10);
    } else {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits == "-" || digits == "+" || digits.empty()) throw InvalidInput("bad number " + s);
      if (digits[0] == '+') digits.erase(0, 1);
      const std::size_t frac = s.size() - dot - 1;
      mpz_class den = 1;
      for (std::size_t i = 0; i < frac; ++i) den *= 10;
      v = mpq_class(mpz_class(digits, 10), den);
    }
  } catch (const std::invalid_argument&) {
    throw InvalidInput("bad number " + s);
  }
  v.canonicalize();
  return v;
}

}  // namespace

GaussianRational gaussian_from_string(const std::string& text) {
  const auto comma = text.find(',');
  GaussianRational g;
  g.re = parse_rational(text.substr(0, comma));
  g.im = comma == std::string::npos ? mpq_class(0) : parse_rational(text.substr(comma + 1));
  return g;
}

LambdaSlice lambda0_slice(const EliminationResult& result, const GaussianRational& lambda0, std::uint64_t seed) {
  if (lambda0.re * lambda0.re + lambda0.im * lambda0.im != 1) throw InvalidInput("lambda0 must have modulus exactly 1");
  const SparsePoly& r = result.resultant;
  const std::size_t li = r.index_of("lambda");
  const int deg = std::max(r.degree_in(li), 0);

  mpz_class d;
  mpz_lcm(d.get_mpz_t(), lambda0.re.get_den_mpz_t(), lambda0.im.get_den_mpz_t());
  const mpz_class p = lambda0.re.get_num() * (d / lambda0.re.get_den());
  const mpz_class q = lambda0.im.get_num() * (d / lambda0.im.get_den());

  std::vector<std::string> avars = r.variables();
  avars.erase(avars.begin() + static_cast<std::ptrdiff_t>(li));
  LambdaSlice s{lambda0, SparsePoly(avars), SparsePoly(avars), {}};
  mpz_class pre = 1, pim = 0;  // (p + i q)^j
  for (int j = 0; j <= deg; ++j) {
    mpz_class scale = 1;
    for (int t = j; t < deg; ++t) scale *= d;
    const SparsePoly rj = r.coefficient_in(li, j).drop_variable(li);
    s.real = s.real + mpz_class(pre * scale) * rj;
    s.imag = s.imag + mpz_class(pim * scale) * rj;
    const mpz_class nre = pre * p - pim * q;
    const mpz_class nim = pre * q + pim * p;
    pre = nre;
    pim = nim;
  }
  if (s.real.is_zero() && s.imag.is_zero())
    throw Error("lambda0 slice vanishes identically at degree " + std::to_string(result.degree) + ", period " +
                std::to_string(result.period));
  const SparsePoly& probe = s.real.is_zero() ? s.imag : s.real;
  s.certificate = find_nonzero(probe, seed);
  s.certificate.value = s.real.evaluate(s.certificate.point);
  s.certificate.value_imag = s.imag.evaluate(s.certificate.point);
  return s;
}

bool validate_certificate(const SparsePoly& p, const NonzeroCertificate& c) {
  if (c.point.size() != p.variables().size()) return false;
  const mpq_class v = p.evaluate(c.point);
  return v != 0 && v == c.value;
}

bool validate_certificate(const LambdaSlice& s) {
  const auto& c = s.certificate;
  if (c.point.size() != s.real.variables().size()) return false;
  const mpq_class re = s.real.evaluate(c.point);
  const mpq_class im = s.imag.evaluate(c.point);
  return (re != 0 || im != 0) && re == c.value && im == c.value_imag;
}

std::vector<mpq_class> specialize_coefficients(const EliminationResult& result, const std::vector<mpq_class>& a) {
  const SparsePoly& r = result.resultant;
  const std::size_t li = r.index_of("lambda");
  if (a.size() + 1 != r.variables().size()) throw InvalidInput("specialization point has the wrong length");
  std::vector<mpq_class> point = a;
  point.insert(point.begin() + static_cast<std::ptrdiff_t>(li), mpq_class(0));
  std::vector<mpq_class> out;
  for (int j = 0; j <= r.degree_in(li); ++j) out.push_back(r.coefficient_in(li, j).evaluate(point));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

namespace {

using QPoly = Univariate<mpq_class>;

QPoly in_x(const SparsePoly& f, const std::vector<mpq_class>& a, const mpq_class& lambda) {
  const std::size_t xi = f.index_of("x");
  std::vector<mpq_class> point = a;
  point.push_back(0);  // x, unused
  point.push_back(lambda);
  std::vector<mpq_class> c(static_cast<std::size_t>(std::max(f.degree_in(xi), 0)) + 1, mpq_class(0));
  for (int j = 0; j <= f.degree_in(xi); ++j) c[static_cast<std::size_t>(j)] = f.coefficient_in(xi, j).evaluate(point);
  return QPoly(std::move(c));
}

QPoly remainder(QPoly a, const QPoly& b) {
  while (!a.is_zero() && a.degree() >= b.degree()) {
    const int shift = a.degree() - b.degree();
    const mpq_class f = a.leading() / b.leading();
    std::vector<mpq_class> c = a.coefficients();
    for (int i = 0; i <= b.degree(); ++i) c[static_cast<std::size_t>(i + shift)] -= f * b.coefficient(i);
    c.back() = 0;
    a = QPoly(std::move(c));
  }
  return a;
}

}  // namespace

bool shares_root(const PeriodicSystem& system, const std::vector<mpq_class>& a, const mpq_class& lambda) {
  if (static_cast<int>(a.size()) != system.degree + 1) throw InvalidInput("specialization point has the wrong length");
  QPoly u = in_x(system.f1, a, lambda);
  QPoly v = in_x(system.f2, a, lambda);
  if (u.is_zero() || v.is_zero()) return true;
  while (!v.is_zero()) {
    QPoly r = remainder(u, v);
    u = std::move(v);
    v = std::move(r);
  }
  return u.degree() >= 1;
}

}  // namespace orbitlab
