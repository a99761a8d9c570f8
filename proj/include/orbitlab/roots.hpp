#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace orbitlab {

// All complex roots of c_0 + c_1 x + ... + c_n x^n (leading zeros trimmed)
// as eigenvalues of the balanced companion matrix. Exact zero roots (from
// vanishing low-order coefficients) are returned exactly. Real input
// coefficients use a real Schur factorization.
std::vector<std::complex<double>> companion_roots(const std::vector<std::complex<double>>& coeffs);

// Value and derivative of a degree-`degree` polynomial at z; returns false
// when either is not finite.
using RootFunction = std::function<bool(std::complex<double> z, std::complex<double>& value,
                                        std::complex<double>& derivative)>;

struct AberthOptions {
  int max_sweeps = 500;
  double step_tolerance = 1e-12;  // relative step size at which a root is frozen
};

// Aberth-Ehrlich simultaneous iteration refining `roots` in place; the
// initial vector's size is the polynomial degree. Returns the number of sweeps.
int aberth_refine(const RootFunction& f, std::vector<std::complex<double>>& roots,
                  const AberthOptions& options = {});

// Initial Aberth guesses on a circle sized from the coefficient moduli.
std::vector<std::complex<double>> circle_guesses(const std::vector<std::complex<double>>& coeffs);

}  // namespace orbitlab
