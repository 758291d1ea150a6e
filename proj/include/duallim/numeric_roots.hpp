#pragma once

#include <vector>

#include "duallim/mp_float.hpp"

namespace duallim {

struct NumericOptions {
  long precision_bits = 256;
  // Relative coefficient-equality / root-clustering tolerance.
  Rational cluster_tol = Rational(1, 1000000000000L);  // 1e-12
};

struct NumRoot {
  Complex value;
  int multiplicity = 1;
};

// Horner evaluation of sum coeffs[k] z^k.
Complex eval_poly(const std::vector<Complex>& coeffs, const Complex& z);

// All complex roots of a polynomial with the given (ascending) coefficients.
// Aberth-Ehrlich simultaneous iteration with deterministic starting points on
// a Cauchy-bound circle; clusters within tolerance are merged into multiple
// roots and polished on the (m-1)-th derivative. Result sorted by (re, im).
std::vector<NumRoot> complex_roots(const std::vector<Complex>& coeffs, const NumericOptions& opt);

}  // namespace duallim
