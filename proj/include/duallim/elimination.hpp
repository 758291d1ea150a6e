#pragma once

#include <utility>
#include <vector>

#include "duallim/poly.hpp"

namespace duallim {

// Classical elimination over Q, Q[y] and Q[y][t]: all coefficient domains
// are subrings of Q[x,y,z,t], so one exact implementation serves them all.

// res_v(f, g) by fraction-free subresultant PRS, never via roots.
// Convention: a nonzero constant argument gives constant^deg(other);
// two constants are an error.
Poly resultant(const Poly& f, const Poly& g, Var v = Var::x);

// Sylvester-determinant route (Bareiss elimination). Secondary
// implementation kept as an internal cross-check for the PRS path.
Poly resultant_sylvester(const Poly& f, const Poly& g, Var v = Var::x);

// (-1)^(n(n-1)/2) res(f, f') / lc, for deg_v(f) = n >= 1.
Poly discriminant(const Poly& f, Var v = Var::x);

// Exact quotient; errors with "not divisible" otherwise.
Poly exact_divide(const Poly& f, const Poly& g);

struct SquareFreeDecomposition {
  // unit * prod(parts[i].first ^ parts[i].second) == input, parts pairwise
  // coprime, square-free and monic in x. The unit absorbs the x-content
  // (an element of Q[y]) and the constant leading coefficient.
  Poly unit;
  std::vector<std::pair<Poly, int>> parts;
};

// Yun decomposition with respect to x. The x-leading coefficient of the
// x-primitive part must be a nonzero constant.
SquareFreeDecomposition squarefree_decompose(const Poly& f);

// All rational roots with multiplicities of a univariate polynomial over Q,
// by divisor search on the cleared leading/trailing coefficients plus exact
// verification. Irrational roots are simply not returned.
std::vector<std::pair<Rational, int>> rational_roots(const Poly& f);

}  // namespace duallim
