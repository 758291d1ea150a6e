#pragma once

#include <optional>
#include <vector>

#include "duallim/elimination.hpp"
#include "duallim/family.hpp"
#include "duallim/numeric_roots.hpp"

namespace duallim {

// One factor f_nu^n_nu of the special fiber F_0.
struct ComponentFactor {
  Poly poly;            // monic in x
  int multiplicity = 1;
  std::optional<std::vector<Rational>> roots_exact;
  std::optional<std::vector<Complex>> roots_numeric;

  long degree() const { return poly.degree(Var::x); }
};

// Splits F_0 = unit * prod f_nu^n_nu into monic components, either from
// user-declared factors (validated) or by square-free decomposition.
// Degree-0 factors (x-content over Q[y]) are absorbed into the unit.
struct SpecialFiber {
  Rational unit_constant{1};  // constant part of the unit
  Poly unit_content;          // y-content (1 when trivial)
  std::vector<ComponentFactor> components;
};

SpecialFiber split_special_fiber(const Family& f,
                                 const std::vector<std::pair<Poly, int>>& user_factors);

// Attaches exact rational roots where the component splits over Q.
void attach_exact_roots(SpecialFiber& fiber);

// Attaches numeric roots (needs y-free components).
void attach_numeric_roots(SpecialFiber& fiber, const NumericOptions& opt);

}  // namespace duallim
