#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duallim/components.hpp"
#include "duallim/family.hpp"

namespace duallim {

struct ComponentType {
  Poly f_nu;
  int n_nu = 1;
  Rational m_nu;
  long tau_nu = 0;  // floor(n_nu * m_nu)
  std::string method;  // "symbolic" | "branch-numeric" | "empty-max"
  bool empty_max = false;  // no same-center branch pair; tau_nu = 0 by convention
  Poly certificate = Poly::constant(1);  // Q[y] distinctness certificate
};

struct TypeReport {
  std::vector<ComponentType> per_component;
  long general_type = 0;  // max tau_nu
  // Rational y-values where a Q[y] distinctness certificate vanishes.
  std::vector<Rational> exceptional_y;
};

// (m_nu, tau_nu) for one component; symbolic route preferred, numeric branch
// route as fallback.
ComponentType type_of(const Family& f, const ComponentFactor& comp,
                      const NumericOptions& opt = {});

TypeReport general_type(const Family& f, const SpecialFiber& fiber,
                        const NumericOptions& opt = {});

struct SufficiencyReport {
  long tau = 0;
  int trials = 0;
  uint64_t seed = 0;
  int unchanged = 0;
  std::vector<std::string> failures;  // offending perturbations, echoed
  // Informational negative probe at order tau (not asserted).
  bool negative_probe_run = false;
  bool negative_probe_changed = false;
  std::string negative_probe;

  bool ok() const { return unchanged == trials; }
};

// Theorem 4.7 check: random perturbations at order t^(tau+1) leave the oracle
// Delta'_0 (hence ver, F_0 being fixed) unchanged.
SufficiencyReport truncation_sufficiency_check(const Family& f, const SpecialFiber& fiber,
                                               int trials, uint64_t seed,
                                               const NumericOptions& opt = {});

}  // namespace duallim
