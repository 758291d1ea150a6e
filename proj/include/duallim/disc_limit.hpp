#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duallim/components.hpp"
#include "duallim/family.hpp"
#include "duallim/numeric_roots.hpp"

namespace duallim {

// Delta(F) = t^alpha Delta', computed exactly over Q[y][t] from the truncated
// data; coefficients of t^0..t^trunc are certified against the true series.
struct DiscriminantLimit {
  long alpha = 0;
  Poly delta_prime;    // exact polynomial; certified to t-order certified_order
  Poly delta_prime_0;  // element of Q or Q[y], nonzero
  long certified_order = 0;  // trunc - alpha, conservative
  bool stable = false;       // unchanged when recomputed at trunc + 1
};

DiscriminantLimit discriminant_series(const Family& f);

// Cheap precondition probe used by branch/type pipelines.
bool discriminant_nonzero_to_trunc(const Family& f);

struct GfdValue {
  enum class Method { BranchNumeric, BranchExact, ZdClosedForm };
  Method method = Method::BranchExact;
  bool exact = true;
  PolyFraction value;   // exact value (element of Q or Q[y], possibly a ratio)
  Complex value_num{64};

  std::string str() const;
};

// Delta(F, f_nu)(a, t)_0 for a root a of f_nu, via Eq. (1.5.2):
//   [prod_{nu'!=nu} f_{nu'}(a)^{n_nu'}]^(2 n_nu - 2) * [f_nu'(a)]^(n_nu (n_nu-1))
//   * prod_{i<j} (s_i - s_j)_0^2,
// with the branch product from the Zd closed form when available, else from
// exact/numeric branches.
GfdValue gfd_leading(const Family& f, const SpecialFiber& fiber, size_t nu,
                     const Rational& root, const NumericOptions& opt = {});
GfdValue gfd_leading_numeric(const Family& f, const SpecialFiber& fiber, size_t nu,
                             const Complex& root, const NumericOptions& opt = {});

struct Theorem27Report {
  DiscriminantLimit oracle;
  Rational unit{1};  // x^n'-leading constant of F_0 (the theorem runs monic)

  struct ComponentEntry {
    std::string component;
    int multiplicity = 1;
    std::string method;          // "zd-closed-form" | "branch-exact" | "branch-numeric" | "simple"
    std::string product;         // prod_l Delta(F, f_nu)(a_l, t)_0 as text
    std::vector<std::string> per_root;  // per-root values when roots are available
  };
  std::vector<ComponentEntry> components;

  bool exact_run = false;
  bool exact_equal = false;
  std::string lhs;  // Delta'_0
  std::string rhs;  // assembled product
  bool numeric_run = false;
  bool numeric_ok = false;
  double numeric_rel_error = 0.0;

  bool ok() const { return (!exact_run || exact_equal) && (!numeric_run || numeric_ok) &&
                           (exact_run || numeric_run); }
};

// Checks Eq. (1.7.3): Delta'_0 = prod_{nu,l} Delta(F,f_nu)(a_l,t)_0
// * prod Delta(f_nu)^n_nu * prod res(f_nu,f_nu')^(2(n_nu+n_nu'-n_nu n_nu')).
// Exact when every multiple component has a Zd (or exact branches); the
// numeric-branch route is run when requested and compares at rel 1e-9.
Theorem27Report verify_theorem_2_7(const Family& f, const SpecialFiber& fiber,
                                   bool run_numeric_route = false,
                                   const NumericOptions& opt = {});

}  // namespace duallim
