#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "duallim/components.hpp"
#include "duallim/family.hpp"
#include "duallim/numeric_roots.hpp"

namespace duallim {

enum class Kind { First, Second, Third, Other };

// Pattern match of F against Zeuthen's three kinds, with every stated
// hypothesis recorded as a named flag.
struct KindPattern {
  Kind kind = Kind::Other;
  Kind shape = Kind::Other;  // structural match even when a hypothesis fails
  // first: A, B; second: A, B, C; third: a0, a1, b0, b1, c0, c1, d1.
  std::map<std::string, Poly> parts;
  std::vector<std::pair<std::string, bool>> flags;

  bool all_flags() const {
    for (const auto& [n, v] : flags)
      if (!v) return false;
    return !flags.empty();
  }
  std::string first_failed_flag() const {
    for (const auto& [n, v] : flags)
      if (!v) return n;
    return "";
  }
};

KindPattern classify_kind(const Family& f);

// alpha F = (f_nu beta_0 + beta_1 t + ... + beta_{n-1} t^{n-1})^{n_nu}
// + delta_n t^n + O(t^{n+1}), gcd(alpha delta_n, f_nu) = 1. Both invariants
// are re-verified exactly on construction.
struct ZdDecomposition {
  Poly f_nu;
  int n_nu = 0;
  Poly alpha;
  std::vector<Poly> betas;  // beta_0 .. beta_{n-1}
  Poly delta;
  int order = 0;  // n

  void verify(const Family& monic_family) const;
};

// Constructive search: alpha = R^{n_nu-1}, beta_0 = R with R = F_0 / f_nu^n_nu,
// lifted with denominators in powers of R (cleared at the end). Failure means
// "no Zd found by this strategy", never "no Zd exists".
struct ZdSearchResult {
  std::optional<ZdDecomposition> zd;
  std::string failure;  // set when zd is empty
};
ZdSearchResult zd_search(const Family& f, const ComponentFactor& fnu);

// Delta(F, x)(0, t)_0 for f_nu = x (callers recenter first):
// (-1)^(n(n-1)/2) n^n delta(0)^(n-1) (prod_{nu'!=nu} f^{n'}(0))^(n-1) / alpha(0)^(n-1).
PolyFraction lemma_3_6_value(const ZdDecomposition& zd, const Family& monic_family);

struct VertexReport {
  enum class Method { ClosedFormKind, ZdTheorem37, BranchNumeric };
  Method method = Method::ClosedFormKind;
  bool exact = true;
  PolyFraction value;   // exact ver(F), usually a polynomial in Q[y]
  Complex value_num{64};
  Rational c_constant{1};  // calibrated constant of Theorem 3.7
  bool oracle_verified = false;
  bool up_to_constant = false;  // set when no oracle was available

  struct Factor {
    std::string description;
    std::string value;
    long exponent;
  };
  std::vector<Factor> factors;

  std::string value_str() const;
};

// Closed forms of Propositions 3.2-3.4, applied to the monic-normalized
// family and scaled back by unit^(2n'-2).
VertexReport vertex_closed_form(const Family& f, const KindPattern& p);

// Theorem 3.7 resultant form; every multiple component needs a decomposition.
VertexReport vertex_zd_theorem_3_7(const Family& f, const SpecialFiber& fiber,
                                   const std::map<size_t, ZdDecomposition>& decomps);

// Definition 3.1 evaluated root-by-root over numeric branch data.
VertexReport vertex_branch_numeric(const Family& f, const SpecialFiber& fiber,
                                   const NumericOptions& opt);

struct Corollary38Report {
  bool ok = false;
  bool exact = true;
  std::string lhs;  // oracle Delta'_0
  std::string rhs;  // prod Delta(f_nu)^n_nu * ver
  double rel_error = 0.0;
};

// Asserts Delta'_0 = prod Delta(f_nu)^n_nu * ver(F); sets oracle_verified.
Corollary38Report corollary_3_8_check(const Family& f, const SpecialFiber& fiber,
                                      VertexReport& v, const NumericOptions& opt = {});

// Pipeline dispatcher: closed-form kind, then Zd/Theorem 3.7, then numeric
// branches; attaches the Corollary 3.8 oracle check whenever the oracle runs.
VertexReport compute_vertex(const Family& f, const SpecialFiber& fiber,
                            bool allow_numeric = true, const NumericOptions& opt = {});

}  // namespace duallim
