#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duallim/poly.hpp"

namespace duallim {

// F(x,t) = sum F_i(x) t^i stored to a truncation order T. Coefficients are
// t-free and z-free (affine families over Q or Q[y]). Immutable after
// construction.
class Family {
 public:
  // coeffs[i] = F_i; trailing entries may be zero. F_0 must be nonzero.
  Family(std::vector<Poly> coeffs, int trunc);
  static Family from_poly(const Poly& p, int trunc);

  int trunc() const { return trunc_; }
  int x_degree() const { return x_degree_; }  // n' = deg_x(F_0)
  const Poly& f0() const { return coeffs_[0]; }
  // F_i, zero for i > trunc.
  const Poly& coeff(int i) const;
  const std::vector<Poly>& coeffs() const { return coeffs_; }
  bool uses_y() const;
  // Leading x-coefficient of F_0.
  Poly lead_x() const { return coeffs_[0].leading_coeff(Var::x); }
  bool monic_normalizable() const;  // lead_x() is a nonzero constant

  Poly as_poly() const;  // glue into one element of Q[x,y][t]

  // The paper's "family of polynomials" shape: deg_x(F_i) <= n' for all i.
  // Input files must satisfy it; internal recursion families need not.
  bool is_polynomial_family_shape() const;

  Family scaled(const Rational& c) const;
  Family add(const Family& o) const;             // truncates at min(T_a, T_b)
  Family mul(const Family& o) const;             // truncates at min(T_a, T_b)
  Family pow_truncated(uint32_t e) const;
  Family with_trunc(int t) const;                // re-truncate or zero-pad
  Family add_term(int order, const Poly& p) const;

  // F(x + a, t) for a in Q or Q[y].
  Family shift_x(const Poly& a) const;

  // F(t^m (c + x'), t) = t^w G(x', t'), t = t'^e. Returns the maximal
  // extractable weight w (in original t units) and the ramification rescale e.
  struct Ramified;
  Ramified substitute_ramified(const Rational& m, const Poly& c) const;

  friend bool operator==(const Family& a, const Family& b) {
    return a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<Poly> coeffs_;
  int trunc_;
  int x_degree_;
};

struct Family::Ramified {
  Family g;
  int e = 1;
  Rational w;
};

}  // namespace duallim
