#pragma once

#include <random>
#include <string>
#include <vector>

#include "duallim/family.hpp"
#include "duallim/parser.hpp"
#include "duallim/poly.hpp"

namespace duallim::testutil {

inline Poly P(const std::string& text) {
  return parse_expression(text, VarSet::homogeneous());
}

inline Family F(const std::string& text, int trunc = 8) {
  return parse_family_expression(text, trunc, VarSet::affine_qy());
}

inline Rational Q(long n, long d = 1) { return Rational(n, d); }

// Deterministic generators for property tests.
class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}

  long int_in(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng_);
  }

  Rational rational(long bound = 9) {
    long num = int_in(-bound, bound);
    long den = int_in(1, bound);
    return Rational(num, den);
  }

  Rational nonzero_rational(long bound = 9) {
    Rational r = rational(bound);
    return r.is_zero() ? Rational(1) : r;
  }

  // Random polynomial in x (and optionally y) with small integer coefficients.
  Poly poly(long deg_x, long deg_y = 0, long bound = 5) {
    Poly p;
    for (long j = 0; j <= deg_x; ++j) {
      for (long k = 0; k <= deg_y; ++k) {
        long c = int_in(-bound, bound);
        if (c == 0) continue;
        Monomial m;
        m[Var::x] = static_cast<uint32_t>(j);
        m[Var::y] = static_cast<uint32_t>(k);
        p.add_term(m, Rational(c));
      }
    }
    return p;
  }

  Poly nonzero_poly(long deg_x, long deg_y = 0, long bound = 5) {
    Poly p = poly(deg_x, deg_y, bound);
    return p.is_zero() ? Poly::constant(1) : p;
  }

  // Nonzero at x = 0 (as an element of Q or Q[y]).
  Poly poly_nonzero_at_0(long deg_x, long deg_y = 0, long bound = 5) {
    Poly p = poly(deg_x, deg_y, bound);
    if (p.eval(Var::x, Rational(0)).is_zero()) p += Poly::constant(Rational(int_in(1, bound)));
    return p;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace duallim::testutil
