#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "duallim/rational.hpp"

namespace duallim {

// The four fixed variables of the tool. Everything affine lives in (x, y);
// t is the deformation parameter; z only appears in the homogeneous layer.
enum class Var : int { x = 0, y = 1, z = 2, t = 3 };

constexpr int kNumVars = 4;

struct Monomial {
  std::array<uint32_t, kNumVars> e{0, 0, 0, 0};

  uint32_t operator[](Var v) const { return e[static_cast<int>(v)]; }
  uint32_t& operator[](Var v) { return e[static_cast<int>(v)]; }
  uint64_t total() const {
    return static_cast<uint64_t>(e[0]) + e[1] + e[2] + e[3];
  }
  bool divides(const Monomial& m) const {
    for (int i = 0; i < kNumVars; ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

// Canonical term order: total degree descending, then x-degree descending,
// then y, then z. A graded order, so leading-term division is well behaved.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    uint64_t ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb;
    if (a.e[0] != b.e[0]) return a.e[0] > b.e[0];
    if (a.e[1] != b.e[1]) return a.e[1] > b.e[1];
    return a.e[2] > b.e[2];
  }
};

// Degree guard against runaway intermediate swell. x/y/z are capped (default
// 64 each); t is allowed to grow much further because series resultants
// legitimately reach large t-degrees.
struct DegreeLimits {
  static uint32_t max_xyz();
  static uint32_t max_t();
  static void set_max_xyz(uint32_t v);
};

// Sparse exact polynomial in Q[x, y, z, t]. No stored zero coefficients;
// the map order is the canonical term order.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  Poly() = default;
  static Poly constant(Rational c);
  static Poly variable(Var v, uint32_t power = 1);
  static Poly term(Rational c, Monomial m);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term access; only meaningful together with is_constant().
  Rational constant_value() const;

  bool uses(Var v) const;
  long degree(Var v) const;  // -1 for the zero polynomial
  uint64_t total_degree() const;

  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }
  Rational coeff(const Monomial& m) const;

  // Coefficient of v^k, a polynomial in the remaining variables.
  Poly coeff_of(Var v, uint32_t k) const;
  // Leading coefficient viewed as a univariate polynomial in v.
  Poly leading_coeff(Var v) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(const Rational& c) const;
  Poly pow(uint32_t e) const;
  Poly derivative(Var v) const;
  Poly mul_var(Var v, uint32_t power) const;  // * v^power

  // Substitutes `value` for variable v (dense Horner in v).
  Poly substitute(Var v, const Poly& value) const;
  // Evaluate with v := rational constant.
  Poly eval(Var v, const Rational& c) const { return substitute(v, Poly::constant(c)); }

  // Drops every term whose t-degree exceeds bound.
  Poly truncate_t(uint32_t bound) const;
  // Minimal t-degree among terms; -1 for zero.
  long t_order() const;
  // Exact division by t^k (requires t_order() >= k).
  Poly divide_t_power(uint32_t k) const;

  // Exact division: returns the quotient iff b exactly divides a.
  static std::optional<Poly> try_divide(const Poly& a, const Poly& b);
  // Multivariate gcd (primitive PRS). Result is normalized: monic when the
  // leading coefficient in the main variable is constant, integer-primitive
  // with positive leading coefficient otherwise.
  static Poly gcd(const Poly& a, const Poly& b);

  // Content/primitive part with respect to v: a = content * primitive where
  // content is a polynomial in the other variables.
  Poly content(Var v) const;
  Poly primitive_part(Var v) const;

  // Scales so coefficients are coprime integers with positive leading sign.
  Poly integer_normalized() const;

  void add_term(const Monomial& m, const Rational& c);

  std::string str() const;  // canonical text, delegates to the printer

 private:
  void check_limits(const Monomial& m) const;
  TermMap terms_;
};

Poly operator*(const Poly& a, const Rational& c);
inline Poly operator*(const Rational& c, const Poly& a) { return a * c; }

// Exact quotient of polynomials, kept reduced. Used by the closed-form
// vertex formulas whose intermediate values live in the fraction field.
class PolyFraction {
 public:
  PolyFraction() : num_(), den_(Poly::constant(1)) {}
  explicit PolyFraction(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}
  PolyFraction(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // Requires is_polynomial().
  Poly as_polynomial() const;

  PolyFraction operator-() const;
  friend PolyFraction operator+(const PolyFraction& a, const PolyFraction& b);
  friend PolyFraction operator-(const PolyFraction& a, const PolyFraction& b);
  friend PolyFraction operator*(const PolyFraction& a, const PolyFraction& b);
  friend PolyFraction operator/(const PolyFraction& a, const PolyFraction& b);
  friend bool operator==(const PolyFraction& a, const PolyFraction& b);
  PolyFraction pow(uint32_t e) const;

 private:
  void reduce();
  Poly num_, den_;
};

}  // namespace duallim
