#include "duallim/family.hpp"

#include <numeric>

#include "duallim/errors.hpp"

namespace duallim {

Family::Family(std::vector<Poly> coeffs, int trunc) : coeffs_(std::move(coeffs)), trunc_(trunc) {
  if (trunc_ < 0) fail_internal("negative truncation order");
  coeffs_.resize(static_cast<size_t>(trunc_) + 1);
  for (const Poly& p : coeffs_) {
    if (p.uses(Var::t) || p.uses(Var::z))
      fail_internal("family coefficient uses t or z");
  }
  if (coeffs_[0].is_zero()) fail_hypothesis("zero family (F_0 != 0 required)");
  x_degree_ = static_cast<int>(coeffs_[0].degree(Var::x));
}

Family Family::from_poly(const Poly& p, int trunc) {
  std::vector<Poly> cs;
  cs.reserve(static_cast<size_t>(trunc) + 1);
  for (int i = 0; i <= trunc; ++i) cs.push_back(p.coeff_of(Var::t, static_cast<uint32_t>(i)));
  return Family(std::move(cs), trunc);
}

const Poly& Family::coeff(int i) const {
  static const Poly kZero;
  if (i < 0) fail_internal("negative t index");
  if (i > trunc_) return kZero;
  return coeffs_[static_cast<size_t>(i)];
}

bool Family::uses_y() const {
  for (const Poly& p : coeffs_)
    if (p.uses(Var::y)) return true;
  return false;
}

bool Family::monic_normalizable() const {
  Poly l = lead_x();
  return l.is_constant() && !l.is_zero();
}

Poly Family::as_poly() const {
  Poly out;
  for (int i = 0; i <= trunc_; ++i)
    out += coeffs_[static_cast<size_t>(i)].mul_var(Var::t, static_cast<uint32_t>(i));
  return out;
}

bool Family::is_polynomial_family_shape() const {
  for (const Poly& p : coeffs_)
    if (p.degree(Var::x) > x_degree_) return false;
  return true;
}

Family Family::scaled(const Rational& c) const {
  std::vector<Poly> cs;
  cs.reserve(coeffs_.size());
  for (const Poly& p : coeffs_) cs.push_back(p.scaled(c));
  return Family(std::move(cs), trunc_);
}

Family Family::add(const Family& o) const {
  int t = std::min(trunc_, o.trunc_);
  std::vector<Poly> cs(static_cast<size_t>(t) + 1);
  for (int i = 0; i <= t; ++i) cs[static_cast<size_t>(i)] = coeff(i) + o.coeff(i);
  return Family(std::move(cs), t);
}

Family Family::mul(const Family& o) const {
  int t = std::min(trunc_, o.trunc_);
  std::vector<Poly> cs(static_cast<size_t>(t) + 1);
  for (int i = 0; i <= t; ++i)
    for (int j = 0; j <= i; ++j) cs[static_cast<size_t>(i)] += coeff(j) * o.coeff(i - j);
  return Family(std::move(cs), t);
}

Family Family::pow_truncated(uint32_t e) const {
  if (e == 0) return Family({Poly::constant(1)}, trunc_).with_trunc(trunc_);
  Family acc = *this;
  for (uint32_t k = 1; k < e; ++k) acc = acc.mul(*this);
  return acc;
}

Family Family::with_trunc(int t) const {
  std::vector<Poly> cs;
  cs.reserve(static_cast<size_t>(t) + 1);
  for (int i = 0; i <= t; ++i) cs.push_back(coeff(i));
  return Family(std::move(cs), t);
}

Family Family::add_term(int order, const Poly& p) const {
  if (order > trunc_) fail_internal("add_term beyond truncation");
  std::vector<Poly> cs = coeffs_;
  cs[static_cast<size_t>(order)] += p;
  return Family(std::move(cs), trunc_);
}

Family Family::shift_x(const Poly& a) const {
  if (a.uses(Var::x) || a.uses(Var::t) || a.uses(Var::z))
    fail_internal("shift_x by a non-scalar");
  Poly xa = Poly::variable(Var::x) + a;
  std::vector<Poly> cs;
  cs.reserve(coeffs_.size());
  for (const Poly& p : coeffs_) cs.push_back(p.substitute(Var::x, xa));
  return Family(std::move(cs), trunc_);
}

Family::Ramified Family::substitute_ramified(const Rational& m, const Poly& c) const {
  if (m <= Rational(0)) fail_internal("ramified substitution requires m > 0");
  if (c.uses(Var::x) || c.uses(Var::t) || c.uses(Var::z))
    fail_internal("ramified substitution center must be scalar");
  long p = 0, q = 0;
  {
    mpz_class num = m.numerator(), den = m.denominator();
    if (!num.fits_slong_p() || !den.fits_slong_p()) fail_resource("exponent overflow");
    p = num.get_si();
    q = den.get_si();
  }
  // x -> t^(p/q) (c + x'); rescale t = tau^q so exponents are integral.
  Poly cx = c + Poly::variable(Var::x);
  Poly sum;
  long n = coeffs_[0].degree(Var::x);
  for (int i = 0; i <= trunc_; ++i) n = std::max(n, coeffs_[static_cast<size_t>(i)].degree(Var::x));
  std::vector<Poly> cx_pow(static_cast<size_t>(n) + 1);
  cx_pow[0] = Poly::constant(1);
  for (long j = 1; j <= n; ++j) cx_pow[static_cast<size_t>(j)] = cx_pow[static_cast<size_t>(j - 1)] * cx;
  for (int i = 0; i <= trunc_; ++i) {
    const Poly& fi = coeffs_[static_cast<size_t>(i)];
    long dj = fi.degree(Var::x);
    for (long j = 0; j <= dj; ++j) {
      Poly cj = fi.coeff_of(Var::x, static_cast<uint32_t>(j));
      if (cj.is_zero()) continue;
      uint64_t tau_exp = static_cast<uint64_t>(q) * i + static_cast<uint64_t>(p) * j;
      if (tau_exp > DegreeLimits::max_t()) fail_resource("degree limit exceeded (t)");
      sum += (cj * cx_pow[static_cast<size_t>(j)]).mul_var(Var::t, static_cast<uint32_t>(tau_exp));
    }
  }
  if (sum.is_zero()) fail_hypothesis("degenerate substitution");
  long w_tau = sum.t_order();
  // Terms known exactly: every source term with i <= T contributes at
  // tau-order q*i + p*j; unknown terms start at q*(T+1).
  long certified = static_cast<long>(q) * (trunc_ + 1) - 1;
  long g_trunc = certified - w_tau;
  if (g_trunc < 0) fail_resource("ramified substitution exhausts truncation");
  Poly g = sum.divide_t_power(static_cast<uint32_t>(w_tau)).truncate_t(static_cast<uint32_t>(g_trunc));
  Ramified out{Family::from_poly(g, static_cast<int>(g_trunc)), static_cast<int>(q),
               Rational(w_tau, q)};
  return out;
}

}  // namespace duallim
