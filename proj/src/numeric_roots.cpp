#include "duallim/numeric_roots.hpp"

#include <algorithm>

#include "duallim/errors.hpp"

namespace duallim {

Complex eval_poly(const std::vector<Complex>& coeffs, const Complex& z) {
  if (coeffs.empty()) return Complex(z.prec());
  Complex acc = coeffs.back();
  for (size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

namespace {

std::vector<Complex> derivative(const std::vector<Complex>& coeffs, mpfr_prec_t prec) {
  std::vector<Complex> d;
  for (size_t k = 1; k < coeffs.size(); ++k)
    d.push_back(coeffs[k] * Complex::of(Rational(static_cast<long>(k)), prec));
  return d;
}

}  // namespace

std::vector<NumRoot> complex_roots(const std::vector<Complex>& coeffs_in,
                                   const NumericOptions& opt) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
  std::vector<Complex> coeffs = coeffs_in;
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.size() <= 1) return {};
  size_t d = coeffs.size() - 1;

  std::vector<NumRoot> out;
  if (d == 1) {
    out.push_back({-(coeffs[0] / coeffs[1]), 1});
    return out;
  }

  // Cauchy bound radius.
  Real radius = Real::of(0L, prec);
  Real lead_abs = coeffs[d].abs();
  for (size_t k = 0; k < d; ++k) radius = max(radius, coeffs[k].abs() / lead_abs);
  radius = radius + Real::of(1L, prec);

  // Deterministic starting points: equally spaced angles with a fixed
  // irrational-ish offset so no start aligns with an axis.
  std::vector<Complex> z;
  Real two_pi = Real::pi(prec) * Real::of(2L, prec);
  for (size_t k = 0; k < d; ++k) {
    Real angle = two_pi * (Real::of(static_cast<long>(k), prec) +
                           Real::of(Rational(2, 7), prec)) /
                 Real::of(static_cast<long>(d), prec);
    z.emplace_back(radius * angle.cos(), radius * angle.sin());
  }

  std::vector<Complex> dcoeffs = derivative(coeffs, prec);
  const Real eps = Real::pow2(-(opt.precision_bits - 8), prec);
  const Real one = Real::of(1L, prec);
  const long max_iter = 400;
  bool converged = false;
  for (long iter = 0; iter < max_iter && !converged; ++iter) {
    converged = true;
    for (size_t k = 0; k < d; ++k) {
      Complex p = eval_poly(coeffs, z[k]);
      Complex dp = eval_poly(dcoeffs, z[k]);
      if (p.is_zero()) continue;
      Complex newton = dp.is_zero() ? Complex(prec) : p / dp;
      Complex repulse(prec);
      for (size_t j = 0; j < d; ++j) {
        if (j == k) continue;
        Complex diff = z[k] - z[j];
        if (diff.is_zero()) {
          // Nudge coincident iterates apart deterministically.
          diff = Complex(Real::pow2(-(opt.precision_bits / 2), prec),
                         Real::of(0L, prec));
        }
        repulse = repulse + Complex(one, Real::of(0L, prec)) / diff;
      }
      Complex denom = Complex(one, Real::of(0L, prec)) - newton * repulse;
      Complex corr = denom.is_zero() ? newton : newton / denom;
      z[k] = z[k] - corr;
      if (corr.abs() > eps * max(one, z[k].abs())) converged = false;
    }
  }
  // Aberth converges slowly near multiple roots; the remaining error is
  // absorbed by clustering below, so lack of full convergence is not fatal.

  // Sort deterministically, then cluster.
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
    if (a.re < b.re) return true;
    if (b.re < a.re) return false;
    return a.im < b.im;
  });
  Real scale = max(one, radius);
  Real ctol = Real::of(opt.cluster_tol, prec) * scale;
  std::vector<bool> used(d, false);
  for (size_t i = 0; i < d; ++i) {
    if (used[i]) continue;
    std::vector<size_t> cluster{i};
    for (size_t j = i + 1; j < d; ++j) {
      if (used[j]) continue;
      if ((z[j] - z[i]).abs() <= ctol) {
        cluster.push_back(j);
        used[j] = true;
      }
    }
    used[i] = true;
    Complex center(prec);
    for (size_t idx : cluster) center = center + z[idx];
    center = center / Complex::of(Rational(static_cast<long>(cluster.size())), prec);
    int mult = static_cast<int>(cluster.size());
    if (mult > 1) {
      // Polish the multiple root: Newton on the (mult-1)-th derivative,
      // which has a simple root at the true location.
      std::vector<Complex> g = coeffs;
      for (int k = 1; k < mult; ++k) g = derivative(g, prec);
      std::vector<Complex> dg = derivative(g, prec);
      for (int it = 0; it < 64; ++it) {
        Complex gv = eval_poly(g, center);
        Complex dgv = eval_poly(dg, center);
        if (dgv.is_zero()) break;
        Complex step = gv / dgv;
        center = center - step;
        if (step.abs() <= eps * max(one, center.abs())) break;
      }
    }
    out.push_back({center, mult});
  }
  std::sort(out.begin(), out.end(), [](const NumRoot& a, const NumRoot& b) {
    if (a.value.re < b.value.re) return true;
    if (b.value.re < a.value.re) return false;
    return a.value.im < b.value.im;
  });
  return out;
}

}  // namespace duallim
