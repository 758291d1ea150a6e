#include "duallim/type_general.hpp"

#include <algorithm>
#include <random>

#include "duallim/disc_limit.hpp"
#include "duallim/errors.hpp"
#include "duallim/newton_puiseux.hpp"
#include "duallim/printer.hpp"

namespace duallim {

namespace {

long tau_from(const Rational& m, int n) {
  return floor_long(m * Rational(static_cast<long>(n)));
}

// Branch-route m_nu: max m(i,j) over pairs whose shared center is a root of
// f_nu (|f_nu(center)| below tolerance in numeric mode).
Rational branch_m_nu(const Family& f, const ComponentFactor& comp, const NumericOptions& opt,
                     bool* has_pair) {
  BranchSet bs = expand_until_separated(f, BranchBackend::Numeric, opt);
  SeparationOrders so = separation_orders(bs, opt);
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
  Real ctol = Real::of(opt.cluster_tol, prec);
  auto center_val = [&](int i) {
    PuiseuxCoeff c = bs.branches[static_cast<size_t>(i)].center();
    return c.exact ? Complex::of(c.q, prec) : c.c;
  };
  auto on_component = [&](int i) {
    Complex z = center_val(i);
    long d = comp.poly.degree(Var::x);
    Complex acc(prec);
    for (long k = d; k >= 0; --k)
      acc = acc * z +
            Complex::of(comp.poly.coeff_of(Var::x, static_cast<uint32_t>(k)).constant_value(),
                        prec);
    return !(acc.abs() > ctol * max(Real::of(1L, prec), z.abs()));
  };
  Rational best(0);
  *has_pair = false;
  for (const auto& [key, m] : so.orders) {
    if (!on_component(key.first) || !on_component(key.second)) continue;
    *has_pair = true;
    best = std::max(best, m);
  }
  return best;
}

}  // namespace

ComponentType type_of(const Family& f, const ComponentFactor& comp, const NumericOptions& opt) {
  if (!discriminant_nonzero_to_trunc(f))
    fail_hypothesis("discriminant vanishes to truncation order");
  ComponentType out;
  out.f_nu = comp.poly;
  out.n_nu = comp.multiplicity;
  if (comp.multiplicity == 1 && comp.degree() == 1) {
    out.method = "empty-max";
    out.empty_max = true;
    out.m_nu = Rational(0);
    out.tau_nu = 0;
    return out;
  }
  try {
    SymbolicSeparation sep = separation_orders_symbolic(f, comp.poly);
    out.method = "symbolic";
    out.m_nu = sep.m_nu;
    out.empty_max = !sep.has_pair;
    if (out.empty_max) out.method = "empty-max";
    out.certificate = sep.certificate;
    out.tau_nu = tau_from(out.m_nu, out.n_nu);
    return out;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Internal) throw;
    if (f.uses_y()) throw;  // no numeric fallback over Q[y]
  }
  bool has_pair = false;
  out.m_nu = branch_m_nu(f, comp, opt, &has_pair);
  out.method = has_pair ? "branch-numeric" : "empty-max";
  out.empty_max = !has_pair;
  out.tau_nu = tau_from(out.m_nu, out.n_nu);
  return out;
}

TypeReport general_type(const Family& f, const SpecialFiber& fiber, const NumericOptions& opt) {
  TypeReport rep;
  Poly cert = Poly::constant(1);
  for (const ComponentFactor& comp : fiber.components) {
    ComponentType ct = type_of(f, comp, opt);
    cert = cert * ct.certificate;
    rep.general_type = std::max(rep.general_type, ct.tau_nu);
    rep.per_component.push_back(std::move(ct));
  }
  if (cert.uses(Var::y)) {
    Poly univ = cert.substitute(Var::y, Poly::variable(Var::x));
    for (const auto& [r, m] : rational_roots(univ)) rep.exceptional_y.push_back(r);
  }
  return rep;
}

SufficiencyReport truncation_sufficiency_check(const Family& f, const SpecialFiber& fiber,
                                               int trials, uint64_t seed,
                                               const NumericOptions& opt) {
  SufficiencyReport rep;
  rep.trials = trials;
  rep.seed = seed;
  TypeReport types = general_type(f, fiber, opt);
  rep.tau = types.general_type;
  DiscriminantLimit base = discriminant_series(f);
  const long tau = rep.tau;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff_dist(-3, 3);
  std::uniform_int_distribution<int> ydeg_dist(0, f.uses_y() ? 2 : 0);
  auto random_poly = [&]() {
    Poly g;
    for (long j = 0; j <= f.x_degree(); ++j) {
      int c = coeff_dist(rng);
      int yd = ydeg_dist(rng);
      if (c == 0) continue;
      Monomial m;
      m[Var::x] = static_cast<uint32_t>(j);
      m[Var::y] = static_cast<uint32_t>(yd);
      g.add_term(m, Rational(c));
    }
    if (g.is_zero()) g = Poly::constant(1);
    return g;
  };
  int new_trunc = std::max<long>(f.trunc(), tau + 1);
  for (int trial = 0; trial < trials; ++trial) {
    Poly g = random_poly();
    Family perturbed =
        f.with_trunc(new_trunc).add_term(static_cast<int>(tau) + 1, g);
    DiscriminantLimit d = discriminant_series(perturbed);
    if (d.alpha == base.alpha && d.delta_prime_0 == base.delta_prime_0) {
      ++rep.unchanged;
    } else {
      rep.failures.push_back("+ (" + print_poly(g) + ")*t^" + std::to_string(tau + 1));
    }
  }
  // Negative probe at order tau, informational only. tau = 0 means F_0
  // itself would change, which is outside the statement; skip then.
  if (tau >= 1) {
    Poly g = random_poly();
    Family probe = f.with_trunc(std::max<long>(f.trunc(), tau)).add_term(static_cast<int>(tau), g);
    rep.negative_probe_run = true;
    rep.negative_probe = "+ (" + print_poly(g) + ")*t^" + std::to_string(tau);
    try {
      DiscriminantLimit d = discriminant_series(probe);
      rep.negative_probe_changed =
          d.alpha != base.alpha || d.delta_prime_0 != base.delta_prime_0;
    } catch (const Error&) {
      rep.negative_probe_changed = true;  // discriminant collapsed entirely
    }
  }
  return rep;
}

}  // namespace duallim
