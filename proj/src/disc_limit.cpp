#include "duallim/disc_limit.hpp"

#include <sstream>

#include "duallim/errors.hpp"
#include "duallim/newton_puiseux.hpp"
#include "duallim/printer.hpp"
#include "duallim/vertex_zd.hpp"

namespace duallim {

DiscriminantLimit discriminant_series(const Family& f) {
  if (f.x_degree() < 1) fail_hypothesis("discriminant series requires deg_x >= 1");
  if (!f.monic_normalizable())
    fail_hypothesis("x-leading coefficient of F_0 must be a nonzero constant");
  Poly disc = f.x_degree() == 1 ? Poly::constant(1) : discriminant(f.as_poly(), Var::x);
  long ord = disc.is_zero() ? -1 : disc.t_order();
  if (disc.is_zero() || ord > f.trunc())
    fail_hypothesis("discriminant vanishes to truncation order");
  DiscriminantLimit out;
  out.alpha = ord;
  out.delta_prime = disc.divide_t_power(static_cast<uint32_t>(ord));
  out.delta_prime_0 = out.delta_prime.coeff_of(Var::t, 0);
  out.certified_order = f.trunc() - ord;
  // Recompute at truncation T+1 and compare.
  Family f2 = f.with_trunc(f.trunc() + 1);
  Poly disc2 = f2.x_degree() == 1 ? Poly::constant(1) : discriminant(f2.as_poly(), Var::x);
  out.stable = !disc2.is_zero() && disc2.t_order() == ord &&
               disc2.divide_t_power(static_cast<uint32_t>(ord)).coeff_of(Var::t, 0) ==
                   out.delta_prime_0;
  return out;
}

bool discriminant_nonzero_to_trunc(const Family& f) {
  if (f.x_degree() < 1) return false;
  if (f.x_degree() == 1) return true;
  Poly disc = discriminant(f.as_poly(), Var::x);
  return !disc.is_zero() && disc.t_order() <= f.trunc();
}

std::string GfdValue::str() const {
  if (!exact) return value_num.str(12);
  if (value.is_polynomial()) return print_poly(value.as_polynomial());
  return "(" + print_poly(value.num()) + ") / (" + print_poly(value.den()) + ")";
}

namespace {

Rational lemma_constant(int n) {
  Rational k(static_cast<long>(n));
  Rational v = k.pow(n);
  if (((static_cast<long>(n) * (n - 1) / 2) % 2) != 0) v = -v;
  return v;
}

Family monicize(const Family& f) {
  if (!f.monic_normalizable())
    fail_hypothesis("x-leading coefficient of F_0 must be a nonzero constant");
  return f.scaled(f.lead_x().constant_value().inverse());
}

// prod_{nu' != nu} f_{nu'}^{n_nu'} for a monic family.
Poly other_components(const Family& fm, const ComponentFactor& comp) {
  return exact_divide(fm.f0(), comp.poly.pow(static_cast<uint32_t>(comp.multiplicity)));
}

// Branch product prod_{i<j, center a} (s_i - s_j)_0^2 from a branch set.
// Exact variant: requires exact branches.
std::optional<Rational> branch_pair_product_exact(const BranchSet& bs, const Rational& a,
                                                  int expected) {
  std::vector<const PuiseuxBranch*> at;
  for (const auto& b : bs.branches) {
    const PuiseuxCoeff c = b.center();
    if (!c.exact) return std::nullopt;
    if (c.q == a) at.push_back(&b);
  }
  if (static_cast<int>(at.size()) != expected) return std::nullopt;
  SeparationOrders so = separation_orders(bs);
  // Map back to indices in bs.
  auto index_of = [&](const PuiseuxBranch* p) {
    for (size_t k = 0; k < bs.branches.size(); ++k)
      if (&bs.branches[k] == p) return static_cast<int>(k);
    return -1;
  };
  Rational prod(1);
  for (size_t i = 0; i < at.size(); ++i) {
    for (size_t j = i + 1; j < at.size(); ++j) {
      int bi = index_of(at[i]), bj = index_of(at[j]);
      auto it = so.orders.find({std::min(bi, bj), std::max(bi, bj)});
      if (it == so.orders.end()) return std::nullopt;
      const Rational& m = it->second;
      auto coeff_at = [&](const PuiseuxBranch& b) {
        for (const auto& [e, c] : b.terms)
          if (e == m) return c.q;
        return Rational(0);
      };
      Rational d = coeff_at(*at[i]) - coeff_at(*at[j]);
      prod *= d * d;
    }
  }
  return prod;
}

Complex branch_pair_product_numeric(const BranchSet& bs, const Complex& a,
                                    const NumericOptions& opt, int expected) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
  Real ctol = Real::of(opt.cluster_tol, prec);
  std::vector<const PuiseuxBranch*> at;
  for (const auto& b : bs.branches) {
    PuiseuxCoeff c = b.center();
    Complex cv = c.exact ? Complex::of(c.q, prec) : c.c;
    if ((cv - a).abs() <= ctol * max(Real::of(1L, prec), a.abs())) at.push_back(&b);
  }
  if (static_cast<int>(at.size()) != expected)
    fail_internal("numeric branch grouping lost branches at a center");
  Complex prod = Complex::of(Rational(1), prec);
  for (size_t i = 0; i < at.size(); ++i) {
    for (size_t j = i + 1; j < at.size(); ++j) {
      // Leading coefficient of the difference: first exponent where they differ.
      std::vector<Rational> exps;
      for (const auto& [e, c] : at[i]->terms)
        if (!e.is_zero()) exps.push_back(e);
      for (const auto& [e, c] : at[j]->terms)
        if (!e.is_zero()) exps.push_back(e);
      std::sort(exps.begin(), exps.end());
      exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
      auto coeff_at = [&](const PuiseuxBranch& b, const Rational& e) {
        for (const auto& [ee, c] : b.terms)
          if (ee == e) return c.exact ? Complex::of(c.q, prec) : c.c;
        return Complex(prec);
      };
      Complex diff(prec);
      for (const Rational& e : exps) {
        Complex d = coeff_at(*at[i], e) - coeff_at(*at[j], e);
        Real scale = max(Real::of(1L, prec), max(coeff_at(*at[i], e).abs(),
                                                 coeff_at(*at[j], e).abs()));
        if (d.abs() > ctol * scale) {
          diff = d;
          break;
        }
      }
      if (diff.is_zero()) fail_hypothesis("insufficient depth: branches not separated");
      prod = prod * diff * diff;
    }
  }
  return prod;
}

}  // namespace

GfdValue gfd_leading(const Family& f, const SpecialFiber& fiber, size_t nu,
                     const Rational& root, const NumericOptions& opt) {
  Family fm = monicize(f);
  const ComponentFactor& comp = fiber.components.at(nu);
  const int n = comp.multiplicity;
  GfdValue out;
  if (n == 1) {
    out.method = GfdValue::Method::BranchExact;
    out.exact = true;
    out.value = PolyFraction(Poly::constant(1));
    return out;
  }
  Poly others = other_components(fm, comp);
  Poly pa = others.eval(Var::x, root);
  Poly fd = comp.poly.derivative(Var::x).eval(Var::x, root);
  if (pa.is_zero() || fd.is_zero()) fail_hypothesis("roots not distinct");
  uint32_t e1 = static_cast<uint32_t>(2 * n - 2);
  uint32_t e2 = static_cast<uint32_t>(static_cast<long>(n) * (n - 1));
  // Zd closed form first: gfd(a) = K [delta(a) P''(a) / alpha(a)]^(n-1).
  ZdSearchResult zr = zd_search(fm, comp);
  if (zr.zd) {
    Poly da = zr.zd->delta.eval(Var::x, root);
    Poly aa = zr.zd->alpha.eval(Var::x, root);
    if (!da.is_zero() && !aa.is_zero()) {
      out.method = GfdValue::Method::ZdClosedForm;
      out.exact = true;
      uint32_t e = static_cast<uint32_t>(n - 1);
      out.value = PolyFraction((da * pa).pow(e).scaled(lemma_constant(n)), aa.pow(e));
      return out;
    }
  }
  // Exact branch route.
  BranchSet bs = expand_until_separated(fm, BranchBackend::Exact, opt);
  auto s = branch_pair_product_exact(bs, root, n);
  if (!s) fail_hypothesis("irrational branch data in exact mode");
  out.method = GfdValue::Method::BranchExact;
  out.exact = true;
  out.value = PolyFraction(pa.pow(e1) * fd.pow(e2) * Poly::constant(*s));
  return out;
}

GfdValue gfd_leading_numeric(const Family& f, const SpecialFiber& fiber, size_t nu,
                             const Complex& root, const NumericOptions& opt) {
  Family fm = monicize(f);
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
  const ComponentFactor& comp = fiber.components.at(nu);
  const int n = comp.multiplicity;
  GfdValue out;
  out.exact = false;
  out.method = GfdValue::Method::BranchNumeric;
  if (n == 1) {
    out.value_num = Complex::of(Rational(1), prec);
    return out;
  }
  if (fm.uses_y()) fail_hypothesis("numeric backend requires specialized y");
  auto eval_num = [&](const Poly& p, const Complex& z) {
    long d = p.degree(Var::x);
    Complex acc(prec);
    for (long k = d; k >= 0; --k)
      acc = acc * z + Complex::of(p.coeff_of(Var::x, static_cast<uint32_t>(k)).constant_value(),
                                  prec);
    return acc;
  };
  Complex pa = eval_num(other_components(fm, comp), root);
  Complex fd = eval_num(comp.poly.derivative(Var::x), root);
  BranchSet bs = expand_until_separated(fm, BranchBackend::Numeric, opt);
  Complex s = branch_pair_product_numeric(bs, root, opt, n);
  Complex acc = s;
  for (int k = 0; k < 2 * n - 2; ++k) acc = acc * pa;
  for (long k = 0; k < static_cast<long>(n) * (n - 1); ++k) acc = acc * fd;
  out.value_num = acc;
  return out;
}

Theorem27Report verify_theorem_2_7(const Family& f, const SpecialFiber& fiber,
                                   bool run_numeric_route, const NumericOptions& opt) {
  Theorem27Report rep;
  rep.oracle = discriminant_series(f);
  rep.unit = f.lead_x().constant_value();
  Family fm = monicize(f);
  // Delta'_0 of the monic-normalized family.
  Poly lhs = rep.oracle.delta_prime_0.scaled(
      rep.unit.pow(2L * f.x_degree() - 2).inverse());
  rep.lhs = print_poly(lhs);

  // Distinctness hypothesis of Theorem 2.7.
  for (size_t i = 0; i < fiber.components.size(); ++i) {
    const Poly& fi = fiber.components[i].poly;
    if (fi.degree(Var::x) >= 2 && discriminant(fi, Var::x).is_zero())
      fail_hypothesis("roots not distinct");
    for (size_t j = i + 1; j < fiber.components.size(); ++j)
      if (!Poly::gcd(fi, fiber.components[j].poly).is_constant())
        fail_hypothesis("roots not distinct");
  }

  // Exact route: per-component products via the Zd closed form (resultants),
  // falling back to exact branches per root.
  bool exact_ok = true;
  PolyFraction rhs(Poly::constant(1));
  for (size_t nu = 0; nu < fiber.components.size() && exact_ok; ++nu) {
    const ComponentFactor& comp = fiber.components[nu];
    Theorem27Report::ComponentEntry entry;
    entry.component = print_poly(comp.poly);
    entry.multiplicity = comp.multiplicity;
    const int n = comp.multiplicity;
    if (n == 1) {
      entry.method = "simple";
      entry.product = "1";
      rep.components.push_back(std::move(entry));
      continue;
    }
    ZdSearchResult zr = zd_search(fm, comp);
    if (zr.zd) {
      Poly others = other_components(fm, comp);
      Poly res_delta = resultant(comp.poly, zr.zd->delta, Var::x);
      Poly res_others = resultant(comp.poly, others, Var::x);
      Poly res_alpha = resultant(comp.poly, zr.zd->alpha, Var::x);
      uint32_t e = static_cast<uint32_t>(n - 1);
      Rational k_nu = lemma_constant(n).pow(comp.degree());
      PolyFraction prod((res_delta * res_others).pow(e).scaled(k_nu), res_alpha.pow(e));
      rhs = rhs * prod;
      entry.method = "zd-closed-form";
      entry.product = prod.is_polynomial() ? print_poly(prod.as_polynomial())
                                           : "(" + print_poly(prod.num()) + ")/(" +
                                                 print_poly(prod.den()) + ")";
      // Per-root values where rational roots exist.
      if (comp.roots_exact) {
        std::vector<Rational> seen;
        for (const Rational& a : *comp.roots_exact) {
          if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
          seen.push_back(a);
          GfdValue g = gfd_leading(f, fiber, nu, a, opt);
          entry.per_root.push_back(g.str());
        }
      }
    } else if (comp.roots_exact && !fm.uses_y()) {
      entry.method = "branch-exact";
      std::vector<Rational> seen;
      PolyFraction prod(Poly::constant(1));
      try {
        for (const Rational& a : *comp.roots_exact) {
          if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
          seen.push_back(a);
          GfdValue g = gfd_leading(f, fiber, nu, a, opt);
          prod = prod * g.value;
          entry.per_root.push_back(g.str());
        }
        rhs = rhs * prod;
        entry.product = prod.is_polynomial() ? print_poly(prod.as_polynomial()) : "fraction";
      } catch (const Error&) {
        exact_ok = false;
        entry.method = "unavailable-exact";
      }
    } else {
      exact_ok = false;
      entry.method = "unavailable-exact";
    }
    rep.components.push_back(std::move(entry));
  }
  if (exact_ok) {
    Poly prod_disc = Poly::constant(1);
    for (const ComponentFactor& comp : fiber.components)
      prod_disc = prod_disc * discriminant(comp.poly, Var::x)
                                  .pow(static_cast<uint32_t>(comp.multiplicity));
    rhs = rhs * PolyFraction(prod_disc);
    for (size_t i = 0; i < fiber.components.size(); ++i) {
      for (size_t j = i + 1; j < fiber.components.size(); ++j) {
        long ni = fiber.components[i].multiplicity, nj = fiber.components[j].multiplicity;
        long e = 2 * (ni + nj - ni * nj);
        if (e == 0) continue;
        Poly r = resultant(fiber.components[i].poly, fiber.components[j].poly, Var::x);
        if (e > 0)
          rhs = rhs * PolyFraction(r.pow(static_cast<uint32_t>(e)));
        else
          rhs = rhs / PolyFraction(r.pow(static_cast<uint32_t>(-e)));
      }
    }
    rep.exact_run = true;
    rep.exact_equal = PolyFraction(lhs) == rhs;
    rep.rhs = rhs.is_polynomial() ? print_poly(rhs.as_polynomial())
                                  : "(" + print_poly(rhs.num()) + ")/(" +
                                        print_poly(rhs.den()) + ")";
  }

  if (run_numeric_route) {
    if (fm.uses_y()) fail_hypothesis("numeric backend requires specialized y");
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
    SpecialFiber fib = fiber;
    attach_numeric_roots(fib, opt);
    Complex acc = Complex::of(Rational(1), prec);
    Real ctol = Real::of(opt.cluster_tol, prec);
    for (size_t nu = 0; nu < fib.components.size(); ++nu) {
      const ComponentFactor& comp = fib.components[nu];
      if (comp.multiplicity == 1) continue;
      std::vector<Complex> distinct;
      for (const Complex& r : *comp.roots_numeric) {
        bool seen = false;
        for (const Complex& sdone : distinct)
          if ((r - sdone).abs() <= ctol) seen = true;
        if (!seen) distinct.push_back(r);
      }
      for (const Complex& a : distinct) {
        GfdValue g = gfd_leading_numeric(f, fib, nu, a, opt);
        acc = acc * g.value_num;
      }
    }
    Poly prod_disc = Poly::constant(1);
    for (const ComponentFactor& comp : fib.components)
      prod_disc = prod_disc * discriminant(comp.poly, Var::x)
                                  .pow(static_cast<uint32_t>(comp.multiplicity));
    acc = acc * Complex::of(prod_disc.constant_value(), prec);
    for (size_t i = 0; i < fib.components.size(); ++i) {
      for (size_t j = i + 1; j < fib.components.size(); ++j) {
        long ni = fib.components[i].multiplicity, nj = fib.components[j].multiplicity;
        long e = 2 * (ni + nj - ni * nj);
        if (e == 0) continue;
        Poly r = resultant(fib.components[i].poly, fib.components[j].poly, Var::x);
        Complex rv = Complex::of(r.constant_value(), prec);
        Complex p = Complex::of(Rational(1), prec);
        for (long k = 0; k < std::labs(e); ++k) p = p * rv;
        acc = e > 0 ? acc * p : acc / p;
      }
    }
    Complex lhs_num = Complex::of(lhs.constant_value(), prec);
    Real rel = (lhs_num - acc).abs() / max(Real::of(1L, prec), lhs_num.abs());
    rep.numeric_run = true;
    rep.numeric_rel_error = rel.to_double();
    rep.numeric_ok = rel <= Real::of(Rational(1, 1000000000L), prec);
  }
  return rep;
}

}  // namespace duallim
