#include "duallim/vertex_zd.hpp"

#include <algorithm>
#include <sstream>

#include "duallim/disc_limit.hpp"
#include "duallim/errors.hpp"
#include "duallim/newton_puiseux.hpp"
#include "duallim/printer.hpp"

namespace duallim {

namespace {

Poly eval_x0(const Poly& p) { return p.eval(Var::x, Rational(0)); }

bool squarefree_in_x(const Poly& p) {
  if (p.is_zero()) return false;
  if (p.degree(Var::x) <= 0) return true;
  return !discriminant(p, Var::x).is_zero();
}

Rational lemma_constant(int n) {
  // (-1)^(n(n-1)/2) n^n
  Rational k(static_cast<long>(n));
  Rational v = k.pow(n);
  if (((static_cast<long>(n) * (n - 1) / 2) % 2) != 0) v = -v;
  return v;
}

Family scale_family(const Family& f, const Poly& a) {
  std::vector<Poly> cs;
  cs.reserve(static_cast<size_t>(f.trunc()) + 1);
  for (int i = 0; i <= f.trunc(); ++i) cs.push_back(f.coeff(i) * a);
  return Family(std::move(cs), f.trunc());
}

std::vector<PolyFraction> mul_series(const std::vector<PolyFraction>& a,
                                     const std::vector<PolyFraction>& b, int cap) {
  std::vector<PolyFraction> r(static_cast<size_t>(cap) + 1);
  for (size_t i = 0; i < a.size() && static_cast<int>(i) <= cap; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size() && static_cast<int>(i + j) <= cap; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  return r;
}

std::vector<PolyFraction> pow_series(const std::vector<PolyFraction>& b, int n, int cap) {
  std::vector<PolyFraction> acc{PolyFraction(Poly::constant(1))};
  for (int i = 0; i < n; ++i) acc = mul_series(acc, b, cap);
  return acc;
}

// Smallest e >= 0 with den | R^e, or -1 when no power works.
long r_power_of(const Poly& den, const Poly& R) {
  if (den.is_constant()) return 0;
  long cap = den.total_degree() + 1;
  Poly re = Poly::constant(1);
  for (long e = 1; e <= cap; ++e) {
    re = re * R;
    if (Poly::try_divide(re, den)) return e;
  }
  return -1;
}

}  // namespace

KindPattern classify_kind(const Family& f) {
  std::vector<KindPattern> shaped;

  // First kind: F = x^2 A + B t + O(t^2).
  {
    auto A = Poly::try_divide(f.f0(), Poly::variable(Var::x, 2));
    if (A) {
      KindPattern p;
      p.shape = Kind::First;
      Poly B = f.coeff(1);
      p.parts["A"] = *A;
      p.parts["B"] = B;
      p.flags = {{"A(0) != 0", !eval_x0(*A).is_zero()},
                 {"B(0) != 0", !eval_x0(B).is_zero()},
                 {"A square-free", squarefree_in_x(*A)}};
      p.kind = p.all_flags() ? Kind::First : Kind::Other;
      shaped.push_back(std::move(p));
    }
  }
  // Second kind: F = x^2 A + 2x B t + C t^2 + O(t^3).
  {
    auto A = Poly::try_divide(f.f0(), Poly::variable(Var::x, 2));
    auto B2 = f.coeff(1).is_zero()
                  ? std::optional<Poly>(Poly())
                  : Poly::try_divide(f.coeff(1), Poly::variable(Var::x).scaled(Rational(2)));
    if (A && B2) {
      KindPattern p;
      p.shape = Kind::Second;
      Poly C = f.coeff(2);
      p.parts["A"] = *A;
      p.parts["B"] = *B2;
      p.parts["C"] = C;
      Poly A0 = eval_x0(*A), B0 = eval_x0(*B2), C0 = eval_x0(C);
      p.flags = {{"A(0) != 0", !A0.is_zero()},
                 {"B(0)^2 - A(0)C(0) != 0", !(B0 * B0 - A0 * C0).is_zero()},
                 {"A square-free", squarefree_in_x(*A)}};
      p.kind = p.all_flags() ? Kind::Second : Kind::Other;
      shaped.push_back(std::move(p));
    }
  }
  // Third kind: F = x^2 a0 + x^3 a1 + 2x b0 t + x^2 b1 t + c0 t^2 + x c1 t^2
  //             + d1 t^3 + O(t^4), scalars in Q[y].
  {
    const Poly& f0 = f.f0();
    const Poly& f1 = f.coeff(1);
    const Poly& f2 = f.coeff(2);
    const Poly& f3 = f.coeff(3);
    Poly a0 = f0.coeff_of(Var::x, 2), a1 = f0.coeff_of(Var::x, 3);
    Poly b0 = f1.coeff_of(Var::x, 1).scaled(Rational(1, 2)), b1 = f1.coeff_of(Var::x, 2);
    Poly c0 = f2.coeff_of(Var::x, 0), c1 = f2.coeff_of(Var::x, 1);
    Poly d1 = f3.coeff_of(Var::x, 0);
    bool shape_ok =
        f0 == a0.mul_var(Var::x, 2) + a1.mul_var(Var::x, 3) &&
        f1 == b0.scaled(Rational(2)).mul_var(Var::x, 1) + b1.mul_var(Var::x, 2) &&
        f2 == c0 + c1.mul_var(Var::x, 1) && f3 == d1;
    if (shape_ok) {
      KindPattern p;
      p.shape = Kind::Third;
      p.parts = {{"a0", a0}, {"a1", a1}, {"b0", b0}, {"b1", b1},
                 {"c0", c0}, {"c1", c1}, {"d1", d1}};
      Poly bracket = -(a1 * b0.pow(3)) + b1 * b0.pow(2) * a0 - c1 * b0 * a0.pow(2) +
                     d1 * a0.pow(3);
      p.flags = {{"b0^2 - a0 c0 = 0", (b0 * b0 - a0 * c0).is_zero()},
                 {"a0 != 0", !a0.is_zero()},
                 {"-a1 b0^3 + b1 b0^2 a0 - c1 b0 a0^2 + d1 a0^3 != 0", !bracket.is_zero()}};
      p.kind = p.all_flags() ? Kind::Third : Kind::Other;
      shaped.push_back(std::move(p));
    }
  }
  for (const KindPattern& p : shaped)
    if (p.kind != Kind::Other) return p;
  if (!shaped.empty()) return shaped.front();
  return KindPattern{};
}

void ZdDecomposition::verify(const Family& monic_family) const {
  if (order < 1 || static_cast<int>(betas.size()) != order)
    fail_internal("Zd decomposition with inconsistent order");
  if (!Poly::gcd(alpha * delta, f_nu).is_constant())
    fail_internal("Zd decomposition: gcd(alpha delta, f_nu) != 1");
  Family lhs = scale_family(monic_family, alpha);
  // B(t) = f_nu beta_0 + beta_1 t + ... + beta_{n-1} t^{n-1}
  std::vector<Poly> bc(static_cast<size_t>(order));
  bc[0] = f_nu * betas[0];
  for (int k = 1; k < order; ++k) bc[static_cast<size_t>(k)] = betas[static_cast<size_t>(k)];
  Family b(std::move(bc), monic_family.trunc());
  Family bn = b.pow_truncated(static_cast<uint32_t>(n_nu));
  for (int k = 0; k < order; ++k)
    if (lhs.coeff(k) != bn.coeff(k)) fail_internal("Zd decomposition does not match alpha F");
  if (lhs.coeff(order) - bn.coeff(order) != delta)
    fail_internal("Zd decomposition delta mismatch");
}

ZdSearchResult zd_search(const Family& f, const ComponentFactor& comp) {
  ZdSearchResult out;
  if (comp.multiplicity <= 1) {
    out.failure = "Zd is defined for components with n_nu > 1";
    return out;
  }
  if (!f.monic_normalizable()) {
    out.failure = "family is not monic-normalizable";
    return out;
  }
  Family fm = f.scaled(f.lead_x().constant_value().inverse());
  const int n = comp.multiplicity;
  const Poly& fnu = comp.poly;
  auto rq = Poly::try_divide(fm.f0(), fnu.pow(static_cast<uint32_t>(n)));
  if (!rq) {
    out.failure = "component^multiplicity does not divide F_0";
    return out;
  }
  Poly R = *rq;
  Poly alpha_base = R.pow(static_cast<uint32_t>(n - 1));
  std::vector<PolyFraction> b{PolyFraction(fnu * R)};
  PolyFraction divisor(Poly::constant(n) * (fnu * R).pow(static_cast<uint32_t>(n - 1)));
  int order = -1;
  PolyFraction delta_frac;
  const int T = fm.trunc();
  for (int k = 1; k <= T; ++k) {
    std::vector<PolyFraction> bn = pow_series(b, n, k);
    PolyFraction residual = PolyFraction(alpha_base * fm.coeff(k)) -
                            (k < static_cast<int>(bn.size()) ? bn[static_cast<size_t>(k)]
                                                             : PolyFraction());
    if (residual.is_zero()) {
      b.push_back(PolyFraction());
      continue;
    }
    PolyFraction q = residual / divisor;
    if (r_power_of(q.den(), R) >= 0) {
      b.push_back(q);
      continue;
    }
    order = k;
    delta_frac = residual;
    break;
  }
  if (order < 0) {
    out.failure = "lift exceeded truncation";
    return out;
  }
  long E = 0;
  for (size_t k = 1; k < b.size(); ++k) {
    long e = r_power_of(b[k].den(), R);
    if (e < 0) fail_internal("Zd lift denominator is not an R power");
    E = std::max(E, e);
  }
  Poly rE = R.pow(static_cast<uint32_t>(E));
  Poly rnE = R.pow(static_cast<uint32_t>(n * E));
  ZdDecomposition zd;
  zd.f_nu = fnu;
  zd.n_nu = n;
  zd.order = order;
  zd.alpha = alpha_base * rnE;
  zd.betas.resize(static_cast<size_t>(order));
  zd.betas[0] = R * rE;
  for (int k = 1; k < order; ++k) {
    PolyFraction scaled = b[static_cast<size_t>(k)] * PolyFraction(rE);
    if (!scaled.is_polynomial()) fail_internal("Zd beta did not clear its denominator");
    zd.betas[static_cast<size_t>(k)] = scaled.as_polynomial();
  }
  PolyFraction delta_scaled = delta_frac * PolyFraction(rnE);
  if (!delta_scaled.is_polynomial()) fail_internal("Zd delta did not clear its denominator");
  zd.delta = delta_scaled.as_polynomial();
  if (!Poly::gcd(zd.alpha * zd.delta, fnu).is_constant()) {
    out.failure = "no Zd found by this strategy";
    return out;
  }
  zd.verify(fm);
  out.zd = std::move(zd);
  return out;
}

PolyFraction lemma_3_6_value(const ZdDecomposition& zd, const Family& monic_family) {
  if (zd.f_nu != Poly::variable(Var::x))
    fail_hypothesis("lemma 3.6 requires f_nu = x (recenter first)");
  Poly others = exact_divide(monic_family.f0(),
                             Poly::variable(Var::x, static_cast<uint32_t>(zd.n_nu)));
  Poly d0 = eval_x0(zd.delta);
  Poly a0 = eval_x0(zd.alpha);
  Poly p0 = eval_x0(others);
  if (a0.is_zero() || d0.is_zero())
    fail_hypothesis("hypothesis violation: alpha(0) delta_n(0) = 0");
  uint32_t e = static_cast<uint32_t>(zd.n_nu - 1);
  Poly num = (d0 * p0).pow(e).scaled(lemma_constant(zd.n_nu));
  return PolyFraction(num, a0.pow(e));
}

std::string VertexReport::value_str() const {
  if (!exact) return value_num.str(12);
  if (value.is_polynomial()) return print_poly(value.as_polynomial());
  return "(" + print_poly(value.num()) + ") / (" + print_poly(value.den()) + ")";
}

namespace {

// Every closed form runs on the monic-normalized family and is scaled back
// by unit^(2n'-2).
Rational unit_scale(const Family& f) {
  if (!f.monic_normalizable()) fail_hypothesis("hypothesis violated: x-leading coefficient of F_0 must be a nonzero constant");
  Rational u = f.lead_x().constant_value();
  return u.pow(2L * f.x_degree() - 2);
}

}  // namespace

VertexReport vertex_closed_form(const Family& f, const KindPattern& p) {
  if (p.kind == Kind::Other) {
    std::string flag = p.first_failed_flag();
    fail_hypothesis(flag.empty() ? "family matches no Zeuthen kind"
                                 : "hypothesis violated: " + flag);
  }
  Rational scale = unit_scale(f);
  Family fm = f.scaled(f.lead_x().constant_value().inverse());
  KindPattern pm = classify_kind(fm);
  if (pm.kind != p.kind) fail_internal("kind changed under monic normalization");
  VertexReport v;
  v.method = VertexReport::Method::ClosedFormKind;
  v.exact = true;
  Poly val;
  if (pm.kind == Kind::First) {
    Poly A0 = eval_x0(pm.parts.at("A")), B0 = eval_x0(pm.parts.at("B"));
    val = (B0 * A0.pow(3)).scaled(Rational(-4));
    v.factors = {{"-4 B(0) A(0)^3", print_poly(val), 1}};
  } else if (pm.kind == Kind::Second) {
    Poly A0 = eval_x0(pm.parts.at("A")), B0 = eval_x0(pm.parts.at("B")),
         C0 = eval_x0(pm.parts.at("C"));
    val = ((B0 * B0 - A0 * C0) * A0.pow(2)).scaled(Rational(4));
    v.factors = {{"4 (B(0)^2 - A(0)C(0)) A(0)^2", print_poly(val), 1}};
  } else {
    const Poly &a0 = pm.parts.at("a0"), &a1 = pm.parts.at("a1"), &b0 = pm.parts.at("b0"),
               &b1 = pm.parts.at("b1"), &c1 = pm.parts.at("c1"), &d1 = pm.parts.at("d1");
    Poly bracket = -(a1 * b0.pow(3)) + b1 * b0.pow(2) * a0 - c1 * b0 * a0.pow(2) +
                   d1 * a0.pow(3);
    val = bracket.scaled(Rational(-4));
    v.factors = {{"-4 (-a1 b0^3 + b1 b0^2 a0 - c1 b0 a0^2 + d1 a0^3)", print_poly(val), 1}};
  }
  v.value = PolyFraction(val.scaled(scale));
  if (v.value.is_zero()) fail_internal("closed-form vertex is zero despite hypotheses");
  return v;
}

VertexReport vertex_zd_theorem_3_7(const Family& f, const SpecialFiber& fiber,
                                   const std::map<size_t, ZdDecomposition>& decomps) {
  Rational scale = unit_scale(f);
  VertexReport v;
  v.method = VertexReport::Method::ZdTheorem37;
  v.exact = true;
  PolyFraction acc(Poly::constant(1));
  Rational c(1);
  for (size_t nu = 0; nu < fiber.components.size(); ++nu) {
    const ComponentFactor& comp = fiber.components[nu];
    int n = comp.multiplicity;
    if (n == 1) continue;
    auto it = decomps.find(nu);
    if (it == decomps.end())
      fail_hypothesis("missing Zd decomposition for multiple component " +
                      print_poly(comp.poly));
    const ZdDecomposition& zd = it->second;
    Rational k_nu = lemma_constant(n).pow(comp.degree());
    c *= k_nu;
    Poly others = exact_divide(f.scaled(f.lead_x().constant_value().inverse()).f0(),
                               comp.poly.pow(static_cast<uint32_t>(n)));
    Poly res_delta = resultant(comp.poly, zd.delta, Var::x);
    Poly res_others = resultant(comp.poly, others, Var::x);
    Poly res_alpha = resultant(comp.poly, zd.alpha, Var::x);
    uint32_t e = static_cast<uint32_t>(n - 1);
    acc = acc * PolyFraction((res_delta * res_others).pow(e), res_alpha.pow(e));
    v.factors.push_back({"res(" + print_poly(comp.poly) + ", delta)", print_poly(res_delta),
                         n - 1});
    v.factors.push_back({"res(" + print_poly(comp.poly) + ", prod f_nu')",
                         print_poly(res_others), n - 1});
    v.factors.push_back({"res(" + print_poly(comp.poly) + ", alpha)", print_poly(res_alpha),
                         -(n - 1)});
  }
  for (size_t i = 0; i < fiber.components.size(); ++i) {
    for (size_t j = i + 1; j < fiber.components.size(); ++j) {
      long ni = fiber.components[i].multiplicity, nj = fiber.components[j].multiplicity;
      long e = 2 * (ni + nj - ni * nj);
      if (e == 0) continue;
      Poly r = resultant(fiber.components[i].poly, fiber.components[j].poly, Var::x);
      if (e > 0)
        acc = acc * PolyFraction(r.pow(static_cast<uint32_t>(e)));
      else
        acc = acc / PolyFraction(r.pow(static_cast<uint32_t>(-e)));
      v.factors.push_back({"res(" + print_poly(fiber.components[i].poly) + ", " +
                               print_poly(fiber.components[j].poly),
                           print_poly(r), e});
    }
  }
  v.c_constant = c;
  v.factors.push_back({"c", c.str(), 1});
  v.value = acc * PolyFraction(Poly::constant(c * scale));
  if (v.value.is_zero()) fail_internal("Theorem 3.7 vertex is zero");
  return v;
}

VertexReport vertex_branch_numeric(const Family& f, const SpecialFiber& fiber,
                                   const NumericOptions& opt) {
  Rational scale = unit_scale(f);
  Family fm = f.scaled(f.lead_x().constant_value().inverse());
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
  SpecialFiber fib = fiber;
  attach_numeric_roots(fib, opt);
  VertexReport v;
  v.method = VertexReport::Method::BranchNumeric;
  v.exact = false;
  Complex acc = Complex::of(Rational(1), prec);
  for (size_t nu = 0; nu < fib.components.size(); ++nu) {
    const ComponentFactor& comp = fib.components[nu];
    if (comp.multiplicity == 1) continue;
    std::vector<Complex> distinct;
    for (const Complex& r : *comp.roots_numeric) {
      bool seen = false;
      for (const Complex& s : distinct)
        if ((r - s).abs() <= Real::of(opt.cluster_tol, prec)) seen = true;
      if (!seen) distinct.push_back(r);
    }
    for (const Complex& a : distinct) {
      GfdValue g = gfd_leading_numeric(fm, fib, nu, a, opt);
      acc = acc * g.value_num;
      v.factors.push_back({"gfd(" + print_poly(comp.poly) + " at root)", g.value_num.str(10), 1});
    }
  }
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
      v.factors.push_back({"res(" + print_poly(fib.components[i].poly) + ", " +
                               print_poly(fib.components[j].poly),
                           print_poly(r), e});
    }
  }
  v.value_num = acc * Complex::of(scale, prec);
  return v;
}

Corollary38Report corollary_3_8_check(const Family& f, const SpecialFiber& fiber,
                                      VertexReport& v, const NumericOptions& opt) {
  DiscriminantLimit oracle = discriminant_series(f);
  Poly prod_disc = Poly::constant(1);
  for (const ComponentFactor& comp : fiber.components)
    prod_disc = prod_disc * discriminant(comp.poly, Var::x).pow(
                                static_cast<uint32_t>(comp.multiplicity));
  Corollary38Report rep;
  rep.lhs = print_poly(oracle.delta_prime_0);
  if (v.exact) {
    rep.exact = true;
    PolyFraction rhs = PolyFraction(prod_disc) * v.value;
    rep.rhs = v.exact ? (rhs.is_polynomial() ? print_poly(rhs.as_polynomial()) : "non-polynomial")
                      : "";
    rep.ok = PolyFraction(oracle.delta_prime_0) == rhs;
  } else {
    rep.exact = false;
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
    if (oracle.delta_prime_0.uses(Var::y))
      fail_hypothesis("numeric vertex check requires specialized y");
    Complex lhs = Complex::of(oracle.delta_prime_0.constant_value(), prec);
    Complex rhs = Complex::of(prod_disc.constant_value(), prec) * v.value_num;
    rep.rhs = rhs.str(12);
    Real rel = (lhs - rhs).abs() / max(Real::of(1L, prec), lhs.abs());
    rep.rel_error = rel.to_double();
    rep.ok = rel <= Real::of(Rational(1, 1000000000L), prec);
  }
  v.oracle_verified = rep.ok;
  return rep;
}

VertexReport compute_vertex(const Family& f, const SpecialFiber& fiber, bool allow_numeric,
                            const NumericOptions& opt) {
  std::optional<VertexReport> v;
  KindPattern p = classify_kind(f);
  if (p.kind != Kind::Other) {
    v = vertex_closed_form(f, p);
  } else {
    std::map<size_t, ZdDecomposition> decomps;
    bool all = true;
    for (size_t nu = 0; nu < fiber.components.size(); ++nu) {
      if (fiber.components[nu].multiplicity == 1) continue;
      ZdSearchResult r = zd_search(f, fiber.components[nu]);
      if (r.zd)
        decomps.emplace(nu, std::move(*r.zd));
      else
        all = false;
    }
    if (all) {
      v = vertex_zd_theorem_3_7(f, fiber, decomps);
    } else if (allow_numeric && !f.uses_y()) {
      v = vertex_branch_numeric(f, fiber, opt);
    } else {
      fail_hypothesis("cannot certify ver route");
    }
  }
  try {
    corollary_3_8_check(f, fiber, *v, opt);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Internal) throw;
    v->up_to_constant = true;  // oracle unavailable for this input
  }
  return *v;
}

}  // namespace duallim
