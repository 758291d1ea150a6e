#include <doctest.h>

#include "duallim/disc_limit.hpp"
#include "duallim/errors.hpp"
#include "duallim/newton_puiseux.hpp"
#include "duallim/printer.hpp"
#include "duallim/type_general.hpp"
#include "duallim/vertex_zd.hpp"
#include "testutil.hpp"

using namespace duallim;
using testutil::F;
using testutil::Gen;
using testutil::P;

namespace {

SpecialFiber fiber_of(const Family& f) {
  SpecialFiber fb = split_special_fiber(f, {});
  attach_exact_roots(fb);
  return fb;
}

long tau_of(const Family& f) { return general_type(f, fiber_of(f)).general_type; }

}  // namespace

TEST_SUITE("type_general") {

TEST_CASE("paper types for the three kinds") {
  CHECK(tau_of(F("x^2*(x+1) + (x+2)*t")) == 1);        // Prop 4.3
  CHECK(tau_of(F("x^3 + x^2 + 2*x*t - t^2")) == 2);    // Prop 4.4
  CHECK(tau_of(F("x^2 + x^3 + 2*x*t + t^2 + 2*t^3")) == 3);  // Prop 4.5
}

TEST_CASE("Zd family type equals the decomposition order") {
  // (x + t)^2 + t^3: Zd of order 3, so tau = 3.
  Family f = F("x^2 + 2*x*t + t^2 + t^3");
  CHECK(tau_of(f) == 3);
  // Prop 4.6 linkage at small scale.
  Gen g(2020);
  int done = 0;
  for (int k = 0; k < 40 && done < 8; ++k) {
    long n_nu = g.int_in(2, 3);
    long n = g.int_in(2, 4);
    Rational a = g.rational(2);
    Poly lin = P("x") - Poly::constant(a);
    // B = (x - a) + beta_1 t + ... + beta_{n-1} t^{n-1}, F = B^n_nu + delta t^n.
    std::vector<Poly> bc(static_cast<size_t>(n), Poly());
    bc[0] = lin;
    for (long i = 1; i < n; ++i) bc[static_cast<size_t>(i)] = Poly::constant(g.rational(2));
    Family b(bc, 8);
    Rational d0 = g.nonzero_rational(3);
    Family fam = b.pow_truncated(static_cast<uint32_t>(n_nu))
                     .add_term(static_cast<int>(n), Poly::constant(d0));
    if (!discriminant_nonzero_to_trunc(fam)) continue;
    SpecialFiber fb = fiber_of(fam);
    REQUIRE(fb.components.size() == 1);
    ZdSearchResult zr = zd_search(fam, fb.components[0]);
    if (!zr.zd || zr.zd->order != n) continue;  // higher-order coincidence; skip
    ComponentType ct = type_of(fam, fb.components[0]);
    CHECK(ct.tau_nu == n);
    ++done;
  }
  CHECK(done >= 5);
}

TEST_CASE("example 4.9 types over Q[y]") {
  // (a) x^3 + F_1 t, x does not divide F_1.
  CHECK(tau_of(F("x^3 + (y+1)*t", 4)) == 1);
  // (b) x^3 + x C_1 t.
  CHECK(tau_of(F("x^3 + x*(y+1)*t", 4)) == 1);
  // (c) x^3 + x C_2 t^2 + F_3 t^3.
  CHECK(tau_of(F("x^3 + x*(y+1)*t^2 + y*t^3", 4)) == 3);
  // (d) x^2 y + F_1 t.
  CHECK(tau_of(F("x^2*y + (y+1)*t", 4)) == 1);
  // (e) x^2 y + x C_1 t + F_2 t^2.
  CHECK(tau_of(F("x^2*y + x*(y+2)*t + t^2", 4)) == 2);
}

TEST_CASE("simple components have type 0 by the empty-max convention") {
  Family f = F("x^2 - 1 + x*t");
  TypeReport rep = general_type(f, fiber_of(f));
  REQUIRE(rep.per_component.size() == 1);
  CHECK(rep.per_component[0].tau_nu == 0);
  CHECK(rep.per_component[0].empty_max);
  CHECK(rep.general_type == 0);
}

TEST_CASE("truncation sufficiency pinned examples") {
  {
    // tau = 3; the t^4 perturbation x t^4 leaves Delta
    // = -4t^3 + 4t^5 + t^8 with Delta'_0 = -4 unchanged.
    Family f = F("x^2 + 2*x*t + t^2 + t^3");
    Family perturbed = f.add_term(4, P("x"));
    DiscriminantLimit d = discriminant_series(perturbed);
    CHECK(print_series_t(d.delta_prime.mul_var(Var::t, static_cast<uint32_t>(d.alpha))) ==
          "-4*t^3 + 4*t^5 + t^8");
    CHECK(d.alpha == 3);
    CHECK(d.delta_prime_0 == P("-4"));
    SufficiencyReport rep =
        truncation_sufficiency_check(f, fiber_of(f), 10, 42);
    CHECK(rep.tau == 3);
    CHECK(rep.ok());
  }
  {
    Family f = F("x^3 + x^2 + t*x + 2*t");
    SufficiencyReport rep = truncation_sufficiency_check(f, fiber_of(f), 30, 7);
    CHECK(rep.tau == 1);
    CHECK(rep.ok());
    CHECK(rep.unchanged == 30);
  }
  {
    Family f = F("x^3 + x^2 + t*x + 2*t");
    SufficiencyReport rep = truncation_sufficiency_check(f, fiber_of(f), 0, 1);
    CHECK(rep.trials == 0);
    CHECK(rep.ok());
  }
}

TEST_CASE("symbolic and branch type computations agree") {
  NumericOptions opt;
  Gen g(2121);
  int done = 0;
  for (int k = 0; k < 60 && done < 10; ++k) {
    Poly A = g.poly_nonzero_at_0(2);
    Poly B = g.poly_nonzero_at_0(2);
    if (A.degree(Var::x) >= 1 && discriminant(A, Var::x).is_zero()) continue;
    Family f({A.mul_var(Var::x, 2), B, g.poly(1)}, 5);
    if (!f.monic_normalizable()) continue;
    SpecialFiber fb = fiber_of(f);
    const ComponentFactor* cx = nullptr;
    for (const ComponentFactor& c : fb.components)
      if (c.poly == P("x")) cx = &c;
    if (!cx) continue;
    ComponentType sym;
    try {
      sym = type_of(f, *cx, opt);
    } catch (const Error&) {
      continue;
    }
    if (sym.method != "symbolic") continue;
    // Force the branch route and compare.
    bool has_pair = false;
    BranchSet bs;
    try {
      bs = expand_until_separated(f, BranchBackend::Numeric, opt);
    } catch (const Error&) {
      continue;
    }
    SeparationOrders so = separation_orders(bs, opt);
    Rational best(0);
    const mpfr_prec_t prec = 256;
    for (const auto& [key, m] : so.orders) {
      auto zero_center = [&](int i) {
        PuiseuxCoeff c = bs.branches[static_cast<size_t>(i)].center();
        Complex cv = c.exact ? Complex::of(c.q, prec) : c.c;
        return cv.abs().to_double() < 1e-40;
      };
      if (zero_center(key.first) && zero_center(key.second)) {
        has_pair = true;
        best = std::max(best, m);
      }
    }
    if (!has_pair) continue;
    CHECK(sym.m_nu == best);
    ++done;
  }
  CHECK(done >= 6);
}

}  // TEST_SUITE
