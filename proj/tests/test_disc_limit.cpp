#include <doctest.h>

#include "duallim/disc_limit.hpp"
#include "duallim/errors.hpp"
#include "duallim/printer.hpp"
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

size_t index_of(const SpecialFiber& fb, const Poly& p) {
  for (size_t i = 0; i < fb.components.size(); ++i)
    if (fb.components[i].poly == p) return i;
  REQUIRE(false);
  return 0;
}

}  // namespace

TEST_SUITE("disc_limit") {

TEST_CASE("discriminant series examples") {
  DiscriminantLimit d1 = discriminant_series(F("x^3 + x^2 + t*x + 2*t"));
  CHECK(d1.alpha == 1);
  CHECK(print_series_t(d1.delta_prime) == "-8 - 71*t - 4*t^2");
  CHECK(d1.delta_prime_0 == P("-8"));
  CHECK(d1.stable);

  DiscriminantLimit d2 = discriminant_series(F("x^3 + x^2 + 2*x*t - t^2"));
  CHECK(d2.alpha == 2);
  CHECK(d2.delta_prime_0 == P("8"));

  DiscriminantLimit d3 = discriminant_series(F("x^2 - 1"));
  CHECK(d3.alpha == 0);
  CHECK(d3.delta_prime_0 == P("4"));
}

TEST_CASE("discriminant vanishing is refused") {
  // (x+t)^2 has identically vanishing discriminant.
  CHECK_THROWS_WITH_AS((void)discriminant_series(F("x^2 + 2*x*t + t^2")),
                       "discriminant vanishes to truncation order", Error);
  // Nonconstant leading coefficient is rejected by the oracle.
  CHECK_THROWS_AS((void)discriminant_series(F("x^2*y + x*t")), Error);
}

TEST_CASE("gfd leading examples") {
  // First kind, f_nu = x, a = 0: -4 A(0) B(0) = -8.
  Family f1 = F("x^2*(x+1) + (x+2)*t");
  SpecialFiber fb1 = fiber_of(f1);
  size_t nux = index_of(fb1, P("x"));
  GfdValue g1 = gfd_leading(f1, fb1, nux, Rational(0));
  CHECK(g1.exact);
  CHECK(g1.value == PolyFraction(P("-8")));

  // Simple component: value 1.
  size_t nua = index_of(fb1, P("x+1"));
  GfdValue g2 = gfd_leading(f1, fb1, nua, Rational(-1));
  CHECK(g2.value == PolyFraction(P("1")));

  // (x+t)^2 + t^3 at the double root 0: (s1 - s2)_0^2 = -4.
  Family f3 = F("x^2 + 2*x*t + t^2 + t^3");
  SpecialFiber fb3 = fiber_of(f3);
  GfdValue g3 = gfd_leading(f3, fb3, index_of(fb3, P("x")), Rational(0));
  CHECK(g3.value == PolyFraction(P("-4")));
  CHECK(g3.method == GfdValue::Method::ZdClosedForm);
}

TEST_CASE("theorem 2.7 pinned examples") {
  {
    Family f = F("x^3 + x^2 + t*x + 2*t");
    Theorem27Report rep = verify_theorem_2_7(f, fiber_of(f));
    CHECK(rep.exact_run);
    CHECK(rep.exact_equal);
    CHECK(rep.lhs == "-8");
  }
  {
    Family f = F("x^2 + 2*x*t + t^2 + t^3");
    Theorem27Report rep = verify_theorem_2_7(f, fiber_of(f));
    CHECK(rep.exact_equal);
    CHECK(rep.lhs == "-4");
  }
  {
    Family f = F("x^2 - 1");
    Theorem27Report rep = verify_theorem_2_7(f, fiber_of(f));
    CHECK(rep.exact_equal);
    CHECK(rep.lhs == "4");
  }
}

TEST_CASE("theorem 2.7 with numeric branch route") {
  Family f = F("x^2*(x-1)^2*(x+2) + (x^2+3)*t + x*t^2");
  SpecialFiber fb = fiber_of(f);
  Theorem27Report rep = verify_theorem_2_7(f, fb, /*run_numeric_route=*/true);
  CHECK(rep.exact_run);
  CHECK(rep.exact_equal);
  CHECK(rep.numeric_run);
  CHECK(rep.numeric_ok);
  CHECK(rep.numeric_rel_error < 1e-9);
}

TEST_CASE("oracle stability under truncation increase") {
  Gen g(1616);
  int done = 0;
  for (int k = 0; k < 40 && done < 12; ++k) {
    Poly A = g.poly_nonzero_at_0(2);
    Poly B = g.poly_nonzero_at_0(2);
    Family f({A.mul_var(Var::x, 2), B, g.poly(1)}, 6);
    if (!f.monic_normalizable()) continue;
    DiscriminantLimit base;
    try {
      base = discriminant_series(f);
    } catch (const Error&) {
      continue;
    }
    for (int extra : {1, 2}) {
      DiscriminantLimit d = discriminant_series(f.with_trunc(6 + extra));
      CHECK(d.alpha == base.alpha);
      CHECK(d.delta_prime_0 == base.delta_prime_0);
    }
    CHECK(base.stable);
    ++done;
  }
  CHECK(done >= 8);
}

TEST_CASE("scaling law") {
  Gen g(1717);
  int done = 0;
  for (int k = 0; k < 30 && done < 10; ++k) {
    Poly f0 = g.nonzero_poly(3);
    Poly f1 = g.poly(2);
    Family f({f0, f1}, 5);
    if (!f.monic_normalizable() || f.x_degree() < 1) continue;
    Rational c = g.nonzero_rational();
    DiscriminantLimit a, b;
    try {
      a = discriminant_series(f);
      b = discriminant_series(f.scaled(c));
    } catch (const Error&) {
      continue;
    }
    CHECK(b.alpha == a.alpha);
    CHECK(b.delta_prime_0 == a.delta_prime_0.scaled(c.pow(2L * f.x_degree() - 2)));
    ++done;
  }
  CHECK(done >= 6);
}

TEST_CASE("theorem 2.7 over Q[y]") {
  // Components x^2 and (x - y): distinct roots for generic y.
  Family f = F("x^2*(x - y) + (x + y + 2)*t + t^2", 4);
  SpecialFiber fb = fiber_of(f);
  Theorem27Report rep = verify_theorem_2_7(f, fb);
  CHECK(rep.exact_run);
  CHECK(rep.exact_equal);
}

TEST_CASE("roots not distinct is refused") {
  Family f = F("x^2*(x+1) + t");
  SpecialFiber fb;
  fb.unit_constant = Rational(1);
  fb.unit_content = P("1");
  fb.components.push_back({P("x"), 1, std::nullopt, std::nullopt});
  fb.components.push_back({P("x^2+x"), 1, std::nullopt, std::nullopt});  // shares root 0
  CHECK_THROWS_WITH_AS((void)verify_theorem_2_7(f, fb), "roots not distinct", Error);
}

}  // TEST_SUITE
