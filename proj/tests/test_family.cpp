#include <doctest.h>

#include "duallim/errors.hpp"
#include "duallim/family.hpp"
#include "duallim/printer.hpp"
#include "testutil.hpp"

using namespace duallim;
using testutil::F;
using testutil::Gen;
using testutil::P;

TEST_SUITE("family") {

TEST_CASE("truncated multiplication") {
  Family a = F("x + t", 3), b = F("x - t", 3);
  CHECK(print_family(a.mul(b)) == "x^2 - t^2");
  CHECK(print_family(a.mul(a)) == "x^2 + 2*x*t + t^2");
  Family u = F("1 + t", 1);
  CHECK(print_family(u.mul(u)) == "1 + 2*t");  // t^2 dropped at T = 1
}

TEST_CASE("shift in x") {
  CHECK(print_family(F("x^2 - 1").shift_x(P("1"))) == "x^2 + 2*x");
  CHECK(print_family(F("x^2 + t").shift_x(P("0"))) == "x^2 + t");
  Family f = F("x^2*(x+1) + (x+2)*t");
  Family s = f.shift_x(P("-1"));
  CHECK(s.f0() == P("x^3 - 2*x^2 + x"));
  CHECK(s.coeff(1) == P("x+1"));
}

TEST_CASE("shift round trip on random families") {
  Gen g(606);
  for (int k = 0; k < 25; ++k) {
    Poly f0 = g.nonzero_poly(3, 1);
    Poly f1 = g.poly(2, 1);
    if (f0.degree(Var::x) < f1.degree(Var::x)) std::swap(f0, f1);
    if (f0.is_zero()) f0 = Poly::constant(1);
    Family f({f0, f1}, 4);
    Rational a = g.rational();
    Family back = f.shift_x(Poly::constant(a)).shift_x(Poly::constant(-a));
    CHECK(back == f);
  }
}

TEST_CASE("ramified substitution examples") {
  // x = t(x' - 1) on x^2 + 2xt + t^2 + t^3 extracts weight 2, leaves x'^2 + t.
  auto r1 = F("x^2 + 2*x*t + t^2 + t^3").substitute_ramified(Rational(1), P("-1"));
  CHECK(r1.w == Rational(2));
  CHECK(r1.e == 1);
  CHECK(r1.g.f0() == P("x^2"));
  CHECK(r1.g.coeff(1) == P("1"));

  auto r2 = F("x^2 + 2*t").substitute_ramified(Rational(1, 2), P("0"));
  CHECK(r2.w == Rational(1));
  CHECK(r2.e == 2);
  CHECK(r2.g.f0() == P("x^2 + 2"));

  auto r3 = F("x").substitute_ramified(Rational(1), P("0"));
  CHECK(r3.w == Rational(1));
  CHECK(r3.g.f0() == P("x"));
}

TEST_CASE("ramified substitution with m=1, c=0 matches direct F(tx, t)") {
  Gen g(707);
  for (int k = 0; k < 20; ++k) {
    Poly f0 = g.nonzero_poly(3);
    Poly f1 = g.poly(3);
    Family f({f0, f1}, 5);
    auto r = f.substitute_ramified(Rational(1), P("0"));
    CHECK(r.e == 1);
    // t^w G(x, t) must equal F(t x, t) up to the certified order.
    Poly direct = f.as_poly().substitute(Var::x, P("x*t"));
    Poly recomposed = r.g.as_poly().mul_var(Var::t, static_cast<uint32_t>(floor_long(r.w)));
    long cap = r.g.trunc() + floor_long(r.w);
    CHECK(direct.truncate_t(static_cast<uint32_t>(cap)) ==
          recomposed.truncate_t(static_cast<uint32_t>(cap)));
  }
}

TEST_CASE("family invariants") {
  CHECK_THROWS_AS(Family({Poly()}, 2), Error);  // zero family
  Family f = F("x^2 + t", 2);
  CHECK(f.x_degree() == 2);
  CHECK(f.is_polynomial_family_shape());
  CHECK(f.monic_normalizable());
  Family g = F("x^2*y + x*t", 2);
  CHECK_FALSE(g.monic_normalizable());
}

}  // TEST_SUITE
