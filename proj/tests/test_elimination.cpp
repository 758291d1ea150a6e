#include <doctest.h>

#include "duallim/elimination.hpp"
#include "duallim/errors.hpp"
#include "duallim/printer.hpp"
#include "testutil.hpp"

using namespace duallim;
using testutil::Gen;
using testutil::P;
using testutil::Q;

TEST_SUITE("elimination") {

TEST_CASE("resultant examples") {
  CHECK(resultant(P("x"), P("x-1")) == P("-1"));
  CHECK(resultant(P("x"), P("x+1")) == P("1"));
  CHECK(resultant(P("x^2+1"), P("x^2-1")) == P("4"));
  CHECK(resultant(P("x-y"), P("x+y")) == P("2*y"));
  // constant conventions
  CHECK(resultant(P("3"), P("x^2+1")) == P("9"));
  CHECK(resultant(P("x^3"), P("5")) == P("125"));
  CHECK_THROWS_AS((void)resultant(P("2"), P("3")), Error);
  CHECK_THROWS_AS((void)resultant(Poly(), P("x")), Error);
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant(P("x^2-1")) == P("4"));
  CHECK(discriminant(P("x")) == P("1"));
  CHECK(discriminant(P("x^3 + x^2 + t*x + 2*t")) == P("-8*t - 71*t^2 - 4*t^3"));
}

TEST_CASE("gcd and exact divide") {
  CHECK(Poly::gcd(P("x^2-1"), P("x^2+2*x+1")) == P("x+1"));
  CHECK(exact_divide(P("x^3+x^2"), P("x^2")) == P("x+1"));
  CHECK(Poly::gcd(P("x"), P("x+2")) == P("1"));
  CHECK_THROWS_WITH_AS((void)exact_divide(P("x^2+1"), P("x")), "not divisible", Error);
}

TEST_CASE("squarefree decomposition examples") {
  SquareFreeDecomposition d = squarefree_decompose(P("x^3+x^2"));
  REQUIRE(d.parts.size() == 2);
  CHECK(d.parts[0] == std::pair{P("x+1"), 1});
  CHECK(d.parts[1] == std::pair{P("x"), 2});
  CHECK(d.unit == P("1"));

  SquareFreeDecomposition e = squarefree_decompose(P("x^2+y"));
  REQUIRE(e.parts.size() == 1);
  CHECK(e.parts[0] == std::pair{P("x^2+y"), 1});

  SquareFreeDecomposition f = squarefree_decompose(P("(x^2-1)^2*x"));
  REQUIRE(f.parts.size() == 2);
  CHECK(f.parts[0] == std::pair{P("x"), 1});
  CHECK(f.parts[1] == std::pair{P("x^2-1"), 2});

  // x-content goes to the unit; x^2*y decomposes as y * (x)^2.
  SquareFreeDecomposition g = squarefree_decompose(P("x^2*y"));
  CHECK(g.unit == P("y"));
  REQUIRE(g.parts.size() == 1);
  CHECK(g.parts[0] == std::pair{P("x"), 2});

  CHECK_THROWS_WITH_AS((void)squarefree_decompose(P("x^2*y + x")),
                       "cannot monic-normalize over Q[y]", Error);
}

TEST_CASE("rational roots examples") {
  auto r1 = rational_roots(P("x^2-1"));
  REQUIRE(r1.size() == 2);
  CHECK(r1[0] == std::pair{Q(-1), 1});
  CHECK(r1[1] == std::pair{Q(1), 1});
  CHECK(rational_roots(P("x^2+1")).empty());
  auto r3 = rational_roots(P("x^3+x^2"));
  REQUIRE(r3.size() == 2);
  CHECK(r3[0] == std::pair{Q(-1), 1});
  CHECK(r3[1] == std::pair{Q(0), 2});
  auto r4 = rational_roots(P("6*x^2 - 5*x + 1"));
  REQUIRE(r4.size() == 2);
  CHECK(r4[0] == std::pair{Q(1, 3), 1});
  CHECK(r4[1] == std::pair{Q(1, 2), 1});
}

TEST_CASE("resultant multiplicativity and swap sign") {
  Gen g(808);
  for (int k = 0; k < 60; ++k) {
    Poly f = g.nonzero_poly(3, 1), h = g.nonzero_poly(2, 1), s = g.nonzero_poly(2, 1);
    if (f.degree(Var::x) < 1 || h.degree(Var::x) < 1 || s.degree(Var::x) < 1) continue;
    CHECK(resultant(f * s, h) == resultant(f, h) * resultant(s, h));
    Poly ab = resultant(f, h);
    Poly ba = resultant(h, f);
    bool odd = (f.degree(Var::x) * h.degree(Var::x)) % 2 != 0;
    CHECK(ab == (odd ? -ba : ba));
  }
}

TEST_CASE("product discriminant identity") {
  Gen g(909);
  int done = 0;
  for (int k = 0; k < 200 && done < 40; ++k) {
    Poly f = g.nonzero_poly(3), h = g.nonzero_poly(2);
    if (f.degree(Var::x) < 1 || h.degree(Var::x) < 1) continue;
    if (!Poly::gcd(f, h).is_constant()) continue;
    Poly lhs = discriminant(f * h);
    Poly r = resultant(f, h);
    Poly rhs = discriminant(f) * discriminant(h) * r * r;
    CHECK(lhs == rhs);
    ++done;
  }
  CHECK(done >= 30);
}

TEST_CASE("resultant zero iff common factor") {
  Gen g(1010);
  for (int k = 0; k < 40; ++k) {
    Poly f = g.nonzero_poly(2), h = g.nonzero_poly(2), c = g.nonzero_poly(1);
    if (c.degree(Var::x) < 1) c = P("x+1");
    if (f.degree(Var::x) < 1) f = P("x-2");
    if (h.degree(Var::x) < 1) h = P("x+3");
    CHECK(resultant(f * c, h * c).is_zero());
    if (Poly::gcd(f, h).is_constant()) CHECK_FALSE(resultant(f, h).is_zero());
  }
}

TEST_CASE("discriminant from rational roots") {
  Gen g(1111);
  for (int k = 0; k < 30; ++k) {
    // Build a split polynomial with distinct roots and a random lead.
    std::vector<Rational> roots;
    while (roots.size() < 3) {
      Rational r = g.rational(4);
      bool dup = false;
      for (const Rational& s : roots) dup = dup || s == r;
      if (!dup) roots.push_back(r);
    }
    Rational lead = g.nonzero_rational(3);
    Poly f = Poly::constant(lead);
    for (const Rational& r : roots) f = f * (P("x") - Poly::constant(r));
    auto found = rational_roots(f);
    REQUIRE(found.size() == 3);
    Rational expect = lead.pow(2 * 3 - 2);
    for (size_t i = 0; i < roots.size(); ++i)
      for (size_t j = i + 1; j < roots.size(); ++j) {
        Rational d = roots[i] - roots[j];
        expect *= d * d;
      }
    CHECK(discriminant(f) == Poly::constant(expect));
  }
}

TEST_CASE("subresultant PRS agrees with Sylvester determinant") {
  Gen g(1212);
  for (int k = 0; k < 40; ++k) {
    Poly f = g.nonzero_poly(4, 1), h = g.nonzero_poly(3, 1);
    if (f.degree(Var::x) < 1 || h.degree(Var::x) < 1) continue;
    CHECK(resultant(f, h) == resultant_sylvester(f, h));
  }
  // Also over a series-style domain Q[y][t].
  Poly f = P("x^3 + x^2 + t*x + 2*t");
  CHECK(resultant(f, f.derivative(Var::x)) ==
        resultant_sylvester(f, f.derivative(Var::x)));
}

}  // TEST_SUITE
