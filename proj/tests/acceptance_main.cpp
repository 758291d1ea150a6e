// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <vector>

#include "duallim/disc_limit.hpp"
#include "duallim/dual_limit.hpp"
#include "duallim/errors.hpp"
#include "duallim/newton_puiseux.hpp"
#include "duallim/parser.hpp"
#include "duallim/printer.hpp"
#include "duallim/type_general.hpp"
#include "duallim/vertex_zd.hpp"
#include "testutil.hpp"

using namespace duallim;
using testutil::F;
using testutil::Gen;
using testutil::P;

namespace {

int g_failed = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const Error& e) {
    note = std::string(" (") + e.what() + ")";
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  std::printf("[%s] criterion %2d: %s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              note.c_str());
  if (!ok) ++g_failed;
}

SpecialFiber fiber_of(const Family& f) {
  SpecialFiber fb = split_special_fiber(f, {});
  attach_exact_roots(fb);
  return fb;
}

Poly prod_disc(const SpecialFiber& fb) {
  Poly p = Poly::constant(1);
  for (const ComponentFactor& c : fb.components)
    p = p * discriminant(c.poly, Var::x).pow(static_cast<uint32_t>(c.multiplicity));
  return p;
}

// Monic square-free polynomial in x (plus optional y) with p(0) != 0.
Poly random_monic_squarefree(Gen& g, long max_deg, long deg_y) {
  while (true) {
    long d = g.int_in(1, max_deg);
    Poly p = Poly::variable(Var::x, static_cast<uint32_t>(d));
    for (long j = 0; j < d; ++j) {
      Poly cj = deg_y > 0 ? g.poly(0, deg_y, 3) : Poly::constant(g.rational(3));
      p += cj.mul_var(Var::x, static_cast<uint32_t>(j));
    }
    if (p.eval(Var::x, Rational(0)).is_zero()) continue;
    if (d >= 2 && discriminant(p, Var::x).is_zero()) continue;
    return p;
  }
}

struct KindInstance {
  Family family;
  Poly expected_ver;  // the proposition's closed form
};

KindInstance random_first_kind(Gen& g, long deg_y) {
  while (true) {
    Poly A = random_monic_squarefree(g, 4, deg_y);
    Poly B = deg_y > 0 ? g.poly(4, deg_y, 3) : g.poly(4, 0, 3);
    if (B.eval(Var::x, Rational(0)).is_zero()) continue;
    Family f({A.mul_var(Var::x, 2), B}, 3);
    if (!discriminant_nonzero_to_trunc(f)) continue;
    Poly A0 = A.eval(Var::x, Rational(0)), B0 = B.eval(Var::x, Rational(0));
    return {f, (B0 * A0.pow(3)).scaled(Rational(-4))};
  }
}

KindInstance random_second_kind(Gen& g, long deg_y) {
  while (true) {
    Poly A = random_monic_squarefree(g, 4, deg_y);
    Poly B = deg_y > 0 ? g.poly(3, deg_y, 3) : g.poly(3, 0, 3);
    Poly C = deg_y > 0 ? g.poly(4, deg_y, 3) : g.poly(4, 0, 3);
    Poly A0 = A.eval(Var::x, Rational(0));
    Poly B0 = B.eval(Var::x, Rational(0));
    Poly C0 = C.eval(Var::x, Rational(0));
    if ((B0 * B0 - A0 * C0).is_zero()) continue;
    Family f({A.mul_var(Var::x, 2), B.mul_var(Var::x, 1).scaled(Rational(2)), C}, 4);
    if (!discriminant_nonzero_to_trunc(f)) continue;
    return {f, ((B0 * B0 - A0 * C0) * A0.pow(2)).scaled(Rational(4))};
  }
}

KindInstance random_third_kind(Gen& g) {
  while (true) {
    Rational a0 = g.nonzero_rational(3);
    Rational a1 = g.nonzero_rational(2);
    Rational b0 = g.rational(3);
    Rational b1 = g.rational(3);
    Rational c0 = b0 * b0 / a0;
    Rational c1 = g.rational(3);
    Rational d1 = g.rational(3);
    Rational bracket = -a1 * b0.pow(3) + b1 * b0.pow(2) * a0 - c1 * b0 * a0.pow(2) +
                       d1 * a0.pow(3);
    if (bracket.is_zero()) continue;
    Poly f0 = Poly::constant(a0).mul_var(Var::x, 2) + Poly::constant(a1).mul_var(Var::x, 3);
    Poly f1 = Poly::constant(b0 * Rational(2)).mul_var(Var::x, 1) +
              Poly::constant(b1).mul_var(Var::x, 2);
    Poly f2 = Poly::constant(c0) + Poly::constant(c1).mul_var(Var::x, 1);
    Poly f3 = Poly::constant(d1);
    Family f({f0, f1, f2, f3}, 5);
    if (!discriminant_nonzero_to_trunc(f)) continue;
    return {f, Poly::constant(bracket.pow(1)).scaled(Rational(-4))};
  }
}

bool kind_identity_holds(const KindInstance& inst) {
  DiscriminantLimit d = discriminant_series(inst.family);
  SpecialFiber fb = fiber_of(inst.family);
  return d.delta_prime_0 == prod_disc(fb) * inst.expected_ver;
}

// A Zd-built family (f beta_0 + beta_1 t + ... )^(n_nu) + delta t^n.
Family random_zd_family(Gen& g, int n_nu, int n, Rational* center_out) {
  while (true) {
    Rational a = g.rational(2);
    Poly lin = P("x") - Poly::constant(a);
    std::vector<Poly> bc(static_cast<size_t>(n), Poly());
    bc[0] = lin;
    for (int i = 1; i < n; ++i) bc[static_cast<size_t>(i)] = Poly::constant(g.rational(2));
    Family b(bc, n + 2);
    Rational d0 = g.nonzero_rational(3);
    Family fam = b.pow_truncated(static_cast<uint32_t>(n_nu))
                     .add_term(n, Poly::constant(d0));
    if (!discriminant_nonzero_to_trunc(fam)) continue;
    *center_out = a;
    return fam;
  }
}

}  // namespace

int main() {
  // 1. First-kind identity (Prop 3.2 + Corollary 3.8).
  criterion(1, "first-kind identity: Delta'_0 = prod Disc * (-4 B(0) A(0)^3), 50/Q + 20/Q[y]",
            [] {
              Gen g(0xA1);
              Family pinned = F("x^2*(x+1) + (x+2)*t");
              if (discriminant_series(pinned).delta_prime_0 != P("-8")) return false;
              for (int k = 0; k < 50; ++k)
                if (!kind_identity_holds(random_first_kind(g, 0))) return false;
              for (int k = 0; k < 20; ++k)
                if (!kind_identity_holds(random_first_kind(g, 2))) return false;
              return true;
            });

  // 2. Second-kind identity (Prop 3.3).
  criterion(2, "second-kind identity: Delta'_0 = prod Disc * 4(B(0)^2-A(0)C(0))A(0)^2",
            [] {
              Gen g(0xA2);
              Family pinned = F("x^3 + x^2 + 2*x*t - t^2");
              if (discriminant_series(pinned).delta_prime_0 != P("8")) return false;
              for (int k = 0; k < 50; ++k)
                if (!kind_identity_holds(random_second_kind(g, 0))) return false;
              for (int k = 0; k < 20; ++k)
                if (!kind_identity_holds(random_second_kind(g, 2))) return false;
              return true;
            });

  // 3. Third-kind identity (Prop 3.4).
  criterion(3, "third-kind identity: Delta'_0 = prod Disc * (-4 bracket), b0^2 = a0 c0",
            [] {
              Gen g(0xA3);
              Family pinned = F("x^2 + x^3 + 2*x*t + t^2 + 2*t^3");
              if (discriminant_series(pinned).delta_prime_0 != P("-4")) return false;
              for (int k = 0; k < 50; ++k)
                if (!kind_identity_holds(random_third_kind(g))) return false;
              return true;
            });

  // 4. Theorem 2.7 product formula, exact and numeric-branch routes.
  criterion(4, "Theorem 2.7 three-factor product, 30 multi-component families, exact + 1e-9",
            [] {
              Gen g(0xA4);
              int done = 0;
              while (done < 30) {
                // Distinct rational centers, at least one multiplicity >= 2.
                std::vector<Rational> roots;
                while (roots.size() < 3) {
                  Rational r = g.rational(2);
                  bool dup = false;
                  for (const Rational& s : roots) dup = dup || s == r;
                  if (!dup) roots.push_back(r);
                }
                int m0 = static_cast<int>(g.int_in(2, 3));
                int m1 = static_cast<int>(g.int_in(1, 2));
                Poly f0 = (P("x") - Poly::constant(roots[0])).pow(static_cast<uint32_t>(m0)) *
                          (P("x") - Poly::constant(roots[1])).pow(static_cast<uint32_t>(m1)) *
                          (P("x") - Poly::constant(roots[2]));
                Poly f1 = g.poly(2, 0, 3);
                Poly f2 = g.poly(1, 0, 3);
                Family f({f0, f1, f2}, 6);
                if (!discriminant_nonzero_to_trunc(f)) continue;
                SpecialFiber fb = fiber_of(f);
                Theorem27Report rep;
                try {
                  rep = verify_theorem_2_7(f, fb, /*run_numeric_route=*/true);
                } catch (const Error&) {
                  continue;
                }
                if (!rep.exact_run) continue;
                if (!rep.exact_equal || !rep.numeric_ok || rep.numeric_rel_error > 1e-9)
                  return false;
                ++done;
              }
              return true;
            });

  // 5. Types reproduce the paper.
  criterion(5, "types: Prop 4.3/4.4/4.5 -> 1/2/3, Prop 4.6 -> n, Example 4.9 -> 1,1,3,1,2",
            [] {
              Gen g(0xA5);
              auto tau = [](const Family& f) {
                return general_type(f, fiber_of(f)).general_type;
              };
              for (int k = 0; k < 20; ++k)
                if (tau(random_first_kind(g, 0).family) != 1) return false;
              for (int k = 0; k < 20; ++k)
                if (tau(random_second_kind(g, 0).family) != 2) return false;
              for (int k = 0; k < 20; ++k)
                if (tau(random_third_kind(g).family) != 3) return false;
              for (int k = 0; k < 20; ++k) {
                int n = static_cast<int>(g.int_in(2, 6));
                int n_nu = static_cast<int>(g.int_in(2, 4));
                Rational center;
                Family f = random_zd_family(g, n_nu, n, &center);
                SpecialFiber fb = fiber_of(f);
                if (fb.components.size() != 1) return false;
                ZdSearchResult zr = zd_search(f, fb.components[0]);
                if (!zr.zd || zr.zd->order != n) {
                  --k;  // the random draw degenerated to another order; redraw
                  continue;
                }
                ComponentType ct = type_of(f, fb.components[0]);
                if (ct.tau_nu != n) return false;
              }
              auto tauof = [&](const std::string& s) { return tau(F(s, 4)); };
              return tauof("x^3 + (y+1)*t") == 1 && tauof("x^3 + x*(y+1)*t") == 1 &&
                     tauof("x^3 + x*(y+1)*t^2 + y*t^3") == 3 &&
                     tauof("x^2*y + (y+1)*t") == 1 &&
                     tauof("x^2*y + x*(y+2)*t + t^2") == 2;
            });

  // 6. Theorem 4.7 truncation sufficiency.
  criterion(6, "Theorem 4.7: 30 families/kind x 30 trials at t^(tau+1), ver unchanged",
            [] {
              Gen g(0xA6);
              uint64_t seed = 0xBEEF;
              for (int k = 0; k < 30; ++k) {
                for (int kind = 1; kind <= 3; ++kind) {
                  Family f = kind == 1   ? random_first_kind(g, 0).family
                             : kind == 2 ? random_second_kind(g, 0).family
                                         : random_third_kind(g).family;
                  SufficiencyReport rep =
                      truncation_sufficiency_check(f, fiber_of(f), 30, seed++);
                  if (!rep.ok()) return false;
                }
              }
              return true;
            });

  // 7. Zd and closed-form vertices agree, including the calibrated constant.
  criterion(7, "vertex_closed_form == vertex_zd_theorem_3_7 exactly (incl. c) on all kinds",
            [] {
              Gen g(0xA7);
              int checked = 0;
              for (int k = 0; k < 120 && checked < 60; ++k) {
                Family f = (k % 3 == 0)   ? random_first_kind(g, 0).family
                           : (k % 3 == 1) ? random_second_kind(g, 0).family
                                          : random_third_kind(g).family;
                KindPattern p = classify_kind(f);
                if (p.kind == Kind::Other) continue;
                SpecialFiber fb = fiber_of(f);
                std::map<size_t, ZdDecomposition> decomps;
                bool all = true;
                for (size_t nu = 0; nu < fb.components.size(); ++nu) {
                  if (fb.components[nu].multiplicity <= 1) continue;
                  ZdSearchResult r = zd_search(f, fb.components[nu]);
                  if (!r.zd) {
                    all = false;
                    break;
                  }
                  decomps.emplace(nu, *r.zd);
                }
                if (!all) continue;
                VertexReport closed = vertex_closed_form(f, p);
                VertexReport thm = vertex_zd_theorem_3_7(f, fb, decomps);
                if (!(closed.value == thm.value)) return false;
                ++checked;
              }
              return checked >= 50;
            });

  // 8. Oracle robustness: truncation increase and the scaling law.
  criterion(8, "oracle: alpha, Delta'_0 invariant under T -> T+2; Delta'_0(cF) = c^(2n'-2) Delta'_0",
            [] {
              Gen g(0xA8);
              for (int k = 0; k < 20; ++k) {
                Family f = (k % 3 == 0)   ? random_first_kind(g, 1).family
                           : (k % 3 == 1) ? random_second_kind(g, 0).family
                                          : random_third_kind(g).family;
                DiscriminantLimit base = discriminant_series(f);
                for (int extra : {1, 2}) {
                  DiscriminantLimit d = discriminant_series(f.with_trunc(f.trunc() + extra));
                  if (d.alpha != base.alpha || !(d.delta_prime_0 == base.delta_prime_0))
                    return false;
                }
                Rational c = g.nonzero_rational(5);
                DiscriminantLimit scaled = discriminant_series(f.scaled(c));
                if (scaled.alpha != base.alpha) return false;
                if (!(scaled.delta_prime_0 ==
                      base.delta_prime_0.scaled(c.pow(2L * f.x_degree() - 2))))
                  return false;
              }
              return true;
            });

  // 9. Elimination identities, 200 exact cases each.
  criterion(9, "elimination: res(fg,h)=res(f,h)res(g,h); disc(fg)=disc f disc g res^2; swap sign",
            [] {
              Gen g(0xA9);
              int mult = 0, disc_id = 0, swap_id = 0;
              while (mult < 200 || disc_id < 200 || swap_id < 200) {
                Poly f = g.nonzero_poly(3, 1), h = g.nonzero_poly(2, 1), s = g.nonzero_poly(2, 1);
                if (f.degree(Var::x) < 1 || h.degree(Var::x) < 1 || s.degree(Var::x) < 1)
                  continue;
                if (mult < 200) {
                  if (!(resultant(f * s, h) == resultant(f, h) * resultant(s, h))) return false;
                  ++mult;
                }
                if (swap_id < 200) {
                  Poly ab = resultant(f, h), ba = resultant(h, f);
                  bool odd = (f.degree(Var::x) * h.degree(Var::x)) % 2 != 0;
                  if (!(ab == (odd ? -ba : ba))) return false;
                  ++swap_id;
                }
                if (disc_id < 200 && Poly::gcd(f, h).is_constant()) {
                  Poly r = resultant(f, h);
                  if (!(discriminant(f * h) == discriminant(f) * discriminant(h) * r * r))
                    return false;
                  ++disc_id;
                }
              }
              return true;
            });

  // 10. Geometric pipeline: the three worked examples of the introduction.
  criterion(10, "geometric pipeline: first/second/third-kind vertex cycles + line cross-check",
            [] {
              struct Case {
                std::string file;
                Poly expected_ver;
              };
              std::vector<Case> cases = {
                  // first kind: ver = -4 B(0) A(0)^3 = -4 (y+3)(y+2)^3
                  {"trunc = 2\ndegree = 3\nF = x^2*(x + y + 2*z) + (y*z^2 + 3*z^3)*t\n",
                   P("-4*(y+3)*(y+2)^3")},
                  // second kind: ver = 4 (B(0)^2 - A(0)C(0)) A(0)^2
                  //            = 4 ((y+1)^2 - (y+2)*y) (y+2)^2 = 4 (y+2)^2
                  {"trunc = 3\ndegree = 3\n"
                   "F = x^2*(x + y + 2*z) + 2*x*(y*z + z^2)*t + y*z^2*t^2\n",
                   P("4*(y+2)^2")},
                  // third kind: ver = -4 bracket = -4 (y+2)^4
                  {"trunc = 3\ndegree = 3\n"
                   "F = x^2*(y + 2*z) + x^3 + 2*x*(y*z + 2*z^2)*t + (y*z^2 + 2*z^3)*t^2 "
                   "+ (y*z^2 + 3*z^3)*t^3\n",
                   P("-4*(y+2)^4")},
              };
              for (const Case& c : cases) {
                FamilyFile file = load_family_file(c.file);
                HomogeneousFamily h = HomogeneousFamily::from_file(file);
                LimitCycle cycle = limit_dual_cycle(h, file.f0_factors, {});
                if (!cycle.vertex.oracle_verified) return false;
                if (!cycle.vertex.value.is_polynomial()) return false;
                if (!(cycle.vertex.value.as_polynomial() == c.expected_ver)) return false;
                // Vertex lines match the rational roots of the oracle's ver
                // factor Delta'_0 / prod Disc.
                VerticesReport vr = vertices_report(h, file.f0_factors, {});
                Family aff = dehomogenize(h);
                DiscriminantLimit d = discriminant_series(aff);
                SpecialFiber fb = split_special_fiber(aff, {});
                Poly oracle_ver_num = d.delta_prime_0;
                Poly oracle_den = prod_disc(fb);
                PolyFraction oracle_ver(oracle_ver_num, oracle_den);
                if (!oracle_ver.is_polynomial()) return false;
                Poly swapped;  // the oracle ver is y-only; move it to x for root finding
                for (const auto& [m, co] : oracle_ver.as_polynomial().terms()) {
                  Monomial rm;
                  rm[Var::x] = m[Var::y];
                  swapped.add_term(rm, co);
                }
                std::vector<Rational> oracle_lines;
                for (const auto& [r, m] : rational_roots(swapped)) oracle_lines.push_back(r);
                std::sort(oracle_lines.begin(), oracle_lines.end());
                if (oracle_lines != vr.vertex_lines_y) return false;
              }
              return true;
            });

  // 11. Parser round trip on 500 random values.
  criterion(11, "parser: parse(print(v)) == v on 500 random rationals/polynomials/families",
            [] {
              Gen g(0xAB);
              int count = 0;
              for (int k = 0; k < 170; ++k) {
                Rational r = g.rational(100000);
                Rational back;
                if (!Rational::parse(r.str(), back) || back != r) return false;
                ++count;
              }
              for (int k = 0; k < 170; ++k) {
                Poly p = g.poly(4, 2, 9);
                if (!(parse_expression(print_poly(p), VarSet::affine_qy()) == p)) return false;
                ++count;
              }
              while (count < 500) {
                Poly f0 = g.nonzero_poly(4, 1);
                Poly f1 = g.poly(3, 1), f2 = g.poly(2, 1);
                if (f0.degree(Var::x) < f1.degree(Var::x) ||
                    f0.degree(Var::x) < f2.degree(Var::x))
                  continue;
                Family fam({f0, f1, f2}, 4);
                Family back = parse_family_expression(print_family(fam), 4, VarSet::affine_qy());
                if (!(back == fam)) return false;
                ++count;
              }
              return true;
            });

  if (g_failed == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failed);
  return 1;
}
