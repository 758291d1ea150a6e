#include "duallim/dual_limit.hpp"

#include <algorithm>

#include "duallim/disc_limit.hpp"
#include "duallim/errors.hpp"
#include "duallim/printer.hpp"

namespace duallim {

namespace {

Poly swap_xy(const Poly& p) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    std::swap(r[Var::x], r[Var::y]);
    out.add_term(r, c);
  }
  return out;
}

// Homogenize an affine (z-free) polynomial to total degree target with z.
Poly rehomogenize(const Poly& p, long target) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    long deg = static_cast<long>(m[Var::x]) + m[Var::y];
    if (deg > target) fail_internal("rehomogenize: degree exceeds target");
    Monomial r = m;
    r[Var::z] = static_cast<uint32_t>(target - deg);
    out.add_term(r, c);
  }
  return out;
}

}  // namespace

HomogeneousFamily HomogeneousFamily::from_file(const FamilyFile& file) {
  if (!file.homogeneous) fail_hypothesis("family file is not homogeneous (missing degree key)");
  HomogeneousFamily h;
  h.degree = file.degree;
  h.trunc = file.trunc;
  h.coeffs = file.homog_coeffs;
  return h;
}

CoordinateCheck check_coordinates(const HomogeneousFamily& h) {
  CoordinateCheck out;
  const Poly& f0 = h.coeffs[0];
  Monomial xn;
  xn[Var::x] = static_cast<uint32_t>(h.degree);
  out.cond1 = !f0.coeff(xn).is_zero();
  Poly at_inf = f0.eval(Var::z, Rational(0));  // binary form in x, y
  Poly p = at_inf.eval(Var::y, Rational(1));
  out.cond2 = out.cond1 && p.degree(Var::x) == h.degree &&
              (h.degree == 1 || !discriminant(p, Var::x).is_zero());
  if (!out.cond1) out.note = "F_0(1,0,0) = 0";
  else if (!out.cond2) out.note = "F_0(x,y,0) is not square-free (tangency proxy at infinity)";
  if (!out.ok()) {
    // Deterministic search for a small integer change of coordinates that
    // fixes both conditions.
    for (long s = 1; s <= 8 && !out.suggested_transform; ++s) {
      for (long a = -s; a <= s && !out.suggested_transform; ++a) {
        for (long b = -s; b <= s && !out.suggested_transform; ++b) {
          Matrix3 m{{{1, a, b}, {0, 1, s % 2 ? 1 : -1}, {0, s % 3 ? 1 : -1, 1}}};
          long det = m[1][1] * m[2][2] - m[1][2] * m[2][1];
          if (det == 0) continue;
          HomogeneousFamily cand = apply_coordinate_change(h, m);
          CoordinateCheck c2;
          const Poly& g0 = cand.coeffs[0];
          Monomial gxn;
          gxn[Var::x] = static_cast<uint32_t>(h.degree);
          c2.cond1 = !g0.coeff(gxn).is_zero();
          Poly gp = g0.eval(Var::z, Rational(0)).eval(Var::y, Rational(1));
          c2.cond2 = c2.cond1 && gp.degree(Var::x) == h.degree &&
                     (h.degree == 1 || !discriminant(gp, Var::x).is_zero());
          if (c2.ok()) out.suggested_transform = m;
        }
      }
    }
  }
  return out;
}

HomogeneousFamily apply_coordinate_change(const HomogeneousFamily& h, const Matrix3& m) {
  Poly nx = Poly::variable(Var::x).scaled(Rational(m[0][0])) +
            Poly::variable(Var::y).scaled(Rational(m[0][1])) +
            Poly::variable(Var::z).scaled(Rational(m[0][2]));
  Poly ny = Poly::variable(Var::x).scaled(Rational(m[1][0])) +
            Poly::variable(Var::y).scaled(Rational(m[1][1])) +
            Poly::variable(Var::z).scaled(Rational(m[1][2]));
  Poly nz = Poly::variable(Var::x).scaled(Rational(m[2][0])) +
            Poly::variable(Var::y).scaled(Rational(m[2][1])) +
            Poly::variable(Var::z).scaled(Rational(m[2][2]));
  HomogeneousFamily out;
  out.degree = h.degree;
  out.trunc = h.trunc;
  for (const Poly& fi : h.coeffs) {
    // Substitute via a temporary slot to avoid clobbering.
    Poly g;
    for (const auto& [mon, c] : fi.terms()) {
      Poly term = Poly::constant(c);
      term = term * nx.pow(mon[Var::x]);
      term = term * ny.pow(mon[Var::y]);
      term = term * nz.pow(mon[Var::z]);
      g += term;
    }
    out.coeffs.push_back(std::move(g));
  }
  return out;
}

Family dehomogenize(const HomogeneousFamily& h) {
  CoordinateCheck c = check_coordinates(h);
  if (!c.cond1) fail_hypothesis("coordinate condition 1 fails: F_0(1,0,0) = 0");
  std::vector<Poly> cs;
  cs.reserve(h.coeffs.size());
  for (const Poly& fi : h.coeffs) cs.push_back(fi.eval(Var::z, Rational(1)));
  Monomial xn;
  xn[Var::x] = static_cast<uint32_t>(h.degree);
  Rational lead = h.coeffs[0].coeff(xn);
  Family f(std::move(cs), h.trunc);
  return f.scaled(lead.inverse());
}

namespace {

std::vector<std::pair<Poly, int>> affine_factors(
    const std::vector<std::pair<Poly, int>>& user_factors) {
  std::vector<std::pair<Poly, int>> out;
  for (const auto& [p, m] : user_factors) out.emplace_back(p.eval(Var::z, Rational(1)), m);
  return out;
}

}  // namespace

LimitCycle limit_dual_cycle(const HomogeneousFamily& h,
                            const std::vector<std::pair<Poly, int>>& user_factors,
                            const NumericOptions& opt) {
  CoordinateCheck cc = check_coordinates(h);
  if (!cc.ok()) {
    std::string msg = "coordinate conditions fail: " + cc.note;
    if (cc.suggested_transform) msg += " (a rational change of coordinates is suggested in the report)";
    fail_hypothesis(msg);
  }
  Family aff = dehomogenize(h);
  SpecialFiber fiber = split_special_fiber(aff, affine_factors(user_factors));
  attach_exact_roots(fiber);
  LimitCycle cycle;
  DiscriminantLimit oracle = discriminant_series(aff);
  cycle.delta0 = oracle.delta_prime_0;
  Poly prod_disc = Poly::constant(1);
  for (const ComponentFactor& comp : fiber.components)
    prod_disc = prod_disc *
                discriminant(comp.poly, Var::x).pow(static_cast<uint32_t>(comp.multiplicity));
  cycle.disc_factor = prod_disc;
  cycle.vertex = compute_vertex(aff, fiber, /*allow_numeric=*/!aff.uses_y(), opt);

  for (const ComponentFactor& comp : fiber.components)
    cycle.dual_components.emplace_back(rehomogenize(comp.poly, comp.degree()),
                                       comp.multiplicity);

  // Cross pencils: sum over nu of sum_{nu' != nu} n_nu' (C_nu . C_nu')^dual,
  // collected per unordered pair with multiplicity n_nu + n_nu'.
  for (size_t i = 0; i < fiber.components.size(); ++i) {
    for (size_t j = i + 1; j < fiber.components.size(); ++j) {
      const auto& ci = fiber.components[i];
      const auto& cj = fiber.components[j];
      PencilEntry e;
      e.kind = PencilEntry::Kind::Cross;
      e.description = "(C[" + print_poly(ci.poly) + "] . C[" + print_poly(cj.poly) + "])^v";
      e.multiplicity = ci.multiplicity + cj.multiplicity;
      e.restriction = resultant(ci.poly, cj.poly, Var::x);
      e.partner_affine = cj.poly;
      e.nu = i;
      cycle.vertex_pencils.push_back(std::move(e));
    }
  }
  // Zd pencils for multiple components.
  for (size_t nu = 0; nu < fiber.components.size(); ++nu) {
    const ComponentFactor& comp = fiber.components[nu];
    if (comp.multiplicity <= 1) continue;
    ZdSearchResult zr = zd_search(aff, comp);
    if (!zr.zd) continue;  // vertex report already carries the fallback route
    const ZdDecomposition& zd = *zr.zd;
    // Degree bounds of Corollary 1.3's homogeneous decomposition:
    // deg(f_nu beta_0) = D_B, deg beta_k <= D_B, deg alpha <= n_nu D_B - n',
    // deg delta <= n_nu D_B.
    long db = comp.degree() + static_cast<long>(zd.betas[0].total_degree());
    for (const Poly& b : zd.betas)
      if (!b.is_zero() && static_cast<long>(b.total_degree()) > db)
        cycle.homogenization_consistent = false;
    long ndb = static_cast<long>(comp.multiplicity) * db;
    if (static_cast<long>(zd.alpha.total_degree()) > ndb - aff.x_degree() ||
        static_cast<long>(zd.delta.total_degree()) > ndb)
      cycle.homogenization_consistent = false;
    PencilEntry ed;
    ed.kind = PencilEntry::Kind::ZdDelta;
    ed.description = "(Z(Delta_" + std::to_string(zd.order) + ") . C[" + print_poly(comp.poly) +
                     "])^v";
    ed.multiplicity = comp.multiplicity - 1;
    ed.restriction = resultant(comp.poly, zd.delta, Var::x);
    ed.partner_affine = zd.delta;
    ed.nu = nu;
    cycle.vertex_pencils.push_back(std::move(ed));
    PencilEntry ea;
    ea.kind = PencilEntry::Kind::ZdAlpha;
    ea.description = "-(Z(A) . C[" + print_poly(comp.poly) + "])^v";
    ea.multiplicity = -(comp.multiplicity - 1);
    ea.restriction = resultant(comp.poly, zd.alpha, Var::x);
    ea.partner_affine = zd.alpha;
    ea.nu = nu;
    cycle.vertex_pencils.push_back(std::move(ea));
  }
  return cycle;
}

VerticesReport vertices_report(const HomogeneousFamily& h,
                               const std::vector<std::pair<Poly, int>>& user_factors,
                               const NumericOptions& opt) {
  LimitCycle cycle = limit_dual_cycle(h, user_factors, opt);
  Family aff = dehomogenize(h);
  VerticesReport rep;
  rep.exact = cycle.vertex.exact && cycle.vertex.value.is_polynomial();
  if (rep.exact) {
    rep.ver_poly = cycle.vertex.value.as_polynomial();
    if (rep.ver_poly.uses(Var::y)) {
      SquareFreeDecomposition sq = squarefree_decompose(swap_xy(rep.ver_poly));
      for (const auto& [p, m] : sq.parts) rep.squarefree_parts.emplace_back(swap_xy(p), m);
      for (const auto& [r, m] : rational_roots(swap_xy(rep.ver_poly)))
        rep.vertex_lines_y.push_back(r);
    }
  }
  // Vertex points from positive pencil entries with rational data.
  SpecialFiber fiber = split_special_fiber(aff, affine_factors(user_factors));
  for (const PencilEntry& e : cycle.vertex_pencils) {
    if (e.multiplicity <= 0 || !e.partner_affine) continue;
    if (e.restriction.is_constant()) continue;  // no y-dependence, no lines
    Poly restriction_x = swap_xy(e.restriction);
    for (const auto& [y0, m] : rational_roots(restriction_x)) {
      const Poly& comp_poly = fiber.components.at(e.nu).poly;
      Poly fx = comp_poly.eval(Var::y, y0);  // monic in x, never zero
      Poly px = e.partner_affine->eval(Var::y, y0);
      // The partner may vanish identically on the line y = y0; the
      // intersection with the component is then the component's roots there.
      Poly g = px.is_zero() ? fx : Poly::gcd(fx, px);
      if (g.degree(Var::x) < 1) continue;
      for (const auto& [x0, mx] : rational_roots(g)) {
        // Verify: the point lies on C(0) and on the partner locus.
        Poly check_f0 = aff.f0().eval(Var::x, x0).eval(Var::y, y0);
        Poly check_p = e.partner_affine->eval(Var::x, x0).eval(Var::y, y0);
        if (!check_f0.is_zero() || !check_p.is_zero())
          fail_internal("vertex point fails substitution check");
        bool dup = false;
        for (const VertexPoint& q : rep.points)
          if (q.x0 == x0 && q.y0 == y0) dup = true;
        if (!dup) rep.points.push_back(VertexPoint{x0, y0, e.description});
      }
    }
  }
  std::sort(rep.points.begin(), rep.points.end(), [](const VertexPoint& a, const VertexPoint& b) {
    if (a.y0 != b.y0) return a.y0 < b.y0;
    return a.x0 < b.x0;
  });
  std::sort(rep.vertex_lines_y.begin(), rep.vertex_lines_y.end());
  return rep;
}

}  // namespace duallim
