#include "duallim/components.hpp"

#include "duallim/errors.hpp"
#include "duallim/numeric_roots.hpp"

namespace duallim {

SpecialFiber split_special_fiber(const Family& f,
                                 const std::vector<std::pair<Poly, int>>& user_factors) {
  SpecialFiber out;
  out.unit_content = Poly::constant(1);
  if (!user_factors.empty()) {
    Poly prod = Poly::constant(1);
    for (const auto& [p, m] : user_factors) {
      if (p.uses(Var::t) || p.uses(Var::z)) fail_hypothesis("factor uses t or z");
      if (p.degree(Var::x) == 0) {
        out.unit_content = out.unit_content * p.pow(static_cast<uint32_t>(m));
        prod = prod * p.pow(static_cast<uint32_t>(m));
        continue;
      }
      Poly lc = p.leading_coeff(Var::x);
      if (!lc.is_constant()) fail_hypothesis("factor is not monic-normalizable");
      Poly monic = p.scaled(lc.constant_value().inverse());
      out.unit_constant *= lc.constant_value().pow(m);
      prod = prod * p.pow(static_cast<uint32_t>(m));
      out.components.push_back(ComponentFactor{monic, m, std::nullopt, std::nullopt});
    }
    auto unit = Poly::try_divide(f.f0(), prod);
    if (!unit || unit->is_zero() || !unit->is_constant())
      fail_hypothesis("declared factors do not multiply to F_0 up to a constant unit");
    out.unit_constant *= unit->constant_value();
    // Components must be pairwise coprime and square-free for the pipeline.
    for (size_t i = 0; i < out.components.size(); ++i) {
      const Poly& fi = out.components[i].poly;
      if (fi.degree(Var::x) >= 2 && discriminant(fi, Var::x).is_zero())
        fail_hypothesis("declared factor is not square-free");
      for (size_t j = i + 1; j < out.components.size(); ++j)
        if (!Poly::gcd(fi, out.components[j].poly).is_constant())
          fail_hypothesis("declared factors are not pairwise coprime");
    }
    return out;
  }
  SquareFreeDecomposition sq = squarefree_decompose(f.f0());
  if (sq.unit.is_constant()) {
    out.unit_constant = sq.unit.constant_value();
  } else {
    out.unit_content = sq.unit.integer_normalized();
    Rational s = sq.unit.terms().begin()->second / out.unit_content.terms().begin()->second;
    out.unit_constant = s;
  }
  for (const auto& [p, m] : sq.parts)
    out.components.push_back(ComponentFactor{p, m, std::nullopt, std::nullopt});
  return out;
}

void attach_exact_roots(SpecialFiber& fiber) {
  for (ComponentFactor& c : fiber.components) {
    if (c.poly.uses(Var::y)) continue;
    auto roots = rational_roots(c.poly);
    long covered = 0;
    for (const auto& [r, m] : roots) covered += m;
    if (covered != c.degree()) continue;
    std::vector<Rational> rs;
    for (const auto& [r, m] : roots)
      for (int k = 0; k < m; ++k) rs.push_back(r);
    c.roots_exact = std::move(rs);
  }
}

void attach_numeric_roots(SpecialFiber& fiber, const NumericOptions& opt) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
  for (ComponentFactor& c : fiber.components) {
    if (c.poly.uses(Var::y)) fail_hypothesis("numeric backend requires specialized y");
    std::vector<Complex> cs(static_cast<size_t>(c.degree()) + 1, Complex(prec));
    for (long j = 0; j <= c.degree(); ++j)
      cs[static_cast<size_t>(j)] =
          Complex::of(c.poly.coeff_of(Var::x, static_cast<uint32_t>(j)).constant_value(), prec);
    std::vector<Complex> rs;
    for (const NumRoot& r : complex_roots(cs, opt))
      for (int k = 0; k < r.multiplicity; ++k) rs.push_back(r.value);
    c.roots_numeric = std::move(rs);
  }
}

}  // namespace duallim
