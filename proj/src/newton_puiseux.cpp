#include "duallim/newton_puiseux.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "duallim/errors.hpp"
#include "duallim/printer.hpp"

namespace duallim {

namespace {

constexpr int kMaxLevels = 64;

struct Frontier {
  std::vector<std::pair<long, long>> vertices;  // descending part, i ascending
  std::vector<NewtonPolygonData::Edge> edges;
  long tail_i = 0;  // i of the last descending vertex
  long tail_j = 0;  // its x-exponent
};

// Lower convex hull of (i, j_min(i)) points, trimmed to the descending part.
Frontier build_frontier(std::vector<std::pair<long, long>> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<long, long>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // Keep strict turns; pop collinear middle points.
      long cross = (b.first - a.first) * (p.second - a.second) -
                   (b.second - a.second) * (p.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  Frontier out;
  out.vertices.push_back(hull[0]);
  for (size_t k = 1; k < hull.size(); ++k) {
    if (hull[k].second >= out.vertices.back().second) break;  // no longer descending
    out.vertices.push_back(hull[k]);
  }
  for (size_t k = 1; k < out.vertices.size(); ++k) {
    const auto& a = out.vertices[k - 1];
    const auto& b = out.vertices[k];
    NewtonPolygonData::Edge e{a.first, a.second, b.first, b.second,
                              Rational(b.first - a.first, a.second - b.second)};
    out.edges.push_back(e);
  }
  out.tail_i = out.vertices.back().first;
  out.tail_j = out.vertices.back().second;
  return out;
}

// Integer lattice points on the closed segment of an edge.
std::vector<std::pair<long, long>> edge_lattice(const NewtonPolygonData::Edge& e) {
  std::vector<std::pair<long, long>> pts;
  long dj = e.j0 - e.j1, di = e.i1 - e.i0;
  for (long j = e.j1; j <= e.j0; ++j) {
    long num = (e.j0 - j) * di;
    if (num % dj == 0) pts.emplace_back(e.i0 + num / dj, j);
  }
  return pts;
}

}  // namespace

NewtonPolygonData newton_polygon(const Family& f) {
  NewtonPolygonData out;
  std::vector<std::pair<long, long>> jmin;
  for (int i = 0; i <= f.trunc(); ++i) {
    const Poly& fi = f.coeff(i);
    if (fi.is_zero()) continue;
    long lo = -1;
    for (long j = 0; j <= fi.degree(Var::x); ++j) {
      if (!fi.coeff_of(Var::x, static_cast<uint32_t>(j)).is_zero()) {
        out.support.emplace_back(i, j);
        if (lo < 0) lo = j;
      }
    }
    jmin.emplace_back(i, lo);
  }
  std::sort(out.support.begin(), out.support.end());
  // d = min x-exponent of F_0.
  long d = f.f0().degree(Var::x);
  for (const auto& [m, c] : f.f0().terms()) d = std::min<long>(d, m[Var::x]);
  out.d = d;
  Frontier fr = build_frontier(std::move(jmin));
  out.hull_vertices = fr.vertices;
  out.edges = fr.edges;
  out.tail_j = fr.tail_j;
  if (d >= 1 && !fr.edges.empty() && fr.edges[0].j0 == d && fr.edges[0].i0 == 0)
    out.m1 = fr.edges[0].m;
  return out;
}

TruncationData first_truncation(const Family& f) {
  NewtonPolygonData p = newton_polygon(f);
  if (p.d < 1) fail_hypothesis("first truncation requires d >= 1 (x divides F_0)");
  if (!p.m1) fail_hypothesis("no descending leading edge (x divides F to truncation order)");
  const auto& e = p.edges[0];
  // The leading edge's line reaches j = 0 at i = m1 * d; points beyond the
  // truncation cannot be certified.
  Rational reach = e.m * Rational(p.d);
  if (reach > Rational(f.trunc()))
    fail_resource("leading edge requires t-orders beyond truncation");
  Poly sub;
  Poly charpoly;
  // Lattice points on the full line through (0, d) with slope -1/m1.
  long q = 1;
  {
    mpz_class den = e.m.denominator();
    q = den.get_si();
  }
  for (long j = 0; j <= p.d; ++j) {
    Rational iq = e.m * Rational(p.d - j);
    if (!iq.is_integer()) continue;
    long i = floor_long(iq);
    if (i > f.trunc()) continue;
    Poly a = f.coeff(static_cast<int>(i)).coeff_of(Var::x, static_cast<uint32_t>(j));
    if (a.is_zero()) continue;
    sub += a.mul_var(Var::x, static_cast<uint32_t>(j)).mul_var(Var::t, static_cast<uint32_t>(i));
    charpoly += a.mul_var(Var::x, static_cast<uint32_t>(j));
  }
  (void)q;
  return TruncationData{Family::from_poly(sub, f.trunc()), charpoly, e.m};
}

// ---------------------------------------------------------------------------
// Exact branch expansion
// ---------------------------------------------------------------------------

namespace {

struct BranchRec {
  std::vector<std::pair<Rational, Rational>> terms;  // exact coefficients
  Rational known;
};

// Characteristic polynomial of an edge, shifted so s^0 is the right endpoint:
// sum a_{i,j} s^(j - j1). Coefficients in Q[y]; s stored as Var::x.
Poly edge_char_poly(const Family& f, const NewtonPolygonData::Edge& e) {
  Poly q;
  for (const auto& [i, j] : edge_lattice(e)) {
    Poly a = f.coeff(static_cast<int>(i)).coeff_of(Var::x, static_cast<uint32_t>(j));
    q += a.mul_var(Var::x, static_cast<uint32_t>(j - e.j1));
  }
  return q;
}

// Positive-valuation branches of f, exact backend, in f's own t units.
std::vector<BranchRec> expand_positive_exact(const Family& f, const Rational& depth,
                                             int level) {
  if (level > kMaxLevels)
    fail_resource("polygon recursion cap exceeded (non-separating family?)");
  NewtonPolygonData p = newton_polygon(f);
  std::vector<BranchRec> out;
  if (p.d == 0) return out;
  for (const auto& e : p.edges) {
    Poly q = edge_char_poly(f, e);
    if (q.uses(Var::y)) fail_hypothesis("irrational branch data in exact mode");
    auto roots = rational_roots(q);
    long degq = e.j0 - e.j1;
    long covered = 0;
    for (const auto& [alpha, mult] : roots) {
      if (alpha.is_zero()) fail_internal("edge char poly with zero root");
      covered += mult;
    }
    if (covered != degq) fail_hypothesis("irrational branch data in exact mode");
    for (const auto& [alpha, mult] : roots) {
      if (depth <= e.m) {
        for (int k = 0; k < mult; ++k) {
          BranchRec b;
          b.terms.emplace_back(e.m, alpha);
          b.known = e.m;
          out.push_back(b);
        }
        continue;
      }
      Family::Ramified sub = f.substitute_ramified(e.m, Poly::constant(alpha));
      Rational tail_depth = (depth - e.m) * Rational(sub.e);
      std::vector<BranchRec> tails = expand_positive_exact(sub.g, tail_depth, level + 1);
      if (static_cast<long>(tails.size()) != mult)
        fail_internal("branch count mismatch after substitution");
      for (const BranchRec& tail : tails) {
        BranchRec b;
        b.terms.emplace_back(e.m, alpha);
        for (const auto& [ex, c] : tail.terms)
          b.terms.emplace_back(e.m + ex / Rational(sub.e), c);
        b.known = e.m + tail.known / Rational(sub.e);
        out.push_back(b);
      }
    }
  }
  if (p.tail_j > 0) {
    // x^tail_j still divides F beyond the last edge: branches approximated by
    // zero, certified to (T + 1 - tail_i) / tail_j.
    long tail_i = p.hull_vertices.back().first;
    Rational known(f.trunc() + 1 - tail_i, p.tail_j);
    if (known < depth) fail_resource("depth exceeds truncation support");
    for (long k = 0; k < p.tail_j; ++k) {
      BranchRec b;
      b.known = known;
      out.push_back(b);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Numeric branch expansion
// ---------------------------------------------------------------------------

struct NumFamily {
  std::vector<std::vector<Complex>> c;  // c[i][j], dense in both indices
  int trunc = 0;
  mpfr_prec_t prec = 256;

  Real scale() const {
    Real s = Real::of(0L, prec);
    for (const auto& row : c)
      for (const Complex& v : row) s = max(s, v.abs());
    return s;
  }
  Real zero_tol() const { return scale() * Real::pow2(-(static_cast<long>(prec) / 2), prec); }
};

NumFamily to_num(const Family& f, mpfr_prec_t prec) {
  if (f.uses_y()) fail_hypothesis("numeric backend requires specialized y");
  NumFamily out;
  out.prec = prec;
  out.trunc = f.trunc();
  out.c.resize(static_cast<size_t>(f.trunc()) + 1);
  for (int i = 0; i <= f.trunc(); ++i) {
    const Poly& fi = f.coeff(i);
    long dj = std::max<long>(fi.degree(Var::x), 0);
    out.c[static_cast<size_t>(i)].assign(static_cast<size_t>(dj) + 1, Complex(prec));
    for (long j = 0; j <= dj; ++j)
      out.c[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          Complex::of(fi.coeff_of(Var::x, static_cast<uint32_t>(j)).constant_value(), prec);
  }
  return out;
}

Frontier num_frontier(const NumFamily& f, long* d_out) {
  Real tol = f.zero_tol();
  std::vector<std::pair<long, long>> jmin;
  for (int i = 0; i <= f.trunc; ++i) {
    const auto& row = f.c[static_cast<size_t>(i)];
    long lo = -1;
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j].abs() > tol) {
        lo = static_cast<long>(j);
        break;
      }
    }
    if (lo >= 0) jmin.emplace_back(i, lo);
  }
  if (jmin.empty() || jmin[0].first != 0) fail_internal("numeric family with vanishing F_0");
  if (d_out) *d_out = jmin[0].second;
  return build_frontier(std::move(jmin));
}

NumFamily num_substitute_ramified(const NumFamily& f, const Rational& m, const Complex& alpha,
                                  long* w_tau, long* e_out) {
  long p = m.numerator().get_si();
  long q = m.denominator().get_si();
  long maxj = 0;
  for (const auto& row : f.c) maxj = std::max<long>(maxj, static_cast<long>(row.size()) - 1);
  // (alpha + x)^j rows.
  std::vector<std::vector<Complex>> pw(static_cast<size_t>(maxj) + 1);
  pw[0] = {Complex::of(Rational(1), f.prec)};
  for (long j = 1; j <= maxj; ++j) {
    const auto& prev = pw[static_cast<size_t>(j - 1)];
    std::vector<Complex> cur(prev.size() + 1, Complex(f.prec));
    for (size_t k = 0; k < prev.size(); ++k) {
      cur[k] = cur[k] + prev[k] * alpha;
      cur[k + 1] = cur[k + 1] + prev[k];
    }
    pw[static_cast<size_t>(j)] = std::move(cur);
  }
  long max_exp = q * (f.trunc + 1) - 1;
  std::vector<std::vector<Complex>> slots(static_cast<size_t>(max_exp) + 1);
  for (long i = 0; i <= f.trunc; ++i) {
    const auto& row = f.c[static_cast<size_t>(i)];
    for (long j = 0; j < static_cast<long>(row.size()); ++j) {
      if (row[static_cast<size_t>(j)].is_zero()) continue;
      long ex = q * i + p * j;
      if (ex > max_exp) continue;  // beyond certified order anyway
      auto& slot = slots[static_cast<size_t>(ex)];
      const auto& pj = pw[static_cast<size_t>(j)];
      if (slot.size() < pj.size()) slot.resize(pj.size(), Complex(f.prec));
      for (size_t k = 0; k < pj.size(); ++k)
        slot[k] = slot[k] + row[static_cast<size_t>(j)] * pj[k];
    }
  }
  NumFamily g;
  g.prec = f.prec;
  // Find the weight: first tau-order with a coefficient above tolerance.
  Real scale = Real::of(0L, f.prec);
  for (const auto& s : slots)
    for (const Complex& v : s) scale = max(scale, v.abs());
  Real tol = scale * Real::pow2(-(static_cast<long>(f.prec) / 2), f.prec);
  long w = -1;
  for (long ex = 0; ex <= max_exp && w < 0; ++ex)
    for (const Complex& v : slots[static_cast<size_t>(ex)])
      if (v.abs() > tol) {
        w = ex;
        break;
      }
  if (w < 0) fail_hypothesis("degenerate substitution");
  g.trunc = static_cast<int>(max_exp - w);
  g.c.resize(static_cast<size_t>(g.trunc) + 1);
  for (long ex = w; ex <= max_exp; ++ex) {
    auto& row = slots[static_cast<size_t>(ex)];
    // Denoise entries below tolerance.
    for (Complex& v : row)
      if (!(v.abs() > tol)) v = Complex(f.prec);
    while (!row.empty() && row.back().is_zero()) row.pop_back();
    if (row.empty()) row.push_back(Complex(f.prec));
    g.c[static_cast<size_t>(ex - w)] = std::move(row);
  }
  *w_tau = w;
  *e_out = q;
  return g;
}

struct NumBranchRec {
  std::vector<std::pair<Rational, Complex>> terms;
  Rational known;
};

std::vector<NumBranchRec> expand_positive_num(const NumFamily& f, const Rational& depth,
                                              const NumericOptions& opt, int level) {
  if (level > kMaxLevels)
    fail_resource("polygon recursion cap exceeded (non-separating family?)");
  long d = 0;
  Frontier fr = num_frontier(f, &d);
  std::vector<NumBranchRec> out;
  if (d == 0) return out;
  Real tol = f.zero_tol();
  for (const auto& e : fr.edges) {
    std::vector<Complex> q(static_cast<size_t>(e.j0 - e.j1) + 1, Complex(f.prec));
    for (const auto& [i, j] : edge_lattice(e)) {
      const auto& row = f.c[static_cast<size_t>(i)];
      if (j < static_cast<long>(row.size())) {
        Complex v = row[static_cast<size_t>(j)];
        if (v.abs() > tol) q[static_cast<size_t>(j - e.j1)] = v;
      }
    }
    auto roots = complex_roots(q, opt);
    for (const auto& root : roots) {
      if (depth <= e.m) {
        for (int k = 0; k < root.multiplicity; ++k) {
          NumBranchRec b;
          b.terms.emplace_back(e.m, root.value);
          b.known = e.m;
          out.push_back(b);
        }
        continue;
      }
      long w_tau = 0, qe = 0;
      NumFamily g = num_substitute_ramified(f, e.m, root.value, &w_tau, &qe);
      Rational tail_depth = (depth - e.m) * Rational(qe);
      auto tails = expand_positive_num(g, tail_depth, opt, level + 1);
      if (static_cast<long>(tails.size()) != root.multiplicity)
        fail_internal("numeric branch count mismatch after substitution");
      for (const auto& tail : tails) {
        NumBranchRec b;
        b.terms.emplace_back(e.m, root.value);
        for (const auto& [ex, c] : tail.terms) b.terms.emplace_back(e.m + ex / Rational(qe), c);
        b.known = e.m + tail.known / Rational(qe);
        out.push_back(b);
      }
    }
  }
  if (fr.tail_j > 0) {
    Rational known(f.trunc + 1 - fr.tail_i, fr.tail_j);
    if (known < depth) fail_resource("depth exceeds truncation support");
    for (long k = 0; k < fr.tail_j; ++k) {
      NumBranchRec b;
      b.known = known;
      out.push_back(b);
    }
  }
  return out;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

PuiseuxBranch finalize_exact(const Rational& center, const BranchRec& rec) {
  PuiseuxBranch b;
  long e = 1;
  if (!center.is_zero()) {
    PuiseuxCoeff c;
    c.exact = true;
    c.q = center;
    b.terms.emplace_back(Rational(0), c);
  }
  for (const auto& [ex, q] : rec.terms) {
    PuiseuxCoeff c;
    c.exact = true;
    c.q = q;
    b.terms.emplace_back(ex, c);
    e = lcm_long(e, ex.denominator().get_si());
  }
  b.ramification = static_cast<int>(e);
  b.known_order = rec.known;
  return b;
}

PuiseuxBranch finalize_num(const Complex& center, const NumBranchRec& rec, mpfr_prec_t prec) {
  PuiseuxBranch b;
  long e = 1;
  if (!center.is_zero()) {
    PuiseuxCoeff c;
    c.exact = false;
    c.c = center;
    b.terms.emplace_back(Rational(0), c);
  }
  for (const auto& [ex, v] : rec.terms) {
    PuiseuxCoeff c;
    c.exact = false;
    c.c = v;
    b.terms.emplace_back(ex, c);
    e = lcm_long(e, ex.denominator().get_si());
  }
  (void)prec;
  b.ramification = static_cast<int>(e);
  b.known_order = rec.known;
  return b;
}

// Deterministic ordering for reports.
bool branch_less(const PuiseuxBranch& a, const PuiseuxBranch& b) {
  size_t n = std::min(a.terms.size(), b.terms.size());
  for (size_t k = 0; k < n; ++k) {
    if (a.terms[k].first != b.terms[k].first) return a.terms[k].first < b.terms[k].first;
    const PuiseuxCoeff& ca = a.terms[k].second;
    const PuiseuxCoeff& cb = b.terms[k].second;
    if (ca.exact && cb.exact) {
      if (ca.q != cb.q) return ca.q < cb.q;
    } else {
      Real ra = ca.exact ? Real::of(ca.q, cb.c.prec()) : ca.c.re;
      Real rb = cb.exact ? Real::of(cb.q, ca.c.prec()) : cb.c.re;
      if (ra < rb) return true;
      if (rb < ra) return false;
      Real ia = ca.exact ? Real::of(0L, 64) : ca.c.im;
      Real ib = cb.exact ? Real::of(0L, 64) : cb.c.im;
      if (ia < ib) return true;
      if (ib < ia) return false;
    }
  }
  return a.terms.size() < b.terms.size();
}

void check_disc_nonzero(const Family& f) {
  if (f.x_degree() < 1) fail_hypothesis("branch expansion requires deg_x >= 1");
  Poly disc = f.x_degree() == 1 ? Poly::constant(1) : discriminant(f.as_poly(), Var::x);
  long ord = disc.t_order();
  if (disc.is_zero() || ord > f.trunc())
    fail_hypothesis("non-separating family: discriminant vanishes to truncation order");
}

}  // namespace

PuiseuxCoeff PuiseuxBranch::center() const {
  if (!terms.empty() && terms[0].first.is_zero()) return terms[0].second;
  PuiseuxCoeff c;
  c.exact = true;
  c.q = Rational(0);
  return c;
}

std::string PuiseuxCoeff::str() const { return exact ? q.str() : "(" + c.str(12) + ")"; }

std::string PuiseuxBranch::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [ex, c] : terms) {
    std::string tpow;
    if (!ex.is_zero()) {
      if (ex.is_one())
        tpow = "t";
      else if (ex.is_integer())
        tpow = "t^" + ex.str();
      else
        tpow = "t^(" + ex.str() + ")";
    }
    bool neg = c.exact && c.q.sign() < 0;
    std::string body;
    if (c.exact) {
      Rational a = c.q.abs();
      if (tpow.empty())
        body = a.str();
      else if (a.is_one())
        body = tpow;
      else
        body = a.str() + "*" + tpow;
    } else {
      body = c.str() + (tpow.empty() ? "" : "*" + tpow);
    }
    if (first) {
      os << (neg ? "-" : "") << body;
      first = false;
    } else {
      os << (neg ? " - " : " + ") << body;
    }
  }
  return os.str();
}

BranchSet expand_branches(const Family& f, BranchBackend backend, const Rational& depth,
                          const NumericOptions& opt) {
  check_disc_nonzero(f);
  BranchSet out;
  out.backend = backend;
  out.certified_order = depth;
  NewtonPolygonData p = newton_polygon(f);
  long d = p.d;
  Poly qpoly = f.f0();
  if (d > 0) {
    Poly xe = Poly::variable(Var::x, static_cast<uint32_t>(d));
    qpoly = exact_divide(qpoly, xe);
  }
  if (backend == BranchBackend::Exact) {
    for (const BranchRec& rec : expand_positive_exact(f, depth, 0))
      out.branches.push_back(finalize_exact(Rational(0), rec));
    if (qpoly.degree(Var::x) > 0) {
      if (qpoly.uses(Var::y)) fail_hypothesis("irrational branch data in exact mode");
      auto roots = rational_roots(qpoly);
      long covered = 0;
      for (const auto& [a, mult] : roots) covered += mult;
      if (covered != qpoly.degree(Var::x))
        fail_hypothesis("irrational branch data in exact mode");
      for (const auto& [a, mult] : roots) {
        Family g = f.shift_x(Poly::constant(a));
        auto tails = expand_positive_exact(g, depth, 0);
        if (static_cast<long>(tails.size()) != mult)
          fail_internal("center branch count mismatch");
        for (const BranchRec& rec : tails) out.branches.push_back(finalize_exact(a, rec));
      }
    }
  } else {
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
    out.precision_bits = opt.precision_bits;
    if (f.uses_y()) fail_hypothesis("numeric backend requires specialized y");
    NumFamily nf = to_num(f, prec);
    for (const auto& rec : expand_positive_num(nf, depth, opt, 0))
      out.branches.push_back(finalize_num(Complex(prec), rec, prec));
    if (qpoly.degree(Var::x) > 0) {
      // Exact square-free split first so every Aberth call sees simple roots.
      SquareFreeDecomposition sq = squarefree_decompose(qpoly);
      for (const auto& [part, mult] : sq.parts) {
        std::vector<Complex> cs(static_cast<size_t>(part.degree(Var::x)) + 1, Complex(prec));
        for (long j = 0; j <= part.degree(Var::x); ++j)
          cs[static_cast<size_t>(j)] =
              Complex::of(part.coeff_of(Var::x, static_cast<uint32_t>(j)).constant_value(), prec);
        for (const NumRoot& root : complex_roots(cs, opt)) {
          // Shift numerically and expand the mult branches at this center.
          NumFamily g = nf;
          for (auto& row : g.c) {
            // Taylor shift x -> x + root.value.
            for (long k = static_cast<long>(row.size()) - 2; k >= 0; --k)
              for (size_t j = static_cast<size_t>(k); j + 1 < row.size(); ++j)
                row[j] = row[j] + root.value * row[j + 1];
          }
          auto tails = expand_positive_num(g, depth, opt, 0);
          if (static_cast<long>(tails.size()) != mult)
            fail_internal("numeric center branch count mismatch");
          for (const auto& rec : tails) out.branches.push_back(finalize_num(root.value, rec, prec));
        }
      }
    }
  }
  long with_mult = static_cast<long>(out.branches.size());
  if (with_mult != f.x_degree()) fail_internal("branch count does not equal deg_x(F_0)");
  std::sort(out.branches.begin(), out.branches.end(), branch_less);
  Rational cert = depth;
  for (const auto& b : out.branches) cert = std::min(cert, b.known_order);
  out.certified_order = cert;
  return out;
}

BranchSet expand_until_separated(const Family& f, BranchBackend backend,
                                 const NumericOptions& opt) {
  std::vector<Rational> depths{Rational(2), Rational((f.trunc() + 3) / 2), Rational(f.trunc() + 1)};
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  for (size_t k = 0; k < depths.size(); ++k) {
    BranchSet bs = expand_branches(f, backend, depths[k], opt);
    try {
      separation_orders(bs, opt);
      return bs;
    } catch (const Error& e) {
      if (k + 1 == depths.size()) throw;
      if (std::string(e.what()).find("insufficient depth") == std::string::npos) throw;
    }
  }
  fail_hypothesis("insufficient depth");
}

std::optional<Rational> branch_residual_order(const Family& f, const PuiseuxBranch& b,
                                              const NumericOptions& opt) {
  long e = b.ramification;
  if (b.terms.empty() || std::all_of(b.terms.begin(), b.terms.end(), [](const auto& t) {
        return t.second.exact;
      })) {
    // Exact path: s(tau) is a polynomial in tau with t = tau^e.
    Poly s;
    for (const auto& [ex, c] : b.terms) {
      Rational tau_exp = ex * Rational(e);
      s += Poly::constant(c.q).mul_var(Var::t, static_cast<uint32_t>(floor_long(tau_exp)));
    }
    // Rescale t = tau^e first, then substitute x = s(tau).
    Poly te = Poly::variable(Var::t, static_cast<uint32_t>(e));
    Poly res = f.as_poly().substitute(Var::t, te).substitute(Var::x, s);
    if (res.is_zero()) return std::nullopt;
    return Rational(res.t_order(), e);
  }
  // Numeric path.
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision_bits);
  long max_tau = (f.trunc() + 1) * e - 1;
  std::vector<Complex> s(static_cast<size_t>(max_tau) + 1, Complex(prec));
  for (const auto& [ex, c] : b.terms) {
    long te = floor_long(ex * Rational(e));
    if (te <= max_tau)
      s[static_cast<size_t>(te)] =
          c.exact ? Complex::of(c.q, prec) : c.c;
  }
  auto mul_trunc = [&](const std::vector<Complex>& a, const std::vector<Complex>& bb) {
    std::vector<Complex> r(static_cast<size_t>(max_tau) + 1, Complex(prec));
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (size_t j = 0; j < bb.size() && i + j <= static_cast<size_t>(max_tau); ++j)
        r[i + j] = r[i + j] + a[i] * bb[j];
    }
    return r;
  };
  std::vector<Complex> acc(static_cast<size_t>(max_tau) + 1, Complex(prec));
  Real scale = Real::of(0L, prec);
  for (int i = 0; i <= f.trunc(); ++i) {
    const Poly& fi = f.coeff(i);
    // Evaluate fi at s (Horner over tau-series).
    std::vector<Complex> val(static_cast<size_t>(max_tau) + 1, Complex(prec));
    long dj = fi.degree(Var::x);
    if (dj >= 0) {
      val[0] = Complex::of(fi.coeff_of(Var::x, static_cast<uint32_t>(dj)).constant_value(), prec);
      for (long j = dj - 1; j >= 0; --j) {
        val = mul_trunc(val, s);
        val[0] = val[0] + Complex::of(fi.coeff_of(Var::x, static_cast<uint32_t>(j)).constant_value(), prec);
      }
    }
    long shift = static_cast<long>(i) * e;
    for (long k = 0; k + shift <= max_tau; ++k)
      acc[static_cast<size_t>(k + shift)] = acc[static_cast<size_t>(k + shift)] + val[static_cast<size_t>(k)];
  }
  for (const Complex& v : acc) scale = max(scale, v.abs());
  if (scale.is_zero()) return std::nullopt;
  Real tol = scale * Real::pow2(-(opt.precision_bits / 2), prec);
  for (long k = 0; k <= max_tau; ++k)
    if (acc[static_cast<size_t>(k)].abs() > tol) return Rational(k, e);
  return std::nullopt;
}

SeparationOrders separation_orders(const BranchSet& bs, const NumericOptions& opt) {
  SeparationOrders out;
  out.distinct_margin = 1e308;
  const mpfr_prec_t prec =
      bs.precision_bits > 0 ? static_cast<mpfr_prec_t>(bs.precision_bits) : 256;
  Real ctol = Real::of(opt.cluster_tol, prec);
  auto coeff_at = [&](const PuiseuxBranch& b, const Rational& ex) -> PuiseuxCoeff {
    for (const auto& [e, c] : b.terms)
      if (e == ex) return c;
    PuiseuxCoeff z;
    z.exact = bs.backend == BranchBackend::Exact;
    z.q = Rational(0);
    z.c = Complex(prec);
    return z;
  };
  auto differ = [&](const PuiseuxCoeff& a, const PuiseuxCoeff& b, double& margin) {
    if (a.exact && b.exact) return a.q != b.q;
    Complex av = a.exact ? Complex::of(a.q, prec) : a.c;
    Complex bv = b.exact ? Complex::of(b.q, prec) : b.c;
    Real diff = (av - bv).abs();
    Real scale = max(Real::of(1L, prec), max(av.abs(), bv.abs()));
    Real thr = ctol * scale;
    bool distinct = diff > thr;
    double ratio = distinct ? (diff / thr).to_double() : (diff.is_zero() ? 1e308 : (thr / diff).to_double());
    margin = std::min(margin, ratio);
    return distinct;
  };
  int n = static_cast<int>(bs.branches.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& bi = bs.branches[i];
      const auto& bj = bs.branches[j];
      double margin = 1e308;
      // Shared center?
      if (differ(bi.center(), bj.center(), margin)) {
        out.distinct_margin = std::min(out.distinct_margin, margin);
        continue;
      }
      // Merge exponent lists.
      std::vector<Rational> exps;
      for (const auto& [e, c] : bi.terms)
        if (!e.is_zero()) exps.push_back(e);
      for (const auto& [e, c] : bj.terms)
        if (!e.is_zero()) exps.push_back(e);
      std::sort(exps.begin(), exps.end());
      exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
      Rational limit = std::min(bi.known_order, bj.known_order);
      std::optional<Rational> m;
      for (const Rational& e : exps) {
        if (e > limit) break;
        if (differ(coeff_at(bi, e), coeff_at(bj, e), margin)) {
          m = e;
          break;
        }
      }
      out.distinct_margin = std::min(out.distinct_margin, margin);
      if (!m) fail_hypothesis("insufficient depth: branches " + std::to_string(i) + "," +
                              std::to_string(j) + " not separated");
      out.orders[{i, j}] = *m;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic separation orders
// ---------------------------------------------------------------------------

namespace {

struct SymResult {
  bool has_pair = false;
  Rational m;
  Poly cert = Poly::constant(1);
};

SymResult sym_at_zero(const Family& f, int level) {
  if (level > kMaxLevels)
    fail_resource("polygon recursion cap exceeded (non-separating family?)");
  NewtonPolygonData p = newton_polygon(f);
  SymResult out;
  if (p.d <= 1) return out;
  if (p.tail_j >= 2)
    fail_hypothesis("branches do not separate to truncation order (increase trunc)");
  std::vector<Rational> group_ms;
  bool zero_tail_group = p.tail_j == 1;
  std::vector<Rational> candidates;
  for (const auto& e : p.edges) {
    Poly q = edge_char_poly(f, e);
    long degq = e.j0 - e.j1;
    long groups_here = 0;
    if (degq == 1) {
      groups_here = 1;
      group_ms.push_back(e.m);
    } else {
      Poly disc = discriminant(q, Var::x);
      if (!disc.is_zero()) {
        out.cert = out.cert * disc;
        groups_here = degq;
        for (long k = 0; k < degq; ++k) group_ms.push_back(e.m);
      } else {
        SquareFreeDecomposition sq;
        try {
          sq = squarefree_decompose(q);
        } catch (const Error&) {
          fail_hypothesis("repeated irrational characteristic root - use numeric backend");
        }
        for (size_t a = 0; a < sq.parts.size(); ++a)
          for (size_t b = a + 1; b < sq.parts.size(); ++b)
            out.cert = out.cert * resultant(sq.parts[a].first, sq.parts[b].first, Var::x);
        for (const auto& [part, mult] : sq.parts) {
          long pd = part.degree(Var::x);
          if (pd >= 2) out.cert = out.cert * discriminant(part, Var::x);
          if (mult == 1) {
            groups_here += pd;
            for (long k = 0; k < pd; ++k) group_ms.push_back(e.m);
          } else {
            if (pd > 1)
              fail_hypothesis("repeated irrational characteristic root - use numeric backend");
            Poly alpha = -part.coeff_of(Var::x, 0);
            Family::Ramified sub = f.substitute_ramified(e.m, alpha);
            SymResult deeper = sym_at_zero(sub.g, level + 1);
            if (!deeper.has_pair) fail_internal("repeated root cluster lost its pair");
            out.cert = out.cert * deeper.cert;
            candidates.push_back(e.m + deeper.m / Rational(sub.e));
            groups_here += 1;
            group_ms.push_back(e.m);
          }
        }
      }
    }
    if (groups_here >= 2) candidates.push_back(e.m);
  }
  // Cross-group pairs separate at the smaller valuation; the best cross pair
  // realizes the second-largest group valuation. The zero-tail group has
  // valuation beyond every edge, so it only ever contributes the other m.
  size_t total_groups = group_ms.size() + (zero_tail_group ? 1 : 0);
  if (total_groups >= 2 && !group_ms.empty()) {
    std::sort(group_ms.begin(), group_ms.end());
    Rational second = zero_tail_group ? group_ms.back()
                                      : group_ms[group_ms.size() - 2];
    candidates.push_back(second);
  }
  if (candidates.empty()) fail_internal("no separation candidates for d >= 2");
  out.has_pair = true;
  out.m = *std::max_element(candidates.begin(), candidates.end());
  return out;
}

// Division with remainder by a monic-in-x divisor; exact over any coefficient
// ring.
std::pair<Poly, Poly> divmod_monic_x(const Poly& a, const Poly& f) {
  long df = f.degree(Var::x);
  Poly r = a, q;
  while (r.degree(Var::x) >= df) {
    long dr = r.degree(Var::x);
    Poly lead = r.coeff_of(Var::x, static_cast<uint32_t>(dr));
    Poly term = lead.mul_var(Var::x, static_cast<uint32_t>(dr - df));
    q += term;
    r -= term * f;
  }
  return {q, r};
}

SymResult sym_fadic(const Family& fam, const Poly& f) {
  // Level-1 analysis at the conjugate roots of f via the f-adic expansion of
  // each F_i; recursion would need the roots themselves, so a repeated
  // characteristic root is an error here.
  std::vector<std::vector<Poly>> digits(static_cast<size_t>(fam.trunc()) + 1);
  for (int i = 0; i <= fam.trunc(); ++i) {
    Poly r = fam.coeff(i);
    while (!r.is_zero()) {
      auto [q, rem] = divmod_monic_x(r, f);
      digits[static_cast<size_t>(i)].push_back(rem);
      r = q;
    }
  }
  SymResult out;
  std::vector<std::pair<long, long>> jmin;
  for (int i = 0; i <= fam.trunc(); ++i) {
    const auto& row = digits[static_cast<size_t>(i)];
    for (size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_zero()) {
        jmin.emplace_back(i, static_cast<long>(j));
        break;
      }
    }
  }
  if (jmin.empty() || jmin[0].first != 0) fail_internal("f-adic expansion lost F_0");
  long d = jmin[0].second;  // = n_nu
  if (d <= 1) return out;
  Frontier fr = build_frontier(std::move(jmin));
  if (fr.tail_j >= 2)
    fail_hypothesis("branches do not separate to truncation order (increase trunc)");
  auto digit_at = [&](long i, long j) -> Poly {
    const auto& row = digits[static_cast<size_t>(i)];
    if (j < 0 || j >= static_cast<long>(row.size())) return Poly();
    return row[static_cast<size_t>(j)];
  };
  std::vector<Rational> group_ms;
  std::vector<Rational> candidates;
  for (const auto& e : fr.edges) {
    // Char poly in Var::z over Q[x, y]; digits must not vanish at any root.
    Poly q;
    for (const auto& [i, j] : edge_lattice(e)) {
      Poly c = digit_at(i, j);
      if (c.is_zero()) continue;
      Poly rchk = resultant(f, c, Var::x);
      if (rchk.is_zero())
        fail_hypothesis("component-dependent support - supply finer F0_factors or use numeric backend");
      out.cert = out.cert * rchk;
      q += c.mul_var(Var::z, static_cast<uint32_t>(j - e.j1));
    }
    long degq = e.j0 - e.j1;
    if (degq >= 2) {
      Poly disc = discriminant(q, Var::z);
      Poly dmod = divmod_monic_x(disc, f).second;
      if (dmod.is_zero())
        fail_hypothesis("repeated irrational characteristic root - use numeric backend");
      Poly rr = resultant(f, dmod, Var::x);
      if (rr.is_zero())
        fail_hypothesis("repeated irrational characteristic root - use numeric backend");
      out.cert = out.cert * rr;
      candidates.push_back(e.m);
    }
    for (long k = 0; k < degq; ++k) group_ms.push_back(e.m);
  }
  bool zero_tail_group = fr.tail_j == 1;
  size_t total_groups = group_ms.size() + (zero_tail_group ? 1 : 0);
  if (total_groups >= 2 && !group_ms.empty()) {
    std::sort(group_ms.begin(), group_ms.end());
    candidates.push_back(zero_tail_group ? group_ms.back() : group_ms[group_ms.size() - 2]);
  }
  if (candidates.empty()) fail_internal("no separation candidates for d >= 2");
  out.has_pair = true;
  out.m = *std::max_element(candidates.begin(), candidates.end());
  return out;
}

}  // namespace

SymbolicSeparation separation_orders_symbolic(const Family& f, const Poly& f_nu) {
  if (f_nu.degree(Var::x) < 1) fail_hypothesis("component must have positive x-degree");
  SymResult res;
  if (f_nu.degree(Var::x) == 1) {
    Poly lc = f_nu.leading_coeff(Var::x);
    if (!lc.is_constant()) fail_hypothesis("component is not monic-normalizable");
    Poly a = -(f_nu.coeff_of(Var::x, 0).scaled(lc.constant_value().inverse()));
    Family g = a.is_zero() ? f : f.shift_x(a);
    res = sym_at_zero(g, 0);
  } else {
    Poly lc = f_nu.leading_coeff(Var::x);
    if (!lc.is_constant()) fail_hypothesis("component is not monic-normalizable");
    Poly fmonic = f_nu.scaled(lc.constant_value().inverse());
    res = sym_fadic(f, fmonic);
  }
  SymbolicSeparation out;
  out.has_pair = res.has_pair;
  out.m_nu = res.has_pair ? res.m : Rational(0);
  out.certificate = res.cert;
  return out;
}

}  // namespace duallim
