#include "duallim/elimination.hpp"

#include <algorithm>

#include "duallim/errors.hpp"

namespace duallim {

namespace {

// lc(b)^(deg a - deg b + 1) * a mod b, exact in the coefficient domain.
Poly pseudo_remainder(const Poly& a, const Poly& b, Var v) {
  long da = a.degree(v), db = b.degree(v);
  if (db < 0 || da < db) fail_internal("pseudo_remainder: bad degrees");
  Poly lb = b.leading_coeff(v);
  Poly r = a;
  long k = da - db + 1;
  while (!r.is_zero() && r.degree(v) >= db) {
    long dr = r.degree(v);
    Poly lr = r.leading_coeff(v);
    r = lb * r - lr.mul_var(v, static_cast<uint32_t>(dr - db)) * b;
    --k;
  }
  while (k-- > 0) r = r * lb;
  return r;
}

Poly must_divide(const Poly& a, const Poly& b, const char* where) {
  auto q = Poly::try_divide(a, b);
  if (!q) fail_internal(std::string("exact division failed in ") + where);
  return *q;
}

}  // namespace

Poly exact_divide(const Poly& f, const Poly& g) {
  if (g.is_zero()) fail_hypothesis("division by zero polynomial");
  auto q = Poly::try_divide(f, g);
  if (!q) fail_hypothesis("not divisible");
  return *q;
}

Poly resultant(const Poly& f, const Poly& g, Var v) {
  if (f.is_zero() || g.is_zero()) fail_hypothesis("resultant of a zero polynomial");
  long df = f.degree(v), dg = g.degree(v);
  if (df == 0 && dg == 0) fail_hypothesis("resultant undefined for two constants");
  if (df == 0) return f.pow(static_cast<uint32_t>(dg));
  if (dg == 0) return g.pow(static_cast<uint32_t>(df));

  Poly a = f, b = g;
  int sign = 1;
  if (df < dg) {
    std::swap(a, b);
    if ((df & 1) && (dg & 1)) sign = -sign;
  }
  Poly gprev = Poly::constant(1);
  Poly h = Poly::constant(1);
  while (true) {
    long da = a.degree(v), db = b.degree(v);
    long delta = da - db;
    if ((da & 1) && (db & 1)) sign = -sign;
    Poly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) {
      // gcd has positive degree in v.
      return Poly();
    }
    a = b;
    Poly divisor = gprev * h.pow(static_cast<uint32_t>(delta));
    b = must_divide(r, divisor, "subresultant PRS");
    gprev = a.leading_coeff(v);
    if (delta == 1) {
      h = gprev;
    } else if (delta > 1) {
      h = must_divide(gprev.pow(static_cast<uint32_t>(delta)),
                      h.pow(static_cast<uint32_t>(delta - 1)), "subresultant h");
    }
    if (b.degree(v) == 0) break;
  }
  long da = a.degree(v);
  Poly res = must_divide(b.pow(static_cast<uint32_t>(da)),
                         h.pow(static_cast<uint32_t>(da - 1)), "subresultant final");
  return sign < 0 ? -res : res;
}

Poly resultant_sylvester(const Poly& f, const Poly& g, Var v) {
  if (f.is_zero() || g.is_zero()) fail_hypothesis("resultant of a zero polynomial");
  long n = f.degree(v), m = g.degree(v);
  if (n == 0 && m == 0) fail_hypothesis("resultant undefined for two constants");
  if (n == 0) return f.pow(static_cast<uint32_t>(m));
  if (m == 0) return g.pow(static_cast<uint32_t>(n));
  long size = n + m;
  std::vector<std::vector<Poly>> mat(static_cast<size_t>(size),
                                     std::vector<Poly>(static_cast<size_t>(size)));
  for (long r = 0; r < m; ++r)
    for (long k = 0; k <= n; ++k)
      mat[static_cast<size_t>(r)][static_cast<size_t>(r + k)] =
          f.coeff_of(v, static_cast<uint32_t>(n - k));
  for (long r = 0; r < n; ++r)
    for (long k = 0; k <= m; ++k)
      mat[static_cast<size_t>(m + r)][static_cast<size_t>(r + k)] =
          g.coeff_of(v, static_cast<uint32_t>(m - k));

  // Bareiss fraction-free elimination.
  int sign = 1;
  Poly prev = Poly::constant(1);
  for (long k = 0; k < size - 1; ++k) {
    if (mat[static_cast<size_t>(k)][static_cast<size_t>(k)].is_zero()) {
      long swap_row = -1;
      for (long r = k + 1; r < size; ++r) {
        if (!mat[static_cast<size_t>(r)][static_cast<size_t>(k)].is_zero()) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return Poly();
      std::swap(mat[static_cast<size_t>(k)], mat[static_cast<size_t>(swap_row)]);
      sign = -sign;
    }
    for (long i = k + 1; i < size; ++i) {
      for (long j = k + 1; j < size; ++j) {
        Poly num = mat[static_cast<size_t>(k)][static_cast<size_t>(k)] *
                       mat[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                   mat[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                       mat[static_cast<size_t>(k)][static_cast<size_t>(j)];
        mat[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            must_divide(num, prev, "Bareiss");
      }
      mat[static_cast<size_t>(i)][static_cast<size_t>(k)] = Poly();
    }
    prev = mat[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  Poly det = mat[static_cast<size_t>(size - 1)][static_cast<size_t>(size - 1)];
  return sign < 0 ? -det : det;
}

Poly discriminant(const Poly& f, Var v) {
  long n = f.degree(v);
  if (n < 1) fail_hypothesis("discriminant requires degree >= 1");
  if (n == 1) return Poly::constant(1);
  Poly res = resultant(f, f.derivative(v), v);
  Poly lc = f.leading_coeff(v);
  Poly d = must_divide(res, lc, "discriminant");
  bool negate = ((n * (n - 1) / 2) % 2) != 0;
  return negate ? -d : d;
}

SquareFreeDecomposition squarefree_decompose(const Poly& f) {
  if (f.is_zero()) fail_hypothesis("square-free decomposition of zero");
  if (f.uses(Var::t) || f.uses(Var::z))
    fail_internal("square-free decomposition expects a polynomial in x, y");
  SquareFreeDecomposition out;
  if (f.degree(Var::x) == 0) {
    out.unit = f;
    return out;
  }
  Poly content = f.content(Var::x);
  Poly p = must_divide(f, content, "content split");
  Poly lc = p.leading_coeff(Var::x);
  if (!lc.is_constant()) fail_hypothesis("cannot monic-normalize over Q[y]");
  Rational c = lc.constant_value();
  p = p.scaled(c.inverse());
  out.unit = content.scaled(c);

  // Yun's algorithm on the monic part.
  Poly dp = p.derivative(Var::x);
  Poly g = Poly::gcd(p, dp);
  Poly v = must_divide(p, g, "Yun v");
  Poly w = must_divide(dp, g, "Yun w");
  int i = 1;
  while (v.degree(Var::x) > 0) {
    Poly zz = w - v.derivative(Var::x);
    Poly h = Poly::gcd(v, zz);
    if (h.degree(Var::x) > 0) out.parts.emplace_back(h, i);
    v = must_divide(v, h, "Yun step v");
    w = must_divide(zz, h, "Yun step w");
    ++i;
  }
  return out;
}

namespace {

// Divisors of |n| by trial-division factorization. Primes beyond the budget
// stay glued in one atomic cofactor; see the repo docs for the consequence.
std::vector<mpz_class> divisors_of(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  if (n == 0) fail_internal("divisors of zero");
  std::vector<std::pair<mpz_class, int>> factors;
  auto push = [&](const mpz_class& p, int e) { factors.emplace_back(p, e); };
  mpz_class m = n;
  const unsigned long kBudget = 1000000;
  for (unsigned long d = 2; d <= kBudget; d = (d == 2 ? 3 : d + 2)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      int e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        ++e;
      }
      push(mpz_class(d), e);
    }
    mpz_class dd(d);
    if (dd * dd > m) break;
  }
  if (m > 1) push(m, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factors) {
    size_t count = divs.size();
    mpz_class pe(1);
    for (int k = 1; k <= e; ++k) {
      pe *= p;
      for (size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pe);
    }
    if (divs.size() > 200000) fail_resource("too many divisor candidates");
  }
  return divs;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const Poly& f) {
  if (f.is_zero()) fail_hypothesis("rational roots of zero polynomial");
  if (f.uses(Var::y) || f.uses(Var::z) || f.uses(Var::t))
    fail_internal("rational_roots expects a univariate polynomial in x over Q");
  std::vector<std::pair<Rational, int>> roots;
  long n = f.degree(Var::x);
  if (n == 0) return roots;

  // Strip x^k.
  long k0 = n;
  for (const auto& [m, c] : f.terms()) k0 = std::min<long>(k0, m[Var::x]);
  Poly g = f;
  if (k0 > 0) {
    Poly q;
    for (const auto& [m, c] : f.terms()) {
      Monomial r = m;
      r[Var::x] -= static_cast<uint32_t>(k0);
      q.add_term(r, c);
    }
    g = q;
    roots.emplace_back(Rational(0), static_cast<int>(k0));
  }
  if (g.degree(Var::x) == 0) return roots;

  Poly gi = g.integer_normalized();
  long d = gi.degree(Var::x);
  mpz_class lead = gi.coeff_of(Var::x, static_cast<uint32_t>(d)).constant_value().numerator();
  mpz_class trail = gi.coeff_of(Var::x, 0).constant_value().numerator();
  std::vector<mpz_class> ps = divisors_of(trail);
  std::vector<mpz_class> qs = divisors_of(lead);

  auto eval_zero = [&](const Rational& r) {
    // Horner evaluation, exact.
    Rational acc(0);
    for (long k = d; k >= 0; --k)
      acc = acc * r + gi.coeff_of(Var::x, static_cast<uint32_t>(k)).constant_value();
    return acc.is_zero();
  };

  std::vector<Rational> found;
  for (const mpz_class& p : ps) {
    for (const mpz_class& q : qs) {
      mpz_class gg;
      mpz_gcd(gg.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
      if (gg != 1) continue;  // only lowest terms, avoids duplicates
      for (int s : {1, -1}) {
        Rational cand(s > 0 ? p : mpz_class(-p), q);
        if (eval_zero(cand)) found.push_back(cand);
      }
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (const Rational& r : found) {
    Poly lin = Poly::variable(Var::x) - Poly::constant(r);
    int mult = 0;
    Poly rem = g;
    while (true) {
      auto q = Poly::try_divide(rem, lin);
      if (!q) break;
      rem = *q;
      ++mult;
    }
    roots.emplace_back(r, mult);
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return roots;
}

}  // namespace duallim
