#include "duallim/poly.hpp"

#include <atomic>

#include "duallim/errors.hpp"

namespace duallim {

namespace {
std::atomic<uint32_t> g_max_xyz{64};
constexpr uint32_t kMaxT = 1u << 14;
}  // namespace

uint32_t DegreeLimits::max_xyz() { return g_max_xyz.load(); }
uint32_t DegreeLimits::max_t() { return kMaxT; }
void DegreeLimits::set_max_xyz(uint32_t v) { g_max_xyz.store(v); }

void Poly::check_limits(const Monomial& m) const {
  const uint32_t cap = DegreeLimits::max_xyz();
  if (m.e[0] > cap || m.e[1] > cap || m.e[2] > cap)
    fail_resource("degree limit exceeded");
  if (m.e[3] > kMaxT) fail_resource("degree limit exceeded (t)");
}

Poly Poly::constant(Rational c) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(Monomial{}, std::move(c));
  return p;
}

Poly Poly::variable(Var v, uint32_t power) {
  Monomial m;
  m[v] = power;
  return term(Rational(1), m);
}

Poly Poly::term(Rational c, Monomial m) {
  Poly p;
  if (!c.is_zero()) {
    p.check_limits(m);
    p.terms_.emplace(m, std::move(c));
  }
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first.total() == 0;
}

Rational Poly::constant_value() const {
  Monomial one;
  auto it = terms_.find(one);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Poly::uses(Var v) const {
  for (const auto& [m, c] : terms_)
    if (m[v] > 0) return true;
  return false;
}

long Poly::degree(Var v) const {
  if (terms_.empty()) return -1;
  long d = 0;
  for (const auto& [m, c] : terms_) d = std::max<long>(d, m[v]);
  return d;
}

uint64_t Poly::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.total();
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::coeff_of(Var v, uint32_t k) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    if (m[v] == k) {
      Monomial r = m;
      r[v] = 0;
      out.terms_.emplace(r, c);
    }
  }
  return out;
}

Poly Poly::leading_coeff(Var v) const {
  long d = degree(v);
  if (d < 0) return Poly();
  return coeff_of(v, static_cast<uint32_t>(d));
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  check_limits(m);
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m;
      for (int i = 0; i < kNumVars; ++i) {
        uint64_t e = static_cast<uint64_t>(ma.e[i]) + mb.e[i];
        if (e > UINT32_MAX) fail_resource("degree limit exceeded");
        m.e[i] = static_cast<uint32_t>(e);
      }
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly operator*(const Poly& a, const Rational& c) { return a.scaled(c); }

Poly Poly::scaled(const Rational& c) const {
  Poly out;
  if (c.is_zero()) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

Poly Poly::pow(uint32_t e) const {
  Poly acc = Poly::constant(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = e > 1 ? base * base : base;
    e >>= 1;
  }
  return acc;
}

Poly Poly::derivative(Var v) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    uint32_t e = m[v];
    if (e == 0) continue;
    Monomial r = m;
    r[v] = e - 1;
    out.add_term(r, c * Rational(static_cast<long>(e)));
  }
  return out;
}

Poly Poly::mul_var(Var v, uint32_t power) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Monomial r = m;
    uint64_t e = static_cast<uint64_t>(r[v]) + power;
    if (e > UINT32_MAX) fail_resource("degree limit exceeded");
    r[v] = static_cast<uint32_t>(e);
    out.check_limits(r);
    out.terms_.emplace(r, c);
  }
  return out;
}

Poly Poly::substitute(Var v, const Poly& value) const {
  long d = degree(v);
  if (d <= 0) return *this;
  // Horner in v.
  Poly acc = coeff_of(v, static_cast<uint32_t>(d));
  for (long k = d - 1; k >= 0; --k) {
    acc = acc * value + coeff_of(v, static_cast<uint32_t>(k));
  }
  return acc;
}

Poly Poly::truncate_t(uint32_t bound) const {
  Poly out;
  for (const auto& [m, c] : terms_)
    if (m[Var::t] <= bound) out.terms_.emplace(m, c);
  return out;
}

long Poly::t_order() const {
  if (terms_.empty()) return -1;
  long best = -1;
  for (const auto& [m, c] : terms_) {
    long o = m[Var::t];
    if (best < 0 || o < best) best = o;
  }
  return best;
}

Poly Poly::divide_t_power(uint32_t k) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    if (m[Var::t] < k) fail_internal("divide_t_power: term below t^k");
    Monomial r = m;
    r[Var::t] -= k;
    out.terms_.emplace(r, c);
  }
  return out;
}

std::optional<Poly> Poly::try_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Poly();
  Poly r = a;
  Poly q;
  const auto& ltb = *b.terms_.begin();
  while (!r.is_zero()) {
    const auto& ltr = *r.terms_.begin();
    if (!ltb.first.divides(ltr.first)) return std::nullopt;
    Monomial m;
    for (int i = 0; i < kNumVars; ++i) m.e[i] = ltr.first.e[i] - ltb.first.e[i];
    Rational c = ltr.second / ltb.second;
    Poly t = Poly::term(c, m);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

// Pseudo-remainder of a by b in variable v: lc(b)^(da-db+1) * a mod b.
Poly pseudo_rem(const Poly& a, const Poly& b, Var v) {
  long da = a.degree(v), db = b.degree(v);
  if (db < 0) fail_internal("pseudo_rem by zero");
  if (da < db) {
    // Still multiply by the formal power so callers can rely on the identity.
    return a * b.leading_coeff(v).pow(1);
  }
  Poly lb = b.leading_coeff(v);
  Poly r = a;
  long k = da - db + 1;
  while (!r.is_zero() && r.degree(v) >= db) {
    long dr = r.degree(v);
    Poly lr = r.leading_coeff(v);
    // r := lb*r - lr * v^(dr-db) * b
    r = lb * r - lr.mul_var(v, static_cast<uint32_t>(dr - db)) * b;
    --k;
  }
  // Normalize the accumulated power so prem = lb^(da-db+1) a mod b exactly.
  while (k-- > 0) r = r * lb;
  return r;
}

Var main_variable(const Poly& a, const Poly& b) {
  for (Var v : {Var::x, Var::y, Var::z, Var::t})
    if (a.uses(v) || b.uses(v)) return v;
  return Var::x;
}

}  // namespace

Poly Poly::content(Var v) const {
  if (is_zero()) return Poly();
  long d = degree(v);
  Poly c;
  for (long k = d; k >= 0; --k) {
    Poly ck = coeff_of(v, static_cast<uint32_t>(k));
    if (ck.is_zero()) continue;
    c = c.is_zero() ? ck : Poly::gcd(c, ck);
    if (c.is_constant()) break;
  }
  return c.integer_normalized();
}

Poly Poly::primitive_part(Var v) const {
  if (is_zero()) return Poly();
  Poly c = content(v);
  auto q = try_divide(*this, c);
  if (!q) fail_internal("content does not divide polynomial");
  return *q;
}

Poly Poly::integer_normalized() const {
  if (is_zero()) return Poly();
  // lcm of denominators, gcd of numerators, positive leading coefficient.
  mpz_class den_lcm(1), num_gcd(0);
  for (const auto& [m, c] : terms_) {
    mpz_class d = c.denominator();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  for (const auto& [m, c] : terms_) {
    mpz_class n = c.numerator() * den_lcm / c.denominator();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale{den_lcm, num_gcd};
  if (terms_.begin()->second.sign() < 0) scale = -scale;
  return scaled(scale);
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return Poly();
  auto normalize = [](const Poly& g) {
    if (g.is_zero()) return g;
    // Monic when possible (constant leading coefficient in the lowest
    // present variable), integer-primitive otherwise.
    for (Var v : {Var::x, Var::y, Var::z, Var::t}) {
      if (g.uses(v)) {
        Poly lc = g.leading_coeff(v);
        if (lc.is_constant()) return g.scaled(lc.constant_value().inverse());
        return g.integer_normalized();
      }
    }
    return Poly::constant(1);  // nonzero constant: unit over Q
  };
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(1);

  Var v = main_variable(a, b);
  if (!a.uses(v)) {
    // a does not involve the main variable: gcd(a, content_v(b))
    return normalize(Poly::gcd(a, b.content(v)));
  }
  if (!b.uses(v)) return normalize(Poly::gcd(b, a.content(v)));

  Poly ca = a.content(v), cb = b.content(v);
  Poly cg = Poly::gcd(ca, cb);
  Poly pa = a.primitive_part(v), pb = b.primitive_part(v);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (true) {
    Poly r = pseudo_rem(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree(v) == 0) {
      // Coprime in v.
      return normalize(cg);
    }
    pa = pb;
    pb = r.primitive_part(v);
  }
  return normalize(cg * pb.primitive_part(v));
}

PolyFraction::PolyFraction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail_internal("polynomial fraction with zero denominator");
  reduce();
}

void PolyFraction::reduce() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *Poly::try_divide(num_, g);
    den_ = *Poly::try_divide(den_, g);
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(den_.constant_value().inverse());
    den_ = Poly::constant(1);
  } else {
    // Deterministic sign/scale: integer-primitive denominator.
    Poly dn = den_.integer_normalized();
    // den_ = s * dn for a rational s; rescale numerator accordingly.
    Rational s = den_.terms().begin()->second / dn.terms().begin()->second;
    num_ = num_.scaled(s.inverse());
    den_ = dn;
  }
}

Poly PolyFraction::as_polynomial() const {
  if (!den_.is_constant()) fail_internal("fraction is not a polynomial");
  return num_.scaled(den_.constant_value().inverse());
}

PolyFraction PolyFraction::operator-() const {
  PolyFraction r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

PolyFraction operator+(const PolyFraction& a, const PolyFraction& b) {
  return PolyFraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
PolyFraction operator-(const PolyFraction& a, const PolyFraction& b) {
  return PolyFraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
PolyFraction operator*(const PolyFraction& a, const PolyFraction& b) {
  return PolyFraction(a.num_ * b.num_, a.den_ * b.den_);
}
PolyFraction operator/(const PolyFraction& a, const PolyFraction& b) {
  if (b.is_zero()) fail_internal("polynomial fraction division by zero");
  return PolyFraction(a.num_ * b.den_, a.den_ * b.num_);
}
bool operator==(const PolyFraction& a, const PolyFraction& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

PolyFraction PolyFraction::pow(uint32_t e) const {
  return PolyFraction(num_.pow(e), den_.pow(e));
}

}  // namespace duallim
