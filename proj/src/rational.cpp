#include "duallim/rational.hpp"

#include <cctype>
#include <ostream>

#include "duallim/errors.hpp"

namespace duallim {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) fail_internal("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) fail_internal("rational with zero denominator");
  v_.canonicalize();
}

bool Rational::parse(const std::string& text, Rational& out) {
  if (text.empty()) return false;
  size_t i = 0;
  if (text[i] == '+' || text[i] == '-') ++i;
  if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      out = Rational(mpq_class(mpz_class(text), 1));
    } else {
      std::string num = text.substr(0, slash);
      std::string den = text.substr(slash + 1);
      if (den.empty() || den[0] == '-' || den[0] == '+') return false;
      mpz_class d(den);
      if (d == 0) return false;
      out = Rational(mpz_class(num), d);
    }
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail_internal("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) fail_internal("inverse of zero");
  return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  const Rational base = e > 0 ? *this : inverse();
  unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
  mpq_class acc(1);
  mpq_class b = base.v_;
  while (n > 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return Rational(std::move(acc));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

long floor_long(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
  if (!q.fits_slong_p()) fail_resource("exponent overflow in floor");
  return q.get_si();
}

}  // namespace duallim
