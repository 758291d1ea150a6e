#include "duallim/mp_float.hpp"

#include <cstdio>
#include <vector>

namespace duallim {

std::string Real::str(int digits) const {
  if (digits <= 0) digits = static_cast<int>(static_cast<double>(prec()) * 0.30103) + 1;
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data());
}

Complex operator/(const Complex& a, const Complex& b) {
  Real d = b.norm();
  return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}

std::string Complex::str(int digits) const {
  if (im.is_zero()) return re.str(digits);
  std::string s = re.str(digits);
  if (im.sign() >= 0)
    s += " + " + im.str(digits) + "*i";
  else
    s += " - " + (-im).str(digits) + "*i";
  return s;
}

}  // namespace duallim
