#include "duallim/printer.hpp"

#include <sstream>

namespace duallim {

namespace {

const char* kVarNames[kNumVars] = {"x", "y", "z", "t"};

// Renders |c| * monomial; returns whether c was negative.
std::string term_text(const Rational& c, const Monomial& m, bool& negative) {
  negative = c.sign() < 0;
  Rational a = c.abs();
  std::ostringstream os;
  bool have_factor = false;
  if (!a.is_one() || m.total() == 0) {
    os << a.str();
    have_factor = true;
  }
  for (int i = 0; i < kNumVars; ++i) {
    uint32_t e = m.e[i];
    if (e == 0) continue;
    if (have_factor) os << "*";
    os << kVarNames[i];
    if (e > 1) os << "^" << e;
    have_factor = true;
  }
  return os.str();
}

std::string join_terms(const std::vector<std::pair<bool, std::string>>& parts) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [neg, text] : parts) {
    if (first) {
      if (neg) os << "-";
      os << text;
      first = false;
    } else {
      os << (neg ? " - " : " + ") << text;
    }
  }
  return os.str();
}

}  // namespace

std::string print_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<bool, std::string>> parts;
  for (const auto& [m, c] : p.terms()) {
    bool neg = false;
    std::string t = term_text(c, m, neg);
    parts.emplace_back(neg, std::move(t));
  }
  return join_terms(parts);
}

namespace detail {

std::string series_term(const Poly& coeff, int order, bool& negative_out) {
  negative_out = false;
  std::ostringstream os;
  std::string tpow = order == 1 ? "t" : "t^" + std::to_string(order);
  if (order == 0) return print_poly(coeff);
  if (coeff.term_count() == 1) {
    const auto& [m, c] = *coeff.terms().begin();
    bool neg = false;
    std::string body = term_text(c, m, neg);
    negative_out = neg;
    if (c.abs().is_one() && m.total() == 0) return tpow;  // "t^2", sign via joiner
    return body + "*" + tpow;
  }
  return "(" + print_poly(coeff) + ")*" + tpow;
}

}  // namespace detail

std::string print_series_t(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<bool, std::string>> parts;
  long dt = p.degree(Var::t);
  for (long i = 0; i <= dt; ++i) {
    Poly ci = p.coeff_of(Var::t, static_cast<uint32_t>(i));
    if (ci.is_zero()) continue;
    bool neg = false;
    std::string text = detail::series_term(ci, static_cast<int>(i), neg);
    parts.emplace_back(neg, std::move(text));
  }
  return join_terms(parts);
}

std::string print_family(const Family& f) {
  std::vector<std::pair<bool, std::string>> parts;
  for (int i = 0; i <= f.trunc(); ++i) {
    const Poly& ci = f.coeff(i);
    if (ci.is_zero()) continue;
    bool neg = false;
    std::string text = detail::series_term(ci, i, neg);
    parts.emplace_back(neg, std::move(text));
  }
  if (parts.empty()) return "0";
  return join_terms(parts);
}

}  // namespace duallim
