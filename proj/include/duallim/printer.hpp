#pragma once

#include <string>

#include "duallim/family.hpp"
#include "duallim/poly.hpp"

namespace duallim {

// Canonical, re-parseable text forms. parse(print(v)) == v for every value
// the library produces.

std::string print_poly(const Poly& p);

// Groups by ascending t-power: "-8 - 71*t - 4*t^2".
std::string print_series_t(const Poly& p);

// "x^3 + x^2 + (x + 2)*t": F_0 first, then per-order coefficients.
std::string print_family(const Family& f);

namespace detail {
// Renders coeff * t^order as the tail of a sum ("+ (x + 2)*t" without the
// leading joiner); used by both series and family printing.
std::string series_term(const Poly& coeff, int order, bool& negative_out);
}  // namespace detail

}  // namespace duallim
