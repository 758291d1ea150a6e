#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "duallim/elimination.hpp"
#include "duallim/family.hpp"
#include "duallim/numeric_roots.hpp"

namespace duallim {

struct NewtonPolygonData {
  // Support points (i = t-exponent, j = x-exponent) with a nonzero
  // coefficient in Q[y].
  std::vector<std::pair<long, long>> support;
  // Lower-hull vertices from (0, j_max at i=0) down to the vertex of minimal
  // x-exponent, i ascending.
  std::vector<std::pair<long, long>> hull_vertices;
  long d = 0;  // largest d with x^d | F_0
  // -1/m1 is the slope of the leading edge through (0, d); absent when d = 0
  // or no descending edge exists.
  std::optional<Rational> m1;

  struct Edge {
    long i0, j0, i1, j1;  // j0 > j1
    Rational m;           // (i1 - i0) / (j0 - j1) > 0
  };
  // Descending edges starting at (0, d), ordered by increasing m.
  std::vector<Edge> edges;
  // x-exponent at the right end of the frontier; edges cover d - tail_j of
  // the branches at center 0, the remaining tail_j stay at 0 beyond the data.
  long tail_j = 0;
};

NewtonPolygonData newton_polygon(const Family& f);

struct TruncationData {
  Family f1_prime;   // terms of F on the leading edge
  Poly char_poly;    // P(s) = sum a_{m1(d-j), j} s^j, with s stored as Var::x
  Rational m1;
};

TruncationData first_truncation(const Family& f);

enum class BranchBackend { Exact, Numeric };

struct PuiseuxCoeff {
  bool exact = true;
  Rational q;       // exact value
  Complex c{64};    // numeric value
  std::string str() const;
};

// A t-root s(t) = sum coeff * t^exponent with exponents in (1/e)Z.
struct PuiseuxBranch {
  int ramification = 1;
  std::vector<std::pair<Rational, PuiseuxCoeff>> terms;  // ascending exponents
  // All series terms with exponent <= known_order are present.
  Rational known_order;

  PuiseuxCoeff center() const;  // exponent-0 coefficient, 0 if none
  std::string str() const;      // canonical text, e.g. "2 - t^(3/2)"
};

struct BranchSet {
  std::vector<PuiseuxBranch> branches;
  BranchBackend backend = BranchBackend::Exact;
  long precision_bits = 0;
  Rational certified_order;
};

// All n' branches of F to t-order >= depth. The exact backend requires every
// encountered characteristic polynomial to split over Q; the numeric backend
// requires Q coefficients (y absent).
BranchSet expand_branches(const Family& f, BranchBackend backend, const Rational& depth,
                          const NumericOptions& opt = {});

// Doubles the depth until every same-center pair of branches has separated.
BranchSet expand_until_separated(const Family& f, BranchBackend backend,
                                 const NumericOptions& opt = {});

// t-order of F(s(t), t); used to verify the branch-residual invariant.
// Returns the order in t units (>= branch.known_order when the branch is
// correct); nullopt when the residual vanishes to the family's truncation.
std::optional<Rational> branch_residual_order(const Family& f, const PuiseuxBranch& b,
                                              const NumericOptions& opt = {});

struct SeparationOrders {
  // m(i,j) > 0 for branch pairs sharing a center, keyed by branch indices.
  std::map<std::pair<int, int>, Rational> orders;
  // Numeric mode: smallest coefficient gap treated as "distinct", divided by
  // the clustering tolerance. Large values mean the classification is safe.
  double distinct_margin = 0.0;
};

SeparationOrders separation_orders(const BranchSet& b, const NumericOptions& opt = {});

struct SymbolicSeparation {
  bool has_pair = false;  // some pair of branches shares a center of f_nu
  Rational m_nu;          // max separation order (0 when no pair)
  // Nonzero element of Q[y] certifying every distinctness decision; the
  // exceptional y-values are its roots. Constant 1 over Q.
  Poly certificate = Poly::constant(1);
};

// m_nu for the component f_nu without root extraction: polygon slopes plus
// discriminant/gcd distinctness certificates, recursing only through
// repeated rational characteristic roots.
SymbolicSeparation separation_orders_symbolic(const Family& f, const Poly& f_nu);

}  // namespace duallim
