#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "duallim/components.hpp"
#include "duallim/family.hpp"
#include "duallim/parser.hpp"
#include "duallim/vertex_zd.hpp"

namespace duallim {

// F(t) = sum F_i(x,y,z) t^i, each F_i homogeneous of the same degree n.
struct HomogeneousFamily {
  int degree = 0;
  int trunc = 0;
  std::vector<Poly> coeffs;

  static HomogeneousFamily from_file(const FamilyFile& file);
};

using Matrix3 = std::array<std::array<long, 3>, 3>;

struct CoordinateCheck {
  bool cond1 = false;  // F_0(1,0,0) != 0
  bool cond2 = false;  // proxy: F_0(x,y,0) square-free as a binary form
  std::string note;
  std::optional<Matrix3> suggested_transform;
  bool ok() const { return cond1 && cond2; }
};

CoordinateCheck check_coordinates(const HomogeneousFamily& h);
HomogeneousFamily apply_coordinate_change(const HomogeneousFamily& h, const Matrix3& m);

// Restriction to the affine open z = 1, monic-normalized in x by the
// constant x^n coefficient. Requires the coordinate checks to pass.
Family dehomogenize(const HomogeneousFamily& h);

struct PencilEntry {
  enum class Kind { Cross, ZdDelta, ZdAlpha };
  Kind kind = Kind::Cross;
  std::string description;
  long multiplicity = 0;  // negative for the Z(A_nu) part
  Poly restriction;       // element of Q[y]
  std::optional<Poly> partner_affine;  // second locus for point recovery
  size_t nu = 0;
};

struct LimitCycle {
  std::vector<std::pair<Poly, int>> dual_components;  // (F_nu0 homogeneous, n_nu)
  std::vector<PencilEntry> vertex_pencils;
  Poly delta0;       // oracle Delta'_0 of the monic affine family
  Poly disc_factor;  // prod Delta(f_nu)^n_nu
  VertexReport vertex;
  bool homogenization_consistent = true;
};

LimitCycle limit_dual_cycle(const HomogeneousFamily& h,
                            const std::vector<std::pair<Poly, int>>& user_factors,
                            const NumericOptions& opt = {});

struct VertexPoint {
  Rational x0, y0;  // the point (x0 : y0 : 1)
  std::string via;  // which pencil produced it
};

struct VerticesReport {
  bool exact = false;
  Poly ver_poly;  // ver(F) in Q[y] when exact
  std::vector<std::pair<Poly, int>> squarefree_parts;  // in y
  std::vector<Rational> vertex_lines_y;                // rational roots y0
  std::vector<VertexPoint> points;
};

VerticesReport vertices_report(const HomogeneousFamily& h,
                               const std::vector<std::pair<Poly, int>>& user_factors,
                               const NumericOptions& opt = {});

}  // namespace duallim
