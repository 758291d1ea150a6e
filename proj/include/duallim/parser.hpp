#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duallim/family.hpp"
#include "duallim/poly.hpp"

namespace duallim {

// Which variables an expression may mention.
struct VarSet {
  bool x = true, y = false, z = false, t = true;
  static VarSet affine_q() { return {true, false, false, true}; }
  static VarSet affine_qy() { return {true, true, false, true}; }
  static VarSet homogeneous() { return {true, true, true, true}; }
  bool allows(Var v) const;
};

// Low-level expression parser. Grammar (documented in docs/formats.md):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*            ; no implicit multiplication
//   factor := '-' factor | power
//   power  := atom ('^' nat)?                 ; '^' binds tightest
//   atom   := rational | var | '(' expr ')'
//   rational := int ('/' nat)?                ; a literal, binds tighter than '^'
Poly parse_expression(const std::string& text, const VarSet& vars);

// Parses an expression and forms a truncated family. Terms of t-order
// greater than trunc are an error, never silently dropped.
Family parse_family_expression(const std::string& text, int trunc, const VarSet& vars);

// Line-oriented family file: `key = value`, '#' comments.
// Keys: ring, trunc, F, F0_factors, mode, precision, degree (homogeneous).
struct FamilyFile {
  enum class Ring { Q, Qy };
  Ring ring = Ring::Qy;
  int trunc = 1;
  std::optional<Family> family;            // affine input (absent if homogeneous)
  bool homogeneous = false;
  int degree = 0;                          // homogeneous total degree n
  std::vector<Poly> homog_coeffs;          // homogeneous F_0..F_trunc in x,y,z
  std::vector<std::pair<Poly, int>> f0_factors;
  std::string mode = "exact";
  int precision_bits = 256;

  VarSet vars() const;
};

FamilyFile load_family_file(const std::string& text);
FamilyFile load_family_file_path(const std::string& path);

}  // namespace duallim
