#include "duallim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "duallim/disc_limit.hpp"
#include "duallim/dual_limit.hpp"
#include "duallim/errors.hpp"
#include "duallim/newton_puiseux.hpp"
#include "duallim/parser.hpp"
#include "duallim/printer.hpp"
#include "duallim/type_general.hpp"
#include "duallim/vertex_zd.hpp"

namespace duallim {

namespace {

using nlohmann::json;

struct LoadedInput {
  FamilyFile file;
  NumericOptions numeric;
  bool numeric_mode = false;
};

LoadedInput load_input(const RunConfig& cfg, const std::string& path) {
  LoadedInput in;
  in.file = load_family_file_path(path);
  if (cfg.trunc_override) {
    if (*cfg.trunc_override < 1) fail_parse("trunc must be >= 1", SourcePos{0, 0});
    FamilyFile& f = in.file;
    if (f.homogeneous) {
      fail_hypothesis("--trunc override is not supported for homogeneous files");
    }
    f.trunc = *cfg.trunc_override;
    f.family = f.family->with_trunc(f.trunc);
  }
  std::string mode = cfg.mode.value_or(in.file.mode);
  if (mode != "exact" && mode != "numeric") fail_parse("mode must be exact or numeric", {0, 0});
  in.numeric_mode = mode == "numeric";
  in.numeric.precision_bits = cfg.precision_given ? cfg.precision_bits : in.file.precision_bits;
  if (in.numeric.precision_bits < 64) fail_hypothesis("precision must be >= 64 bits");
  return in;
}

SpecialFiber fiber_of(const LoadedInput& in) {
  SpecialFiber fiber = split_special_fiber(*in.file.family, in.file.f0_factors);
  attach_exact_roots(fiber);
  return fiber;
}

json inputs_json(const RunConfig& cfg, const std::string& path, const LoadedInput& in) {
  json j;
  j["file"] = path;
  j["mode"] = in.numeric_mode ? "numeric" : "exact";
  j["precision_bits"] = in.numeric.precision_bits;
  j["trunc"] = in.file.trunc;
  if (cfg.subcommand == "type" || cfg.subcommand == "check") {
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
  }
  return j;
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::First: return "first";
    case Kind::Second: return "second";
    case Kind::Third: return "third";
    case Kind::Other: return "other";
  }
  return "other";
}

json branch_json(const PuiseuxBranch& b) {
  json terms = json::array();
  for (const auto& [e, c] : b.terms)
    terms.push_back({{"exponent", e.str()}, {"coeff", c.str()}});
  return json{{"ramification", b.ramification},
              {"terms", terms},
              {"known_order", b.known_order.str()},
              {"text", b.str()}};
}

// ---- per-subcommand handlers; each returns (text, result, certificates) ----

struct Report {
  std::string text;
  json result;
  json certificates;
};

Report do_parse(const LoadedInput& in) {
  Report r;
  std::ostringstream os;
  const FamilyFile& f = in.file;
  os << "ring = " << (f.ring == FamilyFile::Ring::Q ? "Q" : "Q[y]") << "\n";
  os << "trunc = " << f.trunc << "\n";
  if (f.homogeneous) {
    os << "degree = " << f.degree << "\n";
    Poly glued;
    for (size_t i = 0; i < f.homog_coeffs.size(); ++i)
      glued += f.homog_coeffs[i].mul_var(Var::t, static_cast<uint32_t>(i));
    os << "F = " << print_series_t(glued) << "\n";
    r.result["F"] = print_series_t(glued);
    r.result["degree"] = f.degree;
  } else {
    os << "F = " << print_family(*f.family) << "\n";
    r.result["F"] = print_family(*f.family);
    r.result["x_degree"] = f.family->x_degree();
  }
  if (!f.f0_factors.empty()) {
    std::string fs = "[";
    json jf = json::array();
    for (size_t i = 0; i < f.f0_factors.size(); ++i) {
      if (i) fs += ", ";
      fs += "(" + print_poly(f.f0_factors[i].first) + ", " +
            std::to_string(f.f0_factors[i].second) + ")";
      jf.push_back({{"factor", print_poly(f.f0_factors[i].first)},
                    {"multiplicity", f.f0_factors[i].second}});
    }
    fs += "]";
    os << "F0_factors = " << fs << "\n";
    r.result["f0_factors"] = jf;
  }
  r.result["ring"] = f.ring == FamilyFile::Ring::Q ? "Q" : "Q[y]";
  r.result["trunc"] = f.trunc;
  r.text = os.str();
  return r;
}

Report do_polygon(const LoadedInput& in) {
  if (in.file.homogeneous) fail_hypothesis("polygon expects an affine family file");
  NewtonPolygonData p = newton_polygon(*in.file.family);
  Report r;
  std::ostringstream os;
  os << "support:";
  json sup = json::array();
  for (const auto& [i, j] : p.support) {
    os << " (" << i << "," << j << ")";
    sup.push_back({i, j});
  }
  os << "\nvertices:";
  json verts = json::array();
  for (const auto& [i, j] : p.hull_vertices) {
    os << " (" << i << "," << j << ")";
    verts.push_back({i, j});
  }
  os << "\nd = " << p.d << "\n";
  if (p.m1)
    os << "m1 = " << p.m1->str() << "\n";
  else
    os << "m1 = undefined (leading edge empty)\n";
  json edges = json::array();
  os << "edges:";
  for (const auto& e : p.edges) {
    os << " (" << e.i0 << "," << e.j0 << ")-(" << e.i1 << "," << e.j1 << ") m=" << e.m.str();
    edges.push_back({{"from", {e.i0, e.j0}}, {"to", {e.i1, e.j1}}, {"m", e.m.str()}});
  }
  os << "\n";
  r.result = {{"support", sup},
              {"vertices", verts},
              {"d", p.d},
              {"m1", p.m1 ? json(p.m1->str()) : json(nullptr)},
              {"edges", edges}};
  r.text = os.str();
  return r;
}

Report do_branches(const LoadedInput& in) {
  if (in.file.homogeneous) fail_hypothesis("branches expects an affine family file");
  BranchBackend be = in.numeric_mode ? BranchBackend::Numeric : BranchBackend::Exact;
  BranchSet bs = expand_until_separated(*in.file.family, be, in.numeric);
  Report r;
  std::ostringstream os;
  os << "backend = " << (in.numeric_mode ? "numeric" : "exact") << "\n";
  if (in.numeric_mode) os << "precision_bits = " << in.numeric.precision_bits << "\n";
  os << "certified_order = " << bs.certified_order.str() << "\n";
  json jb = json::array();
  for (size_t i = 0; i < bs.branches.size(); ++i) {
    os << "s_" << (i + 1) << " = " << bs.branches[i].str()
       << "   (e = " << bs.branches[i].ramification
       << ", known to t^" << bs.branches[i].known_order.str() << ")\n";
    jb.push_back(branch_json(bs.branches[i]));
  }
  SeparationOrders so = separation_orders(bs, in.numeric);
  json jo = json::array();
  os << "separation orders:";
  for (const auto& [key, m] : so.orders) {
    os << " m(" << (key.first + 1) << "," << (key.second + 1) << ")=" << m.str();
    jo.push_back({{"i", key.first + 1}, {"j", key.second + 1}, {"m", m.str()}});
  }
  os << "\n";
  r.result = {{"backend", in.numeric_mode ? "numeric" : "exact"},
              {"branches", jb},
              {"separation_orders", jo},
              {"certified_order", bs.certified_order.str()}};
  r.certificates = {{"distinct_margin", so.distinct_margin}};
  r.text = os.str();
  return r;
}

json theorem27_json(const Theorem27Report& rep) {
  json comps = json::array();
  for (const auto& c : rep.components)
    comps.push_back({{"component", c.component},
                     {"multiplicity", c.multiplicity},
                     {"method", c.method},
                     {"product", c.product},
                     {"per_root", c.per_root}});
  return json{{"lhs_delta0", rep.lhs},
              {"rhs_product", rep.rhs},
              {"unit", rep.unit.str()},
              {"components", comps},
              {"exact_run", rep.exact_run},
              {"exact_equal", rep.exact_equal},
              {"numeric_run", rep.numeric_run},
              {"numeric_ok", rep.numeric_ok},
              {"numeric_rel_error", rep.numeric_rel_error}};
}

void theorem27_text(std::ostream& os, const Theorem27Report& rep) {
  os << "Theorem 2.7 product check (monic-normalized, unit = " << rep.unit.str() << "):\n";
  os << "  Delta'_0 = " << rep.lhs << "\n";
  for (const auto& c : rep.components) {
    os << "  component " << c.component << "^" << c.multiplicity << " [" << c.method
       << "]: product = " << c.product;
    if (!c.per_root.empty()) {
      os << "  per-root:";
      for (const auto& v : c.per_root) os << " " << v;
    }
    os << "\n";
  }
  if (rep.exact_run)
    os << "  exact product = " << rep.rhs << "  => " << (rep.exact_equal ? "EQUAL" : "MISMATCH")
       << "\n";
  if (rep.numeric_run)
    os << "  numeric route rel_error = " << rep.numeric_rel_error << "  => "
       << (rep.numeric_ok ? "OK (<= 1e-9)" : "MISMATCH") << "\n";
}

Report do_disc_limit(const LoadedInput& in, bool with_check, int* exit_code) {
  if (in.file.homogeneous) fail_hypothesis("disc-limit expects an affine family file");
  const Family& f = *in.file.family;
  DiscriminantLimit d = discriminant_series(f);
  Report r;
  std::ostringstream os;
  os << "alpha = " << d.alpha << "\n";
  os << "Delta' = " << print_series_t(d.delta_prime) << "\n";
  os << "Delta'_0 = " << print_poly(d.delta_prime_0) << "\n";
  os << "certified to t^" << d.certified_order << ", stable = " << (d.stable ? "yes" : "no")
     << "\n";
  r.result = {{"alpha", d.alpha},
              {"delta_prime", print_series_t(d.delta_prime)},
              {"delta_prime_0", print_poly(d.delta_prime_0)}};
  r.certificates = {{"stable", d.stable}, {"certified_order", d.certified_order}};
  if (with_check) {
    SpecialFiber fiber = fiber_of(in);
    Theorem27Report rep = verify_theorem_2_7(f, fiber, in.numeric_mode, in.numeric);
    theorem27_text(os, rep);
    r.certificates["theorem_2_7"] = theorem27_json(rep);
    if (!rep.ok()) *exit_code = 4;
  }
  r.text = os.str();
  return r;
}

json vertex_json(const VertexReport& v) {
  json jf = json::array();
  for (const auto& f : v.factors)
    jf.push_back({{"description", f.description}, {"value", f.value}, {"exponent", f.exponent}});
  const char* method = v.method == VertexReport::Method::ClosedFormKind ? "closed-form-kind"
                       : v.method == VertexReport::Method::ZdTheorem37  ? "zd-theorem-3-7"
                                                                        : "branch-numeric";
  return json{{"value", v.value_str()},
              {"method", method},
              {"c", v.c_constant.str()},
              {"oracle_verified", v.oracle_verified},
              {"up_to_constant", v.up_to_constant},
              {"factors", jf}};
}

Report do_vertex(const LoadedInput& in, int* exit_code) {
  if (in.file.homogeneous) fail_hypothesis("vertex expects an affine family file");
  const Family& f = *in.file.family;
  SpecialFiber fiber = fiber_of(in);
  KindPattern p = classify_kind(f);
  VertexReport v;
  if (p.kind != Kind::Other) {
    v = vertex_closed_form(f, p);
    SpecialFiber fb = fiber;
    try {
      corollary_3_8_check(f, fb, v, in.numeric);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Internal) throw;
      v.up_to_constant = true;
    }
  } else {
    v = compute_vertex(f, fiber, in.numeric_mode, in.numeric);
  }
  Report r;
  std::ostringstream os;
  os << "ver(F) = " << v.value_str() << "\n";
  os << "method = " << (v.method == VertexReport::Method::ClosedFormKind ? "closed-form-kind"
                        : v.method == VertexReport::Method::ZdTheorem37  ? "zd-theorem-3-7"
                                                                         : "branch-numeric")
     << "\n";
  if (p.kind != Kind::Other) os << "kind = " << kind_name(p.kind) << "\n";
  os << "c = " << v.c_constant.str() << "\n";
  os << "oracle_verified = " << (v.oracle_verified ? "yes" : "no")
     << (v.up_to_constant ? " (up to a nonzero constant)" : "") << "\n";
  for (const auto& fac : v.factors)
    os << "  factor " << fac.description << " = " << fac.value << " ^" << fac.exponent << "\n";
  r.result = vertex_json(v);
  if (p.kind != Kind::Other) r.result["kind"] = kind_name(p.kind);
  r.certificates = {{"oracle_verified", v.oracle_verified},
                    {"up_to_constant", v.up_to_constant}};
  if (!v.oracle_verified && !v.up_to_constant) *exit_code = 4;
  r.text = os.str();
  return r;
}

Report do_zd(const LoadedInput& in) {
  if (in.file.homogeneous) fail_hypothesis("zd expects an affine family file");
  const Family& f = *in.file.family;
  SpecialFiber fiber = fiber_of(in);
  Report r;
  std::ostringstream os;
  json jc = json::array();
  bool any = false;
  for (const ComponentFactor& comp : fiber.components) {
    if (comp.multiplicity <= 1) continue;
    any = true;
    ZdSearchResult res = zd_search(f, comp);
    json jz = {{"component", print_poly(comp.poly)}, {"multiplicity", comp.multiplicity}};
    os << "component " << print_poly(comp.poly) << "^" << comp.multiplicity << ":\n";
    if (res.zd) {
      const ZdDecomposition& z = *res.zd;
      os << "  n = " << z.order << "\n  alpha = " << print_poly(z.alpha) << "\n";
      json jb = json::array();
      for (size_t k = 0; k < z.betas.size(); ++k) {
        os << "  beta_" << k << " = " << print_poly(z.betas[k]) << "\n";
        jb.push_back(print_poly(z.betas[k]));
      }
      os << "  delta_" << z.order << " = " << print_poly(z.delta) << "\n";
      jz["order"] = z.order;
      jz["alpha"] = print_poly(z.alpha);
      jz["betas"] = jb;
      jz["delta"] = print_poly(z.delta);
    } else {
      os << "  " << res.failure << "\n";
      jz["failure"] = res.failure;
    }
    jc.push_back(std::move(jz));
  }
  if (!any) os << "no components with n_nu > 1\n";
  r.result = {{"components", jc}};
  r.text = os.str();
  return r;
}

Report do_type(const RunConfig& cfg, const LoadedInput& in, int* exit_code) {
  if (in.file.homogeneous) fail_hypothesis("type expects an affine family file");
  const Family& f = *in.file.family;
  SpecialFiber fiber = fiber_of(in);
  TypeReport rep = general_type(f, fiber, in.numeric);
  Report r;
  std::ostringstream os;
  json jc = json::array();
  for (const ComponentType& c : rep.per_component) {
    os << "component " << print_poly(c.f_nu) << "^" << c.n_nu << ": m = " << c.m_nu.str()
       << ", tau = " << c.tau_nu << " [" << c.method << "]";
    if (c.empty_max) os << " (no branch pair; tau = 0 by convention)";
    os << "\n";
    jc.push_back({{"component", print_poly(c.f_nu)},
                  {"multiplicity", c.n_nu},
                  {"m", c.m_nu.str()},
                  {"tau", c.tau_nu},
                  {"method", c.method},
                  {"empty_max", c.empty_max}});
  }
  os << "general type tau = " << rep.general_type << "\n";
  json jexc = json::array();
  for (const Rational& y : rep.exceptional_y) jexc.push_back(y.str());
  if (!rep.exceptional_y.empty()) {
    os << "exceptional y values (certificate roots):";
    for (const Rational& y : rep.exceptional_y) os << " " << y.str();
    os << "\n";
  }
  r.result = {{"per_component", jc}, {"general_type", rep.general_type}};
  r.certificates = {{"exceptional_y", jexc}};
  if (cfg.verify_truncation) {
    SufficiencyReport s = truncation_sufficiency_check(f, fiber, cfg.trials, cfg.seed, in.numeric);
    os << "truncation sufficiency: tau = " << s.tau << ", trials = " << s.trials
       << ", seed = " << s.seed << ", unchanged = " << s.unchanged << "/" << s.trials << " => "
       << (s.ok() ? "OK" : "FAILED") << "\n";
    for (const auto& fail : s.failures) os << "  changed by " << fail << "\n";
    if (s.negative_probe_run)
      os << "negative probe at t^" << s.tau << ": " << s.negative_probe << " => "
         << (s.negative_probe_changed ? "ver changed (informational)" : "ver unchanged") << "\n";
    r.certificates["truncation_sufficiency"] = {
        {"tau", s.tau},       {"trials", s.trials},
        {"seed", s.seed},     {"unchanged", s.unchanged},
        {"ok", s.ok()},       {"failures", s.failures},
        {"negative_probe", s.negative_probe},
        {"negative_probe_changed", s.negative_probe_changed}};
    if (!s.ok()) *exit_code = 4;
  }
  r.text = os.str();
  return r;
}

Report do_limit_dual(const LoadedInput& in) {
  if (!in.file.homogeneous)
    fail_hypothesis("limit-dual expects a homogeneous family file (degree key)");
  HomogeneousFamily h = HomogeneousFamily::from_file(in.file);
  CoordinateCheck cc = check_coordinates(h);
  Report r;
  std::ostringstream os;
  json jcc = {{"cond1", cc.cond1}, {"cond2", cc.cond2}};
  if (!cc.ok()) {
    os << "coordinate checks failed: " << cc.note << "\n";
    if (cc.suggested_transform) {
      os << "suggested change of coordinates (rows act on (x,y,z)):\n";
      json jm = json::array();
      for (const auto& row : *cc.suggested_transform) {
        os << "  [" << row[0] << " " << row[1] << " " << row[2] << "]\n";
        jm.push_back({row[0], row[1], row[2]});
      }
      jcc["suggested_transform"] = jm;
    }
    r.certificates = {{"coordinate_check", jcc}};
    r.text = os.str();
    fail_hypothesis("coordinate conditions fail: " + cc.note);
  }
  LimitCycle cycle = limit_dual_cycle(h, in.file.f0_factors, in.numeric);
  VerticesReport vr = vertices_report(h, in.file.f0_factors, in.numeric);
  os << "limit cycle:\n";
  json jcomp = json::array();
  for (const auto& [p, m] : cycle.dual_components) {
    os << "  " << m << " * C[" << print_poly(p) << "]^v\n";
    jcomp.push_back({{"component", print_poly(p)}, {"multiplicity", m}});
  }
  json jpen = json::array();
  for (const PencilEntry& e : cycle.vertex_pencils) {
    os << "  " << (e.multiplicity >= 0 ? "+" : "") << e.multiplicity << " * " << e.description
       << "  restriction_to_L = " << print_poly(e.restriction) << "\n";
    jpen.push_back({{"description", e.description},
                    {"multiplicity", e.multiplicity},
                    {"restriction_to_L", print_poly(e.restriction)}});
  }
  os << "Delta'_0 = " << print_poly(cycle.delta0) << " = (" << print_poly(cycle.disc_factor)
     << ") * (" << cycle.vertex.value_str() << ")\n";
  os << "ver method = "
     << (cycle.vertex.method == VertexReport::Method::ClosedFormKind ? "closed-form-kind"
         : cycle.vertex.method == VertexReport::Method::ZdTheorem37  ? "zd-theorem-3-7"
                                                                     : "branch-numeric")
     << ", oracle_verified = " << (cycle.vertex.oracle_verified ? "yes" : "no") << "\n";
  if (vr.exact) {
    os << "ver(F) = " << print_poly(vr.ver_poly) << "\n";
    if (!vr.squarefree_parts.empty()) {
      os << "ver square-free parts:";
      for (const auto& [p, m] : vr.squarefree_parts)
        os << " (" << print_poly(p) << ")^" << m;
      os << "\n";
    }
  }
  json jlines = json::array();
  if (!vr.vertex_lines_y.empty()) {
    os << "vertex lines y0:";
    for (const Rational& y : vr.vertex_lines_y) {
      os << " " << y.str();
      jlines.push_back(y.str());
    }
    os << "\n";
  }
  json jpoints = json::array();
  for (const VertexPoint& p : vr.points) {
    os << "vertex point (" << p.x0.str() << " : " << p.y0.str() << " : 1) via " << p.via << "\n";
    jpoints.push_back({{"x", p.x0.str()}, {"y", p.y0.str()}, {"via", p.via}});
  }
  json jsq = json::array();
  for (const auto& [p, m] : vr.squarefree_parts)
    jsq.push_back({{"factor", print_poly(p)}, {"multiplicity", m}});
  r.result = {{"dual_components", jcomp},
              {"vertex_pencils", jpen},
              {"delta0", print_poly(cycle.delta0)},
              {"disc_factor", print_poly(cycle.disc_factor)},
              {"ver", cycle.vertex.value_str()},
              {"ver_squarefree_parts", jsq},
              {"vertex_lines_y", jlines},
              {"vertex_points", jpoints}};
  r.certificates = {{"coordinate_check", jcc},
                    {"oracle_verified", cycle.vertex.oracle_verified},
                    {"homogenization_consistent", cycle.homogenization_consistent}};
  r.text = os.str();
  return r;
}

Report do_check(const RunConfig& cfg, const LoadedInput& in, int* exit_code) {
  if (in.file.homogeneous) fail_hypothesis("check expects an affine family file");
  const Family& f = *in.file.family;
  SpecialFiber fiber = fiber_of(in);
  Report r;
  std::ostringstream os;
  Theorem27Report t27 = verify_theorem_2_7(f, fiber, in.numeric_mode, in.numeric);
  theorem27_text(os, t27);
  bool ok = t27.ok();
  VertexReport v = compute_vertex(f, fiber, in.numeric_mode, in.numeric);
  SpecialFiber fb2 = fiber;
  Corollary38Report c38 = corollary_3_8_check(f, fb2, v, in.numeric);
  os << "Corollary 3.8: Delta'_0 = " << c38.lhs << ", prod Delta(f_nu)^n * ver = " << c38.rhs
     << " => " << (c38.ok ? "EQUAL" : "MISMATCH") << "\n";
  ok = ok && c38.ok;
  SufficiencyReport s = truncation_sufficiency_check(f, fiber, cfg.trials, cfg.seed, in.numeric);
  os << "Theorem 4.7 sufficiency: tau = " << s.tau << ", trials = " << s.trials
     << ", seed = " << s.seed << ", unchanged = " << s.unchanged << "/" << s.trials << " => "
     << (s.ok() ? "OK" : "FAILED") << "\n";
  ok = ok && s.ok();
  os << "check = " << (ok ? "PASS" : "FAIL") << "\n";
  r.result = {{"theorem_2_7", theorem27_json(t27)},
              {"corollary_3_8",
               {{"ok", c38.ok}, {"lhs", c38.lhs}, {"rhs", c38.rhs}, {"exact", c38.exact}}},
              {"truncation_sufficiency",
               {{"tau", s.tau},
                {"trials", s.trials},
                {"seed", s.seed},
                {"unchanged", s.unchanged},
                {"ok", s.ok()}}},
              {"pass", ok}};
  r.certificates = {{"pass", ok}};
  if (!ok) *exit_code = 4;
  r.text = os.str();
  return r;
}

int run_one(const RunConfig& cfg, const std::string& path, std::ostream& out) {
  auto start = std::chrono::steady_clock::now();
  int exit_code = 0;
  Report rep;
  LoadedInput in;
  try {
    in = load_input(cfg, path);
    if (cfg.subcommand == "parse") rep = do_parse(in);
    else if (cfg.subcommand == "polygon") rep = do_polygon(in);
    else if (cfg.subcommand == "branches") rep = do_branches(in);
    else if (cfg.subcommand == "disc-limit") rep = do_disc_limit(in, cfg.check, &exit_code);
    else if (cfg.subcommand == "vertex") rep = do_vertex(in, &exit_code);
    else if (cfg.subcommand == "zd") rep = do_zd(in);
    else if (cfg.subcommand == "type") rep = do_type(cfg, in, &exit_code);
    else if (cfg.subcommand == "limit-dual") rep = do_limit_dual(in);
    else if (cfg.subcommand == "check") rep = do_check(cfg, in, &exit_code);
    else fail_parse("unknown subcommand '" + cfg.subcommand + "'", {0, 0});
  } catch (const Error& e) {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    if (cfg.json) {
      json j = {{"schema_version", 1},
                {"subcommand", cfg.subcommand},
                {"inputs", {{"file", path}}},
                {"error", {{"kind", e.exit_code()}, {"message", e.what()}}},
                {"timing", {{"elapsed_ms", elapsed}}}};
      if (e.pos()) j["error"]["line"] = e.pos()->line, j["error"]["column"] = e.pos()->column;
      out << j.dump(2) << "\n";
    } else {
      out << "error";
      if (e.pos()) out << " at line " << e.pos()->line << ", column " << e.pos()->column;
      out << ": " << e.what() << "\n";
    }
    return e.exit_code();
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  if (cfg.json) {
    json j = {{"schema_version", 1},
              {"subcommand", cfg.subcommand},
              {"inputs", inputs_json(cfg, path, in)},
              {"result", rep.result},
              {"certificates", rep.certificates},
              {"timing", {{"elapsed_ms", elapsed}}}};
    out << j.dump(2) << "\n";
  } else {
    out << rep.text;
  }
  return exit_code;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out) {
  namespace fs = std::filesystem;
  if (cfg.input_path.empty()) {
    out << "error: missing --input\n";
    return 2;
  }
  if (fs::is_directory(cfg.input_path)) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(cfg.input_path))
      if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    int worst = 0;
    for (const std::string& f : files) {
      if (!cfg.json) out << "== " << f << "\n";
      worst = std::max(worst, run_one(cfg, f, out));
    }
    return worst;
  }
  return run_one(cfg, cfg.input_path, out);
}

}  // namespace duallim
