#include "duallim/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "duallim/errors.hpp"

namespace duallim {

bool VarSet::allows(Var v) const {
  switch (v) {
    case Var::x: return x;
    case Var::y: return y;
    case Var::z: return z;
    case Var::t: return t;
  }
  return false;
}

namespace {

enum class Tok { Int, Name, Plus, Minus, Star, Caret, Slash, LParen, RParen, Comma, LBracket, RBracket, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  Lexer(const std::string& text, SourcePos origin) : s_(text), pos_(origin) {}

  Token next() {
    skip_ws();
    SourcePos here = pos_;
    if (i_ >= s_.size()) return {Tok::End, "", here};
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        num += s_[i_];
        advance();
      }
      return {Tok::Int, num, here};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
        name += s_[i_];
        advance();
      }
      return {Tok::Name, name, here};
    }
    advance();
    switch (c) {
      case '+': return {Tok::Plus, "+", here};
      case '-': return {Tok::Minus, "-", here};
      case '*': return {Tok::Star, "*", here};
      case '^': return {Tok::Caret, "^", here};
      case '/': return {Tok::Slash, "/", here};
      case '(': return {Tok::LParen, "(", here};
      case ')': return {Tok::RParen, ")", here};
      case ',': return {Tok::Comma, ",", here};
      case '[': return {Tok::LBracket, "[", here};
      case ']': return {Tok::RBracket, "]", here};
      default:
        fail_parse(std::string("unexpected character '") + c + "'", here);
    }
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) advance();
  }
  void advance() {
    ++i_;
    ++pos_.column;
  }
  const std::string& s_;
  size_t i_ = 0;
  SourcePos pos_;
};

class ExprParser {
 public:
  ExprParser(const std::string& text, SourcePos origin, const VarSet& vars)
      : lex_(text, origin), vars_(vars) {
    cur_ = lex_.next();
  }

  Poly parse_full() {
    Poly p = parse_expr();
    expect(Tok::End, "end of expression");
    return p;
  }

  // Parses "[(expr, mult), ...]".
  std::vector<std::pair<Poly, int>> parse_factor_list() {
    std::vector<std::pair<Poly, int>> out;
    expect(Tok::LBracket, "'['");
    if (cur_.kind == Tok::RBracket) {
      eat();
      expect(Tok::End, "end of factor list");
      return out;
    }
    while (true) {
      expect(Tok::LParen, "'('");
      Poly f = parse_expr();
      expect(Tok::Comma, "','");
      Token m = cur_;
      expect(Tok::Int, "multiplicity");
      long mult = std::stol(m.text);
      if (mult < 1) fail_parse("multiplicity must be >= 1", m.pos);
      expect(Tok::RParen, "')'");
      out.emplace_back(std::move(f), static_cast<int>(mult));
      if (cur_.kind == Tok::Comma) {
        eat();
        continue;
      }
      break;
    }
    expect(Tok::RBracket, "']'");
    expect(Tok::End, "end of factor list");
    return out;
  }

 private:
  void eat() { cur_ = lex_.next(); }
  void expect(Tok k, const std::string& what) {
    if (cur_.kind != k)
      fail_parse("expected " + what + (cur_.text.empty() ? "" : ", found '" + cur_.text + "'"),
                 cur_.pos);
    if (k != Tok::End) eat();
  }

  Poly parse_expr() {
    bool neg = false;
    if (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      neg = cur_.kind == Tok::Minus;
      eat();
    }
    Poly acc = parse_term();
    if (neg) acc = -acc;
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool sub = cur_.kind == Tok::Minus;
      eat();
      Poly rhs = parse_term();
      acc = sub ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Poly parse_term() {
    Poly acc = parse_factor();
    while (cur_.kind == Tok::Star) {
      eat();
      acc = acc * parse_factor();
    }
    return acc;
  }

  Poly parse_factor() {
    if (cur_.kind == Tok::Minus) {
      eat();
      return -parse_factor();
    }
    return parse_power();
  }

  Poly parse_power() {
    Poly base = parse_atom();
    if (cur_.kind == Tok::Caret) {
      eat();
      Token e = cur_;
      expect(Tok::Int, "nonnegative integer exponent");
      unsigned long exp = std::stoul(e.text);
      if (exp > DegreeLimits::max_t()) fail_resource("degree limit exceeded");
      return base.pow(static_cast<uint32_t>(exp));
    }
    return base;
  }

  Poly parse_atom() {
    Token tok = cur_;
    switch (tok.kind) {
      case Tok::Int: {
        eat();
        // Rational literal p/q binds tighter than '^'.
        if (cur_.kind == Tok::Slash) {
          eat();
          Token den = cur_;
          expect(Tok::Int, "denominator");
          Rational r;
          if (!Rational::parse(tok.text + "/" + den.text, r) || r.denominator() == 0)
            fail_parse("malformed rational literal", tok.pos);
          if (den.text.find_first_not_of('0') == std::string::npos)
            fail_parse("zero denominator", den.pos);
          return Poly::constant(r);
        }
        Rational r;
        if (!Rational::parse(tok.text, r)) fail_parse("malformed integer literal", tok.pos);
        return Poly::constant(r);
      }
      case Tok::Name: {
        eat();
        Var v;
        if (tok.text == "x") v = Var::x;
        else if (tok.text == "y") v = Var::y;
        else if (tok.text == "z") v = Var::z;
        else if (tok.text == "t") v = Var::t;
        else fail_parse("unknown identifier '" + tok.text + "'", tok.pos);
        if (!vars_.allows(v))
          fail_parse("unknown identifier '" + tok.text + "' in this ring", tok.pos);
        return Poly::variable(v);
      }
      case Tok::LParen: {
        eat();
        Poly inner = parse_expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail_parse("expected a literal, variable or '('", tok.pos);
    }
  }

  Lexer lex_;
  Token cur_;
  VarSet vars_;
};

std::string strip_comment(const std::string& line) {
  size_t h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Poly parse_expression(const std::string& text, const VarSet& vars) {
  ExprParser p(text, SourcePos{1, 1}, vars);
  return p.parse_full();
}

Family parse_family_expression(const std::string& text, int trunc, const VarSet& vars) {
  if (trunc < 1) fail_parse("trunc must be >= 1", SourcePos{1, 1});
  Poly p = parse_expression(text, vars);
  if (p.is_zero()) fail_hypothesis("zero family (F_0 != 0 required)");
  if (p.degree(Var::t) > trunc)
    fail_parse("t-order overflow: expression has terms of order t^" +
                   std::to_string(p.degree(Var::t)) + " beyond trunc = " + std::to_string(trunc),
               SourcePos{1, 1});
  Family f = Family::from_poly(p, trunc);
  if (f.f0().is_zero()) fail_hypothesis("zero family (F_0 != 0 required)");
  if (!f.is_polynomial_family_shape())
    fail_hypothesis("family coefficients exceed deg_x(F_0) = " + std::to_string(f.x_degree()));
  return f;
}

VarSet FamilyFile::vars() const {
  if (homogeneous) return VarSet::homogeneous();
  return ring == Ring::Q ? VarSet::affine_q() : VarSet::affine_qy();
}

FamilyFile load_family_file(const std::string& text) {
  FamilyFile out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::optional<std::pair<std::string, SourcePos>> f_value, factors_value;
  bool have_trunc = false;
  auto seen = [&](const std::string& key, bool already, SourcePos pos) {
    if (already) fail_parse("duplicate key '" + key + "'", pos);
  };
  bool saw_ring = false, saw_mode = false, saw_prec = false, saw_degree = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    size_t eq = line.find('=');
    SourcePos pos{lineno, 1};
    if (eq == std::string::npos) fail_parse("expected 'key = value'", pos);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    SourcePos vpos{lineno, static_cast<int>(strip_comment(raw).find(value)) + 1};
    if (key == "ring") {
      seen(key, saw_ring, pos);
      saw_ring = true;
      if (value == "Q") out.ring = FamilyFile::Ring::Q;
      else if (value == "Q[y]") out.ring = FamilyFile::Ring::Qy;
      else fail_parse("ring must be Q or Q[y]", vpos);
    } else if (key == "trunc") {
      seen(key, have_trunc, pos);
      have_trunc = true;
      try {
        out.trunc = std::stoi(value);
      } catch (...) {
        fail_parse("trunc must be an integer", vpos);
      }
      if (out.trunc < 1) fail_parse("trunc must be >= 1", vpos);
    } else if (key == "F") {
      seen(key, f_value.has_value(), pos);
      f_value = {value, vpos};
    } else if (key == "F0_factors") {
      seen(key, factors_value.has_value(), pos);
      factors_value = {value, vpos};
    } else if (key == "mode") {
      seen(key, saw_mode, pos);
      saw_mode = true;
      if (value != "exact" && value != "numeric")
        fail_parse("mode must be exact or numeric", vpos);
      out.mode = value;
    } else if (key == "precision") {
      seen(key, saw_prec, pos);
      saw_prec = true;
      try {
        out.precision_bits = std::stoi(value);
      } catch (...) {
        fail_parse("precision must be an integer", vpos);
      }
      if (out.precision_bits < 64) fail_parse("precision must be >= 64", vpos);
    } else if (key == "degree") {
      seen(key, saw_degree, pos);
      saw_degree = true;
      out.homogeneous = true;
      try {
        out.degree = std::stoi(value);
      } catch (...) {
        fail_parse("degree must be an integer", vpos);
      }
      if (out.degree < 1) fail_parse("degree must be >= 1", vpos);
    } else {
      fail_parse("unknown key '" + key + "'", pos);
    }
  }
  if (!have_trunc) fail_parse("missing key 'trunc'", SourcePos{lineno + 1, 1});
  if (!f_value) fail_parse("missing key 'F'", SourcePos{lineno + 1, 1});

  VarSet vars = out.vars();
  ExprParser fp(f_value->first, f_value->second, vars);
  Poly p = fp.parse_full();
  if (p.is_zero()) fail_hypothesis("zero family (F_0 != 0 required)");
  if (p.degree(Var::t) > out.trunc)
    fail_parse("t-order overflow: expression has terms of order t^" +
                   std::to_string(p.degree(Var::t)) +
                   " beyond trunc = " + std::to_string(out.trunc),
               f_value->second);

  if (out.homogeneous) {
    for (int i = 0; i <= out.trunc; ++i) {
      Poly fi = p.coeff_of(Var::t, static_cast<uint32_t>(i));
      for (const auto& [m, c] : fi.terms()) {
        if (m.total() != static_cast<uint64_t>(out.degree))
          fail_parse("F_" + std::to_string(i) + " is not homogeneous of degree " +
                         std::to_string(out.degree),
                     f_value->second);
      }
      out.homog_coeffs.push_back(std::move(fi));
    }
    if (out.homog_coeffs[0].is_zero()) fail_hypothesis("zero family (F_0 != 0 required)");
  } else {
    Family f = Family::from_poly(p, out.trunc);
    if (!f.is_polynomial_family_shape())
      fail_hypothesis("family coefficients exceed deg_x(F_0) = " + std::to_string(f.x_degree()));
    out.family = std::move(f);
  }

  if (factors_value) {
    ExprParser lp(factors_value->first, factors_value->second, vars);
    out.f0_factors = lp.parse_factor_list();
    // Validated: product of factors times a constant unit equals F_0.
    Poly prod = Poly::constant(1);
    for (const auto& [f, m] : out.f0_factors) prod = prod * f.pow(static_cast<uint32_t>(m));
    Poly f0 = out.homogeneous ? out.homog_coeffs[0] : out.family->f0();
    auto unit = Poly::try_divide(f0, prod);
    if (!unit || !unit->is_constant() || unit->is_zero())
      fail_parse("F0_factors do not multiply to F_0 up to a constant unit",
                 factors_value->second);
  }
  return out;
}

FamilyFile load_family_file_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_family_file(buf.str());
}

}  // namespace duallim
