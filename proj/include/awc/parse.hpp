#pragma once
// Text forms: element expressions and root-datum spec files.
//
// Element grammar (whitespace between terms works as well as '*'):
//   elt  := term (('*' | ws) term)*
//   term := 't[' int (',' int)* ']' | 's' index | 'tau' ['^' int] | 'identity'
// Indices refer to the affine generating set: s0 is the affine reflection of
// the first component (further components use s(r+1), s(r+2), ...), s1..sr
// the finite simple reflections.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "awc/affine.hpp"
#include "awc/root_datum.hpp"
#include "awc/twist.hpp"

namespace awc {

// fixed choice of a length-zero element whose powers reach every coset of
// the central translations, when one exists (it does for all presets)
inline AffineElt omega_tau(const AffineWeyl& aw) {
  std::vector<AffineElt> cands;
  for (const auto& t : aw.omega_conjugators())
    if (!(t == aw.identity())) cands.push_back(t);
  if (cands.empty()) throw ParseError("this group has no length-zero element tau");
  std::sort(cands.begin(), cands.end());
  size_t total = aw.omega_conjugators().size();
  for (const auto& c : cands) {
    std::set<Vec> seen;
    AffineElt p = aw.identity();
    for (size_t k = 0; k < total; ++k) {
      seen.insert(aw.omega_class(p.lam));
      p = aw.compose(p, c);
    }
    if (seen.size() == total) return c;
  }
  return cands.front();  // no single generator; still a fixed documented pick
}

namespace detail {

struct EltLexer {
  const std::string& s;
  size_t i = 0;

  void skip_sep() {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i;
  }
  bool done() {
    skip_sep();
    return i >= s.size();
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(i) + " in element expression \"" + s +
                     "\"");
  }
  Int integer() {
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail("expected an integer");
    return std::stoll(s.substr(start, i - start));
  }
};

}  // namespace detail

inline AffineElt parse_element(const AffineWeyl& aw, const std::string& text) {
  detail::EltLexer lx{text};
  AffineElt w = aw.identity();
  bool any = false;
  while (!lx.done()) {
    any = true;
    char c = text[lx.i];
    if (c == 't') {
      ++lx.i;
      if (lx.i < text.size() && text[lx.i] == 'a') {  // tau
        if (text.compare(lx.i - 1, 3, "tau") != 0) lx.fail("unknown term");
        lx.i += 2;
        Int k = 1;
        if (lx.i < text.size() && text[lx.i] == '^') {
          ++lx.i;
          k = lx.integer();
        }
        AffineElt tau = omega_tau(aw);
        if (k < 0) {
          tau = aw.inverse(tau);
          k = -k;
        }
        for (Int j = 0; j < k; ++j) w = aw.compose(w, tau);
      } else {
        if (lx.i >= text.size() || text[lx.i] != '[') lx.fail("expected '[' after t");
        ++lx.i;
        Vec lam;
        for (;;) {
          lam.push_back(lx.integer());
          if (lx.i < text.size() && text[lx.i] == ',') {
            ++lx.i;
            continue;
          }
          break;
        }
        if (lx.i >= text.size() || text[lx.i] != ']') lx.fail("expected ']'");
        ++lx.i;
        if (static_cast<int>(lam.size()) != aw.rd().dim)
          lx.fail("translation needs " + std::to_string(aw.rd().dim) + " coordinates");
        w = aw.compose(w, aw.translation(aw.rd().normalize(lam)));
      }
    } else if (c == 's') {
      ++lx.i;
      Int idx = lx.integer();
      w = aw.compose(w, aw.gen_elt(aw.gen_by_cli(static_cast<int>(idx))));
    } else if (c == 'i') {
      if (text.compare(lx.i, 8, "identity") != 0) lx.fail("unknown term");
      lx.i += 8;
    } else {
      lx.fail(std::string("unexpected character '") + c + "'");
    }
  }
  if (!any) throw ParseError("empty element expression");
  return w;
}

// normal form t[lam] * s_{i1} * ... * s_{ik} with the finite part as a
// reduced word; re-parses to the same element
inline std::string element_str(const AffineWeyl& aw, const AffineElt& w) {
  if (w == aw.identity()) return "identity";
  std::string out;
  bool all_zero = true;
  for (Int x : w.lam)
    if (x != 0) all_zero = false;
  if (!all_zero) {
    out += "t[";
    for (size_t i = 0; i < w.lam.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(w.lam[i]);
    }
    out += "]";
  }
  for (int i : aw.w0().word(w.u)) {
    if (!out.empty()) out += "*";
    out += "s" + std::to_string(i + 1);
  }
  return out;
}

// word in the affine generators (plus a length-zero tail when the element
// is not in W_a); mirrors reduced_word and prints tail translations
inline std::string element_word_str(const AffineWeyl& aw, const AffineElt& w) {
  auto [word, rest] = aw.reduced_word(w);
  std::string out;
  for (int cli : word) {
    if (!out.empty()) out += "*";
    out += "s" + std::to_string(cli);
  }
  if (!(rest == aw.identity())) {
    if (!out.empty()) out += "*";
    out += element_str(aw, rest);
  }
  if (out.empty()) out = "identity";
  return out;
}

// ---- root-datum spec files ----
// line-oriented key = value; '#' starts a comment. Keys:
//   preset  = "GL3"                      (or: cartan + lattice)
//   cartan  = [[2,-1],[-1,2]]
//   lattice = "sc" | "ad" | [[1,0],[0,1]]  (matrix rows: basis of X in
//                                           fundamental-coweight coords)
//   name    = "custom"                   (optional, with cartan)
//   twist   = "identity" | "flip"        (optional)
struct GroupSpec {
  RootDatum rd;
  std::string twist = "identity";
};

namespace detail {

inline ZMat parse_int_matrix(const std::string& v, int line_no) {
  ZMat m;
  size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError(what + " in matrix literal on line " + std::to_string(line_no));
  };
  auto skip = [&] {
    while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i;
  };
  skip();
  if (i >= v.size() || v[i] != '[') fail("expected '['");
  ++i;
  for (;;) {
    skip();
    if (i < v.size() && v[i] == ']') {
      ++i;
      break;
    }
    if (i >= v.size() || v[i] != '[') fail("expected '['");
    ++i;
    std::vector<BigInt> row;
    for (;;) {
      skip();
      size_t start = i;
      if (i < v.size() && (v[i] == '-' || v[i] == '+')) ++i;
      while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) ++i;
      if (i == start) fail("expected an integer");
      row.push_back(BigInt(v.substr(start, i - start)));
      skip();
      if (i < v.size() && v[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    if (i >= v.size() || v[i] != ']') fail("expected ']'");
    ++i;
    m.push_back(std::move(row));
    skip();
    if (i < v.size() && v[i] == ',') ++i;
  }
  skip();
  if (i != v.size()) fail("trailing characters");
  return m;
}

inline std::string unquote(const std::string& v, int line_no) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"')
    throw ParseError("expected a quoted string on line " + std::to_string(line_no));
  return v.substr(1, v.size() - 2);
}

}  // namespace detail

inline GroupSpec parse_group_text(const std::string& text) {
  std::string preset, name = "custom", lattice_word, twist = "identity";
  ZMat cartan, lattice_rows;
  bool have_cartan = false, have_lattice_matrix = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key = value on line " + std::to_string(line_no));
    auto trim = [](std::string s) {
      size_t x = s.find_first_not_of(" \t\r");
      size_t y = s.find_last_not_of(" \t\r");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "preset") preset = detail::unquote(val, line_no);
    else if (key == "name") name = detail::unquote(val, line_no);
    else if (key == "twist") twist = detail::unquote(val, line_no);
    else if (key == "cartan") {
      cartan = detail::parse_int_matrix(val, line_no);
      have_cartan = true;
    } else if (key == "lattice") {
      if (!val.empty() && val[0] == '[') {
        lattice_rows = detail::parse_int_matrix(val, line_no);
        have_lattice_matrix = true;
      } else lattice_word = detail::unquote(val, line_no);
    } else throw ParseError("unknown key \"" + key + "\" on line " + std::to_string(line_no));
  }
  if (twist != "identity" && twist != "flip")
    throw ParseError("twist must be \"identity\" or \"flip\"");
  GroupSpec g;
  g.twist = twist;
  if (!preset.empty()) {
    if (have_cartan) throw ParseError("give either preset or cartan, not both");
    g.rd = build_root_datum(preset);
    return g;
  }
  if (!have_cartan) throw ParseError("a group spec needs preset or cartan");
  LatticeSpec lat;
  if (have_lattice_matrix) {
    lat.kind = LatticeSpec::Matrix;
    lat.rows = lattice_rows;
  } else if (lattice_word == "ad") lat.kind = LatticeSpec::Adjoint;
  else if (lattice_word == "sc" || lattice_word.empty()) lat.kind = LatticeSpec::SimplyConnected;
  else throw ParseError("lattice must be \"sc\", \"ad\", or a matrix");
  g.rd = build_root_datum_from_cartan(cartan, lat, name);
  return g;
}

// preset name, or a path to a spec file when one exists at that path
inline GroupSpec load_group(const std::string& spec) {
  std::ifstream f(spec);
  if (f.good()) {
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_group_text(buf.str());
  }
  GroupSpec g;
  g.rd = build_root_datum(spec);
  return g;
}

inline TwistAuto make_group_twist(const AffineWeyl& aw, const std::string& twist) {
  if (twist == "identity" || twist.empty()) return twist_identity(aw);
  if (twist == "flip") return make_twist(aw, flip_matrix(aw.rd()), aw.identity());
  throw ParseError("unknown twist \"" + twist + "\"");
}

}  // namespace awc
