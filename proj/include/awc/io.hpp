#pragma once
// Deterministic serialization: JSON reports, CSV tables, DOT graphs.
// JSON objects keep their keys sorted and rationals are printed in lowest
// terms, so identical inputs give byte-identical output.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "awc/class_poly.hpp"
#include "awc/hecke_finite.hpp"
#include "awc/parse.hpp"
#include "awc/strata.hpp"

namespace awc {

using Json = nlohmann::json;  // map-backed: keys come out sorted

inline Json json_qvec(const QVec& v) {
  Json a = Json::array();
  for (const Rat& r : v) a.push_back(rat_str(r));
  return a;
}

inline Json json_vec(const Vec& v) {
  Json a = Json::array();
  for (Int x : v) a.push_back(x);
  return a;
}

inline Json json_poly(const PolyZq& f) {
  Json a = Json::array();
  for (Int c : f.coeffs()) a.push_back(c);
  return a;
}

inline Json json_dim(Int d) {
  if (d == NEG_INFINITY) return Json();  // null: the stratum is empty
  return Json(d);
}

inline Json json_invariant(const ConjInvariant& inv) {
  return Json{{"newton", json_qvec(inv.newton)}, {"kottwitz", json_vec(inv.kappa)}};
}

inline Json json_element(const AffineWeyl& aw, const AffineElt& w) {
  return Json(element_str(aw, w));
}

inline Json json_decomp(const ClassPolyDecomp& d) {
  Json list = Json::array();
  for (const auto& [k, f] : d.entries) {
    list.push_back(Json{{"newton", json_qvec(k.inv.newton)},
                        {"kottwitz", json_vec(k.inv.kappa)},
                        {"min_length", k.min_len},
                        {"poly", json_poly(f)}});
  }
  return list;
}

inline Json json_stratum(const AffineWeyl& aw, const StratumReport& r) {
  Json K = Json::array();
  for (int k : r.query.K) K.push_back(k);
  std::string eta = r.virt.eta == 0 ? "identity" : std::string();
  if (eta.empty()) {
    for (int i : aw.w0().word(r.virt.eta)) {
      if (!eta.empty()) eta += "*";
      eta += "s" + std::to_string(i + 1);
    }
  }
  return Json{{"w", json_element(aw, r.query.w)},
              {"K", K},
              {"b", json_invariant(r.query.b.inv)},
              {"poly", json_poly(r.dim.polynomial)},
              {"dim", json_dim(r.dim.dimension == NEG_INFINITY
                                   ? NEG_INFINITY
                                   : r.dim.dimension - r.dim.level_shift)},
              {"irr_max", r.dim.irr_max_count},
              {"adlv_dim", json_dim(r.dim.adlv_dimension)},
              {"virtual_dim", rat_str(r.virt.d_w)},
              {"eta", eta},
              {"shrunken", r.virt.shrunken}};
}

inline Json json_char_table(const CharTable& t) {
  Json rows = Json::array();
  for (size_t i = 0; i < t.row_names.size(); ++i) {
    Json cells = Json::array();
    for (const MPoly& e : t.entries[i]) cells.push_back(e.str());
    rows.push_back(Json{{"row", t.row_names[i]}, {"min_length", t.row_min_len[i]}, {"values", cells}});
  }
  Json params = Json::array();
  for (const auto& p : t.params) params.push_back(p);
  Json cols = Json::array();
  for (const auto& c : t.col_names) cols.push_back(c);
  return Json{{"label", t.label}, {"params", params}, {"columns", cols}, {"rows", rows}};
}

inline std::string csv_char_table(const CharTable& t) {
  auto cell = [](std::string s) {
    bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string out = "row";
  for (const auto& c : t.col_names) out += "," + cell(c);
  out += "\n";
  for (size_t i = 0; i < t.row_names.size(); ++i) {
    out += cell(t.row_names[i]);
    for (const MPoly& e : t.entries[i]) out += "," + cell(e.str());
    out += "\n";
  }
  return out;
}

// ---- posets as edge lists ----
inline Json json_poset(const std::vector<std::string>& labels,
                       const std::vector<std::vector<char>>& leq) {
  Json nodes = Json::array();
  for (const auto& l : labels) nodes.push_back(l);
  Json edges = Json::array();
  for (auto [a, b] : poset_covers(leq)) edges.push_back(Json::array({a, b}));
  return Json{{"nodes", nodes}, {"edges", edges}};
}

inline std::vector<std::string> coset_poset_labels(const AffineWeyl& aw, const CosetPoset& p) {
  std::vector<std::string> out;
  for (const auto& n : p.nodes) out.push_back(element_word_str(aw, n));
  return out;
}

inline std::vector<std::string> class_poset_labels(const AffineWeyl& aw, const ClassPoset& p) {
  std::vector<std::string> out;
  for (const auto& n : p.nodes) out.push_back(n.inv.str());
  return out;
}

// ---- DOT ----
namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string dim_label(Int d) { return d == NEG_INFINITY ? "-inf" : std::to_string(d); }

}  // namespace detail

// binary reduction tree; one node per element labeled "word \n length, dim",
// open-part child drawn solid, closed-complement child dashed
inline std::string dot_reduction_tree(const AffineWeyl& aw, const ReductionTree& t) {
  std::string out = "digraph reduction {\n  node [shape=box];\n";
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    const ReductionNode& n = t.nodes[i];
    out += "  n" + std::to_string(i) + " [label=\"" +
           detail::dot_escape(element_word_str(aw, n.elt)) + "\\n" + std::to_string(n.elt.len) +
           ", " + detail::dim_label(n.dim) + "\"];\n";
  }
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    const ReductionNode& n = t.nodes[i];
    if (n.leaf) continue;
    std::string s = "s" + std::to_string(n.split_cli);
    out += "  n" + std::to_string(i) + " -> n" + std::to_string(n.child_one) + " [label=\"" + s +
           " open\"];\n";
    out += "  n" + std::to_string(i) + " -> n" + std::to_string(n.child_two) + " [label=\"" + s +
           " closed\", style=dashed];\n";
  }
  return out + "}\n";
}

inline std::string dot_reduction_trace(const AffineWeyl& aw, const ReductionTrace& t) {
  std::string out = "digraph trace {\n  node [shape=box];\n";
  std::vector<AffineElt> chain{t.start};
  for (const auto& s : t.steps) chain.push_back(s.to);
  for (size_t i = 0; i < chain.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" +
           detail::dot_escape(element_word_str(aw, chain[i])) + "\\n" +
           std::to_string(chain[i].len) + "\"];\n";
  }
  for (size_t i = 0; i < t.steps.size(); ++i) {
    const ReductionStep& s = t.steps[i];
    std::string lbl = s.gen_cli >= 0 ? "s" + std::to_string(s.gen_cli) : "omega";
    if (s.drop) lbl += " drop";
    out += "  n" + std::to_string(i) + " -> n" + std::to_string(i + 1) + " [label=\"" + lbl +
           "\"];\n";
  }
  return out + "}\n";
}

// Hasse diagram; relations that needed a conjugator (beyond plain Bruhat)
// are drawn dotted
inline std::string dot_coset_poset(const AffineWeyl& aw, const CosetPoset& p) {
  std::set<std::pair<int, int>> twisted;
  for (const auto& [a, b, u] : p.witnesses) twisted.insert({a, b});
  std::string out = "digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (size_t i = 0; i < p.nodes.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" +
           detail::dot_escape(element_word_str(aw, p.nodes[i])) + "\\n" +
           std::to_string(p.nodes[i].len) + "\"];\n";
  }
  for (auto [a, b] : poset_covers(p.leq)) {
    out += "  n" + std::to_string(a) + " -> n" + std::to_string(b);
    if (twisted.count({a, b})) out += " [style=dotted]";
    out += ";\n";
  }
  return out + "}\n";
}

inline std::string dot_class_poset(const AffineWeyl& aw, const ClassPoset& p) {
  std::string out = "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
  for (size_t i = 0; i < p.nodes.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + detail::dot_escape(p.nodes[i].inv.str()) +
           "\\n" + detail::dot_escape(element_str(aw, p.nodes[i].rep)) + "\"];\n";
  }
  for (auto [a, b] : poset_covers(p.leq))
    out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  return out + "}\n";
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ResourceError("cannot open " + path + " for writing");
  f << content;
  if (!f.good()) throw ResourceError("failed writing " + path);
}

}  // namespace awc
