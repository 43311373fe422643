// awc: combinatorics of extended affine Weyl groups from the command line.
//
// Verbs: describe, length, reduce, classpoly, dim, adm, bgmu, chartable,
// poset, quadruple. JSON output is deterministic (sorted keys, canonical
// rationals). Exit codes: 0 ok, 2 parse error, 3 domain error, 4 resource
// budget exceeded.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "awc/io.hpp"

using namespace awc;

namespace {

struct Budgets {
  Int length_bound = 14;
  size_t memo = 1000000;
  size_t frontier = 1000000;
};

Vec parse_vec_arg(const std::string& s) {
  Vec out;
  size_t i = 0;
  while (i <= s.size()) {
    size_t j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    std::string tok = s.substr(i, j - i);
    if (tok.empty()) throw ParseError("empty coordinate in \"" + s + "\"");
    try {
      size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("bad integer \"" + tok + "\" in \"" + s + "\"");
    }
    i = j + 1;
    if (j == s.size()) break;
  }
  return out;
}

struct Session {
  GroupSpec spec;
  std::unique_ptr<AffineWeyl> aw;
  std::unique_ptr<ConjCtx> ctx;
  std::unique_ptr<ClassPolyEngine> eng;

  Session(const std::string& group, const std::string& twist_flag, const Budgets& b) {
    spec = load_group(group);
    if (!twist_flag.empty()) spec.twist = twist_flag;
    aw = std::make_unique<AffineWeyl>(spec.rd);
    ConjOptions opts;
    opts.frontier_cap = b.frontier;
    ctx = std::make_unique<ConjCtx>(*aw, make_group_twist(*aw, spec.twist), opts);
    eng = std::make_unique<ClassPolyEngine>(*ctx, b.memo);
  }
};

void emit(const Json& j, bool as_json, const std::string& text) {
  if (as_json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::string dims_note(const ClassPolyEngine& eng, const AffineElt& w, const ConjInvariant& b) {
  std::multiset<Int, std::greater<Int>> dims;
  for (const auto& [k, f] : eng.decomp(w).entries)
    if (k.inv == b) dims.insert(k.min_len + f.degree());
  std::string s;
  for (Int d : dims) {
    if (!s.empty()) s += ", ";
    s += std::to_string(d);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine Weyl group conjugation, class polynomials, and strata"};
  app.require_subcommand(1);

  Budgets budget;
  std::string group, twist, w_str, b_str = "identity", mu_str, K_str, nodes_str;
  bool as_json = false, finite_nodes = false;
  std::string dot_file, csv_file;

  auto add_common = [&](CLI::App* sub, bool needs_group = true) {
    if (needs_group)
      sub->add_option("--group", group, "preset name (GL3, SL2, PGL3, Sp4, ...) or spec file path")
          ->required();
    sub->add_option("--twist", twist, "diagram twist: identity or flip");
    sub->add_flag("--json", as_json, "machine-readable output");
    sub->add_option("--dot", dot_file, "write a DOT graph to this path");
    sub->add_option("--length-bound", budget.length_bound, "enumeration length budget");
    sub->add_option("--memo", budget.memo, "class polynomial memo budget");
    sub->add_option("--frontier", budget.frontier, "conjugation search frontier budget");
  };

  CLI::App* c_desc = app.add_subcommand("describe", "group and generator summary");
  add_common(c_desc);

  CLI::App* c_len = app.add_subcommand("length", "length and invariants of an element");
  add_common(c_len);
  c_len->add_option("--w", w_str, "element expression")->required();

  CLI::App* c_red = app.add_subcommand("reduce", "minimal-length conjugation with trace and tree");
  add_common(c_red);
  c_red->add_option("--w", w_str, "element expression")->required();
  c_red->add_option("--b", b_str, "class witness for the reduction tree");

  CLI::App* c_cp = app.add_subcommand("classpoly", "class polynomial decomposition");
  add_common(c_cp);
  c_cp->add_option("--w", w_str, "element expression")->required();
  c_cp->add_option("--b", b_str, "optional class witness to extract one polynomial");

  CLI::App* c_dim = app.add_subcommand("dim", "stratum dimension report");
  add_common(c_dim);
  c_dim->add_option("--w", w_str, "element expression")->required();
  c_dim->add_option("--b", b_str, "class witness element");
  c_dim->add_option("--K", K_str, "parahoric wall indices, comma separated");

  CLI::App* c_adm = app.add_subcommand("adm", "admissible set of a dominant coweight");
  add_common(c_adm);
  c_adm->add_option("--mu", mu_str, "dominant coweight, comma separated")->required();
  c_adm->add_option("--K", K_str, "parahoric wall indices for level structure");

  CLI::App* c_bg = app.add_subcommand("bgmu", "neutral acceptable classes with dimensions");
  add_common(c_bg);
  c_bg->add_option("--mu", mu_str, "dominant coweight, comma separated")->required();

  CLI::App* c_ct = app.add_subcommand("chartable", "finite Hecke character table");
  c_ct->add_option("--group", group, "finite type: A2 or C2")->required();
  c_ct->add_flag("--json", as_json, "machine-readable output");
  c_ct->add_option("--csv", csv_file, "write the table as CSV to this path");

  CLI::App* c_po = app.add_subcommand("poset", "closure orders: coset or straight-class");
  add_common(c_po);
  c_po->add_option("--mu", mu_str, "straight-class poset on the classes below mu");
  c_po->add_option("--K", K_str, "coset poset: wall indices");
  c_po->add_option("--nodes", nodes_str, "semicolon-separated element expressions");
  c_po->add_flag("--finite", finite_nodes, "nodes = K-minimal finite Weyl elements");

  CLI::App* c_qu = app.add_subcommand("quadruple", "standard quadruple of a conjugacy class");
  add_common(c_qu);
  c_qu->add_option("--w", w_str, "element expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : ParseError::exit_code;
  }

  try {
    if (c_ct->parsed()) {
      CharTable t = finite_char_table(group);
      std::string det = char_table_det_factored(t);
      if (!csv_file.empty()) write_text_file(csv_file, csv_char_table(t));
      Json j = json_char_table(t);
      j["det"] = det;
      std::string text = "character table " + t.label + "\n";
      for (size_t i = 0; i < t.row_names.size(); ++i) {
        text += "  " + t.row_names[i] + ":";
        for (const MPoly& e : t.entries[i]) text += "  " + e.str();
        text += "\n";
      }
      text += "det = " + det + "\n";
      emit(j, as_json, text);
      return 0;
    }

    Session s(group, twist, budget);
    const AffineWeyl& aw = *s.aw;
    ConjCtx& ctx = *s.ctx;
    ClassPolyEngine& eng = *s.eng;

    auto write_dot = [&](const std::string& content) {
      if (!dot_file.empty()) write_text_file(dot_file, content);
    };

    if (c_desc->parsed()) {
      const RootDatum& rd = aw.rd();
      Json gens = Json::array();
      std::string gtext;
      for (const auto& gen : aw.gens()) {
        gens.push_back(Json{{"cli", gen.cli_index},
                            {"wall_root", json_vec(rd.roots[static_cast<size_t>(gen.wall.root)])},
                            {"wall_k", gen.wall.k}});
        gtext += "  s" + std::to_string(gen.cli_index) + ": wall " +
                 vec_str(rd.roots[static_cast<size_t>(gen.wall.root)]) + " + " +
                 std::to_string(gen.wall.k) + "\n";
      }
      Json j{{"name", rd.name},
             {"dim", rd.dim},
             {"rank", rd.simple_roots.size()},
             {"positive_roots", rd.n_pos},
             {"w0_order", aw.w0().size()},
             {"omega_classes", aw.omega_conjugators().size()},
             {"two_rho", json_vec(rd.two_rho)},
             {"twist", s.spec.twist},
             {"generators", gens}};
      std::string text = rd.name + ": dim " + std::to_string(rd.dim) + ", rank " +
                         std::to_string(rd.simple_roots.size()) + ", " +
                         std::to_string(rd.n_pos) + " positive roots, |W0| = " +
                         std::to_string(aw.w0().size()) + ", omega classes " +
                         std::to_string(aw.omega_conjugators().size()) + ", twist " + s.spec.twist +
                         "\n" + gtext;
      emit(j, as_json, text);
      return 0;
    }

    if (c_len->parsed()) {
      AffineElt w = parse_element(aw, w_str);
      ConjInvariant inv = ctx.newton_kottwitz(w);
      Json j{{"w", element_str(aw, w)},
             {"word", element_word_str(aw, w)},
             {"length", w.len},
             {"newton", json_qvec(inv.newton)},
             {"kottwitz", json_vec(inv.kappa)},
             {"straight", ctx.is_straight(w)}};
      std::string text = "length = " + std::to_string(w.len) + "\nword = " +
                         element_word_str(aw, w) + "\nnewton = " + qvec_str(inv.newton) +
                         "\nkottwitz = " + vec_str(inv.kappa) + "\nstraight = " +
                         (ctx.is_straight(w) ? "yes" : "no") + "\n";
      emit(j, as_json, text);
      return 0;
    }

    if (c_red->parsed()) {
      AffineElt w = parse_element(aw, w_str);
      AffineElt b = parse_element(aw, b_str);
      ReductionTrace trace;
      AffineElt m = ctx.reduce_to_minimal(w, &trace);
      ReductionTree tree = eng.reduction_tree(w, ctx.newton_kottwitz(b));
      write_dot(dot_reduction_tree(aw, tree));
      Json steps = Json::array();
      std::string stext;
      for (const auto& st : trace.steps) {
        steps.push_back(Json{{"gen", st.gen_cli},
                             {"to", element_str(aw, st.to)},
                             {"drop", st.drop}});
        stext += std::string("  ") + (st.gen_cli >= 0 ? "s" + std::to_string(st.gen_cli) : "omega") +
                 " -> " + element_word_str(aw, st.to) + (st.drop ? "  (drop)" : "") + "\n";
      }
      Json j{{"w", element_str(aw, w)},
             {"minimal", element_str(aw, m)},
             {"min_length", m.len},
             {"steps", steps},
             {"tree_nodes", tree.nodes.size()}};
      std::string text = "minimal length = " + std::to_string(m.len) + "\nminimal element = " +
                         element_word_str(aw, m) + "\nsteps:\n" + stext;
      emit(j, as_json, text);
      return 0;
    }

    if (c_cp->parsed()) {
      AffineElt w = parse_element(aw, w_str);
      ClassPolyDecomp d = eng.decomp(w);
      Json j{{"w", element_str(aw, w)},
             {"decomp", json_decomp(d)},
             {"mass_at_one", d.mass_at_one().str()}};
      std::string text;
      for (const auto& [k, f] : d.entries)
        text += k.inv.str() + "  min_len=" + std::to_string(k.min_len) + "  poly = " + f.str() +
                "\n";
      text += "mass at q=1: " + d.mass_at_one().str() + "\n";
      if (!b_str.empty() && b_str != "identity") {
        ConjInvariant inv = ctx.newton_kottwitz(parse_element(aw, b_str));
        PolyZq f = eng.by_invariant(w, inv);
        j["poly"] = json_poly(f);
        text += "F_{w,[b]} = " + f.str() + "\n";
      }
      emit(j, as_json, text);
      return 0;
    }

    if (c_dim->parsed()) {
      AffineElt w = parse_element(aw, w_str);
      std::vector<int> K;
      if (!K_str.empty())
        for (Int x : parse_vec_arg(K_str)) K.push_back(static_cast<int>(x));
      StratumQuery q = StratumQuery::make(ctx, w, K, parse_element(aw, b_str));
      StratumReport r = stratum_report(eng, q);
      Json j = json_stratum(aw, r);
      std::string text;
      Int shown = r.dim.dimension == NEG_INFINITY ? NEG_INFINITY
                                                  : r.dim.dimension - r.dim.level_shift;
      text += "dim = " + (shown == NEG_INFINITY ? std::string("empty") : std::to_string(shown)) +
              "\n";
      text += "components of maximal dimension = " + std::to_string(r.dim.irr_max_count) + "\n";
      if (K.empty()) {
        std::string note = dims_note(eng, w, q.b.inv);
        if (!note.empty()) text += "component dims: " + note + "\n";
      } else {
        text += "level shift = " + std::to_string(r.dim.level_shift) + "\n";
      }
      text += "poly = " + r.dim.polynomial.str() + "\n";
      text += "adlv dim = " + (r.dim.adlv_dimension == NEG_INFINITY
                                   ? std::string("empty")
                                   : std::to_string(r.dim.adlv_dimension)) +
              "\n";
      text += "virtual dim = " + rat_str(r.virt.d_w) + "\n";
      std::string eta;
      for (int i : aw.w0().word(r.virt.eta)) eta += (eta.empty() ? "s" : "*s") + std::to_string(i + 1);
      text += "eta = " + (eta.empty() ? "identity" : eta) + "\n";
      text += std::string("shrunken = ") + (r.virt.shrunken ? "yes" : "no") + "\n";
      emit(j, as_json, text);
      return 0;
    }

    if (c_adm->parsed()) {
      Vec mu = parse_vec_arg(mu_str);
      if (aw.pair_two_rho(to_q(aw.rd().normalize(mu))) > budget.length_bound)
        throw ResourceError("length of t^mu exceeds --length-bound");
      if (K_str.empty()) {
        auto adm = admissible_set(ctx, mu);
        Json els = Json::array();
        std::string text = std::to_string(adm.size()) + " admissible elements:\n";
        for (const auto& e : adm) {
          els.push_back(element_str(aw, e));
          text += "  " + element_word_str(aw, e) + "  = " + element_str(aw, e) + "\n";
        }
        emit(Json{{"mu", json_vec(mu)}, {"count", adm.size()}, {"elements", els}}, as_json, text);
      } else {
        std::vector<int> K;
        for (Int x : parse_vec_arg(K_str)) K.push_back(static_cast<int>(x));
        AdmissibleSets sets = admissible_sets(ctx, mu, K);
        bool ident = ekor_identity_holds(ctx, mu, K);
        Json reps = Json::array(), ekor = Json::array();
        for (const auto& e : sets.level_reps) reps.push_back(element_str(aw, e));
        for (const auto& e : sets.ekor) ekor.push_back(element_str(aw, e));
        Json j{{"mu", json_vec(mu)},
               {"adm_count", sets.adm.size()},
               {"level_reps", reps},
               {"ekor", ekor},
               {"ekor_identity", ident}};
        std::string text = std::to_string(sets.adm.size()) + " admissible, " +
                           std::to_string(sets.level_reps.size()) + " double cosets, " +
                           std::to_string(sets.ekor.size()) + " EKOR elements; identity " +
                           (ident ? "holds" : "FAILS") + "\n";
        emit(j, as_json, text);
      }
      return 0;
    }

    if (c_bg->parsed()) {
      Vec mu = parse_vec_arg(mu_str);
      if (aw.pair_two_rho(to_q(aw.rd().normalize(mu))) > budget.length_bound)
        throw ResourceError("length of t^mu exceeds --length-bound");
      auto classes = bg_mu(ctx, mu);
      ClassPoset poset = straight_class_poset(ctx, classes);
      write_dot(dot_class_poset(aw, poset));
      Json rows = Json::array();
      std::string text = std::to_string(classes.size()) + " classes:\n";
      for (const auto& c : classes) {
        SpecialParahoricReport sp = special_parahoric_dim(ctx, mu, c);
        rows.push_back(Json{{"newton", json_qvec(c.inv.newton)},
                            {"kottwitz", json_vec(c.inv.kappa)},
                            {"rep", element_str(aw, c.rep)},
                            {"dim_coset", json_dim(sp.dim_coset)},
                            {"dim_adlv", json_dim(sp.dim_adlv)}});
        text += "  " + c.inv.str() + "  rep=" + element_str(aw, c.rep) + "  dim=" +
                (sp.nonempty ? std::to_string(sp.dim_coset) : "empty") + "  adlv=" +
                (sp.nonempty ? std::to_string(sp.dim_adlv) : "empty") + "\n";
      }
      Json edges = Json::array();
      for (auto [a, b] : poset_covers(poset.leq)) {
        edges.push_back(Json::array({a, b}));
        text += "  order: " + std::to_string(a) + " < " + std::to_string(b) + "\n";
      }
      emit(Json{{"mu", json_vec(mu)}, {"classes", rows}, {"edges", edges}}, as_json, text);
      return 0;
    }

    if (c_po->parsed()) {
      if (!mu_str.empty()) {
        Vec mu = parse_vec_arg(mu_str);
        auto classes = bg_mu(ctx, mu);
        ClassPoset poset = straight_class_poset(ctx, classes);
        write_dot(dot_class_poset(aw, poset));
        Json j = json_poset(class_poset_labels(aw, poset), poset.leq);
        std::string text;
        for (auto [a, b] : poset_covers(poset.leq))
          text += poset.nodes[static_cast<size_t>(a)].inv.str() + "  <  " +
                  poset.nodes[static_cast<size_t>(b)].inv.str() + "\n";
        emit(j, as_json, text);
        return 0;
      }
      std::vector<int> K;
      if (!K_str.empty())
        for (Int x : parse_vec_arg(K_str)) K.push_back(static_cast<int>(x));
      std::vector<AffineElt> nodes;
      if (!nodes_str.empty()) {
        size_t i = 0;
        while (i <= nodes_str.size()) {
          size_t j = nodes_str.find(';', i);
          if (j == std::string::npos) j = nodes_str.size();
          std::string tok = nodes_str.substr(i, j - i);
          if (!tok.empty()) nodes.push_back(parse_element(aw, tok));
          i = j + 1;
          if (j == nodes_str.size()) break;
        }
      } else if (finite_nodes) {
        std::vector<int> Kpos = gen_positions(aw, K);
        for (int u = 0; u < aw.w0().size(); ++u) {
          AffineElt e = aw.from_finite(u);
          if (aw.is_min_coset_rep(e, Kpos)) nodes.push_back(e);
        }
        std::sort(nodes.begin(), nodes.end(), [](const AffineElt& a, const AffineElt& b) {
          if (a.len != b.len) return a.len < b.len;
          return a < b;
        });
      } else {
        throw ParseError("poset needs --mu, --nodes, or --finite");
      }
      CosetPoset poset = coset_closure_poset(ctx, K, nodes);
      write_dot(dot_coset_poset(aw, poset));
      Json j = json_poset(coset_poset_labels(aw, poset), poset.leq);
      j["undecided"] = poset.undecided.size();
      std::string text = std::to_string(nodes.size()) + " nodes\n";
      for (auto [a, b] : poset_covers(poset.leq))
        text += "  " + element_word_str(aw, poset.nodes[static_cast<size_t>(a)]) + "  <  " +
                element_word_str(aw, poset.nodes[static_cast<size_t>(b)]) + "\n";
      emit(j, as_json, text);
      return 0;
    }

    if (c_qu->parsed()) {
      AffineElt w = parse_element(aw, w_str);
      StandardQuadruple q = ctx.standard_quadruple(w);
      Json Jlist = Json::array();
      for (int i : q.J) Jlist.push_back(i);
      Json Klist = Json::array();
      std::string ktext;
      for (const AffRoot& a : q.K) {
        Klist.push_back(Json{{"root", json_vec(aw.rd().roots[static_cast<size_t>(a.root)])},
                             {"k", a.k}});
        ktext += (ktext.empty() ? "" : ", ") +
                 vec_str(aw.rd().roots[static_cast<size_t>(a.root)]) + "+" + std::to_string(a.k);
      }
      Json Clist = Json::array();
      std::string ctext;
      for (const AffineElt& c : q.C) {
        Clist.push_back(element_str(aw, c));
        ctext += (ctext.empty() ? "" : ", ") + element_str(aw, c);
      }
      Json j{{"J", Jlist},
             {"x", element_str(aw, q.x)},
             {"K", Klist},
             {"C", Clist},
             {"newton", json_qvec(q.nu)}};
      std::string jtext;
      for (int i : q.J) jtext += (jtext.empty() ? "" : ",") + std::to_string(i + 1);
      std::string text = "J = {" + jtext + "}\nx = " + element_str(aw, q.x) + "\nK = {" + ktext +
                         "}\nC = {" + ctext + "}\nnewton = " + qvec_str(q.nu) + "\n";
      emit(j, as_json, text);
      return 0;
    }

    throw ParseError("no verb selected");
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return ParseError::exit_code;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return DomainError::exit_code;
  } catch (const ResourceError& e) {
    std::cerr << "resource budget exceeded: " << e.what() << "\n";
    return ResourceError::exit_code;
  }
  return 0;
}
