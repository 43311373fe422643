#pragma once
// Dimension and non-emptiness bookkeeping for the double-coset strata cut out
// by a twisted conjugacy class: Iwahori and parahoric levels via class
// polynomials, the closed special-parahoric formulas, eta and virtual
// dimension, P-alcove tests, admissible sets, Mazur sets and the closure
// partial orders.

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "awc/class_poly.hpp"
#include "awc/conjugacy.hpp"

namespace awc {

inline bool is_dominant_coweight(const RootDatum& rd, const Vec& mu) {
  for (const auto& a : rd.simple_roots)
    if (dot(a, mu) < 0) return false;
  return true;
}

// average of mu over the orbit of the diagram part of the twist, as a
// dominant rational coweight
inline QVec sigma_average(const ConjCtx& ctx, const Vec& mu) {
  const RootDatum& rd = ctx.aw().rd();
  const TwistAuto& d = ctx.delta();
  QVec acc = to_q(mu);
  int n = 1;
  if (!d.linear_trivial) {
    Vec cur = mu;
    for (;;) {
      cur = d.act_lin(rd, cur);
      if (cur == mu) break;
      acc = qadd(acc, to_q(cur));
      ++n;
      if (n > 1000) throw ResourceError("twist orbit runaway in the coweight average");
    }
  }
  if (n > 1) acc = qscale(Rat(BigInt(1), BigInt(n)), acc);
  return dominant_representative(rd, acc).first;
}

// ---- gen index plumbing ----
// CLI labels the walls s1..sr, s0; internal parahoric helpers index gens()
inline std::vector<int> gen_positions(const AffineWeyl& aw, const std::vector<int>& K_cli) {
  std::vector<int> p;
  p.reserve(K_cli.size());
  for (int c : K_cli) p.push_back(aw.gen_by_cli(c));
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

inline AffineElt double_coset_min(const AffineWeyl& aw, AffineElt w, const std::vector<int>& Kpos) {
  bool moved = true;
  while (moved) {
    moved = false;
    for (int g : Kpos) {
      if (aw.left_descent(g, w)) {
        w = aw.compose(aw.gens()[static_cast<size_t>(g)].elt, w);
        moved = true;
      }
      if (aw.right_descent(w, g)) {
        w = aw.compose(w, aw.gens()[static_cast<size_t>(g)].elt);
        moved = true;
      }
    }
  }
  return w;
}

// all of W_K w W_K, by closing under one-sided wall multiplications
inline std::vector<AffineElt> double_coset(const AffineWeyl& aw, const AffineElt& w,
                                           const std::vector<int>& Kpos, size_t cap = 1000000) {
  std::vector<AffineElt> out{w};
  std::unordered_set<EltKey, SeqHash> seen{elt_key(w)};
  for (size_t head = 0; head < out.size(); ++head) {
    AffineElt x = out[head];
    for (int g : Kpos) {
      for (AffineElt y : {aw.compose(aw.gens()[static_cast<size_t>(g)].elt, x),
                          aw.compose(x, aw.gens()[static_cast<size_t>(g)].elt)}) {
        EltKey k = elt_key(y);
        if (seen.insert(k).second) {
          if (out.size() >= cap) throw ResourceError("parahoric double coset cap exceeded");
          out.push_back(std::move(y));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const AffineElt& a, const AffineElt& b) {
    if (a.len != b.len) return a.len < b.len;
    return elt_key(a) < elt_key(b);
  });
  return out;
}

// ---- resolving a class to its straight representative ----
// Every twisted class determines a straight class with the same invariant;
// its representative carries the data (defect, length) the dimension
// formulas need.
inline StraightClass resolve_straight(const ConjCtx& ctx, const AffineElt& e) {
  ConjInvariant inv = ctx.newton_kottwitz(e);
  Int len = ctx.aw().pair_two_rho(inv.newton);
  std::vector<Vec> reps{e.lam};
  for (const AffineElt& w : ctx.aw().enumerate_by_length(len, &reps)) {
    if (w.len != len || !ctx.is_straight(w)) continue;
    if (ctx.newton_kottwitz(w) == inv) return StraightClass{inv, w};
  }
  throw DomainError("no straight representative found for the requested class");
}

// ---- dimension reports ----
struct DimReport {
  Int dimension = NEG_INFINITY;  // degree of the governing polynomial
  Int level_shift = 0;           // subtract to measure at the parahoric level
  Int irr_max_count = 0;         // top-dimensional components; 0 when empty
  Int adlv_dimension = NEG_INFINITY;
  PolyZq polynomial;
};

inline DimReport dim_report_from(const AffineWeyl& aw, PolyZq f, Int level_shift, const QVec& nu) {
  DimReport r;
  r.level_shift = level_shift;
  if (!f.is_zero()) {
    r.dimension = f.degree();
    r.irr_max_count = f.leading_coeff();
    r.adlv_dimension = r.dimension - level_shift - aw.pair_two_rho(nu);
  }
  r.polynomial = std::move(f);
  return r;
}

inline DimReport iwahori_stratum_dim(const ClassPolyEngine& eng, const AffineElt& w,
                                     const StraightClass& b) {
  const AffineWeyl& aw = eng.ctx().aw();
  if (w.len < aw.pair_two_rho(b.inv.newton))
    return dim_report_from(aw, PolyZq(), 0, b.inv.newton);  // too short to meet the class
  return dim_report_from(aw, eng.by_invariant(w, b.inv), 0, b.inv.newton);
}

// one piece of the decomposition of a parahoric double coset under wall
// twisted conjugation; x must have no left descent in K
inline DimReport ekor_piece_dim(const ClassPolyEngine& eng, const AffineElt& x,
                                const std::vector<int>& K_cli, const StraightClass& b) {
  const AffineWeyl& aw = eng.ctx().aw();
  std::vector<int> Kpos = gen_positions(aw, K_cli);
  if (!aw.finite_parahoric(Kpos)) throw DomainError("ekor piece needs a finite parahoric");
  if (!aw.is_min_coset_rep(x, Kpos))
    throw DomainError("ekor piece needs an element with no left descent in K");
  return dim_report_from(aw, eng.by_invariant(x, b.inv), 0, b.inv.newton);
}

inline DimReport parahoric_stratum_dim(const ClassPolyEngine& eng, const AffineElt& w,
                                       const std::vector<int>& K_cli, const StraightClass& b,
                                       size_t coset_cap = 1000000) {
  const AffineWeyl& aw = eng.ctx().aw();
  std::vector<int> Kpos = gen_positions(aw, K_cli);
  if (!aw.finite_parahoric(Kpos)) throw DomainError("parahoric stratum needs a finite parahoric");
  AffineElt m = double_coset_min(aw, w, Kpos);
  PolyZq total;
  for (const AffineElt& x : double_coset(aw, m, Kpos, coset_cap))
    total = total + eng.by_invariant(x, b.inv);
  Int shift = aw.longest_in_parahoric(Kpos).len;
  return dim_report_from(aw, std::move(total), shift, b.inv.newton);
}

// ---- Mazur condition and the special parahoric formulas ----
inline bool mazur_nonempty(const ConjCtx& ctx, const Vec& mu_in, const ConjInvariant& b) {
  const AffineWeyl& aw = ctx.aw();
  Vec mu = aw.rd().normalize(mu_in);
  if (!is_dominant_coweight(aw.rd(), mu)) throw DomainError("the coweight must be dominant");
  if (!(ctx.kappa(aw.translation(mu)) == b.kappa)) return false;
  return dominance_leq(aw.rd(), b.newton, sigma_average(ctx, mu));
}

struct SpecialParahoricReport {
  bool nonempty = false;
  Int dim_coset = NEG_INFINITY;  // the mu-coset stratum, measured at the special level
  Int dim_adlv = NEG_INFINITY;
};

inline SpecialParahoricReport special_parahoric_dim(const ConjCtx& ctx, const Vec& mu,
                                                    const StraightClass& b) {
  SpecialParahoricReport rep;
  if (!mazur_nonempty(ctx, mu, b.inv)) return rep;
  const AffineWeyl& aw = ctx.aw();
  Int tm = aw.pair_two_rho(to_q(aw.rd().normalize(mu)));
  Int tn = aw.pair_two_rho(b.inv.newton);
  Int def = ctx.defect(b.rep);
  if ((tm + tn - def) % 2 != 0 || (tm - tn - def) % 2 != 0)
    throw DomainError("non-integral special parahoric dimension");
  rep.nonempty = true;
  rep.dim_coset = (tm + tn - def) / 2;
  rep.dim_adlv = (tm - tn - def) / 2;
  return rep;
}

// ---- eta and the virtual dimension ----
// w tau(base alcove) lies in a unique finite chamber x C^-; peeling x off
// leaves t^lam y with image in C^-, and eta = y * (linear twist of x).
inline int eta_sigma(const ConjCtx& ctx, const AffineElt& w_in) {
  const AffineWeyl& aw = ctx.aw();
  const W0Table& w0 = aw.w0();
  const RootDatum& rd = aw.rd();
  AffineElt w = aw.compose(w_in, ctx.delta().tau);
  QVec q = aw.alcove_sample(w);
  int u = 0;  // u(q) ends antidominant; x = u^{-1}
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < w0.rank(); ++i) {
      if (dot(rd.simple_roots[static_cast<size_t>(i)], q) > Rat(0)) {
        q = w0.act_q(w0.simple(i), q);
        u = w0.mult(w0.simple(i), u);
        moved = true;
      }
    }
  }
  int x = w0.inv(u);
  AffineElt rest = aw.compose(aw.from_finite(u), w);
  return w0.mult(rest.u, ctx.delta().w0_conj[static_cast<size_t>(x)]);
}

// true when the alcove of w avoids every strip -1 < <alpha, v> < 0
inline bool is_shrunken(const AffineWeyl& aw, const AffineElt& w) {
  for (int r = 0; r < aw.rd().n_pos; ++r)
    if (aw.alcove_floor(w, r) == -1) return false;
  return true;
}

struct VirtualDim {
  int eta = 0;  // finite Weyl element
  bool shrunken = false;
  Rat d_w;
};

inline VirtualDim eta_virtual(const ConjCtx& ctx, const AffineElt& w, const StraightClass& b) {
  const AffineWeyl& aw = ctx.aw();
  VirtualDim v;
  v.eta = eta_sigma(ctx, w);
  v.shrunken = is_shrunken(aw, w);
  Int le = aw.w0().length(v.eta);
  Int tn = aw.pair_two_rho(b.inv.newton);
  v.d_w = Rat(BigInt(w.len + le - ctx.defect(b.rep) + tn), BigInt(2));
  return v;
}

// ---- P-alcove test ----
// (P, x)-alcove: x^{-1} w delta(x) lies in the Levi's subgroup, and every
// root subgroup of the unipotent radical that w pulls into the standard
// position stays there. Offsets outside the window cannot change sign.
inline bool p_alcove_test(const ConjCtx& ctx, const AffineElt& w, std::vector<int> J, int x) {
  const AffineWeyl& aw = ctx.aw();
  const W0Table& w0 = aw.w0();
  const RootDatum& rd = aw.rd();
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  for (int j : J) {
    if (j < 0 || j >= w0.rank()) throw DomainError("Levi subset index out of range");
    if (!std::binary_search(J.begin(), J.end(), ctx.delta().simple_perm[static_cast<size_t>(j)]))
      throw DomainError("the Levi subset must be stable under the diagram part of the twist");
  }
  auto sub = ctx.subsystem(J);
  AffineElt xe = aw.from_finite(x);
  AffineElt y = aw.compose(aw.compose(aw.inverse(xe), w), twist_apply(aw, ctx.delta(), xe));
  if (!ctx.in_wtilde_J(sub, y)) return false;

  std::set<int> jpos(sub.pos_roots.begin(), sub.pos_roots.end());
  Int window = 1;
  for (int r = 0; r < rd.n_pos; ++r) {
    Int p = dot(rd.roots[static_cast<size_t>(r)], w.lam);
    window = std::max(window, (p < 0 ? -p : p) + 1);
  }
  AffineElt winv = aw.inverse(w);
  for (int r = 0; r < rd.n_pos; ++r) {
    if (jpos.count(r)) continue;
    int a = w0.act_root(x, r);
    for (Int k = -window; k <= window; ++k) {
      AffRoot ar{a, k};
      if (aw.aff_root_positive(aw.act_aff_root(winv, ar)) && !aw.aff_root_positive(ar))
        return false;
    }
  }
  return true;
}

// ---- non-emptiness for basic classes ----
// Criterion branch: shrunken alcove, basic class, one component, no central
// torus. eta must not fall into a proper twist-stable standard Levi, i.e.
// the orbit closure of its support must exhaust the simple roots.
inline bool basic_criterion_applies(const ConjCtx& ctx, const AffineElt& w, const StraightClass& b) {
  const RootDatum& rd = ctx.aw().rd();
  return rd.components.size() == 1 && rd.central_basis.empty() &&
         ctx.aw().pair_two_rho(b.inv.newton) == 0 && is_shrunken(ctx.aw(), w);
}

inline bool basic_nonempty_criterion(const ConjCtx& ctx, const AffineElt& w, const StraightClass& b) {
  if (!basic_criterion_applies(ctx, w, b))
    throw DomainError("the shrunken criterion needs a simple semisimple datum, a basic class and a shrunken alcove");
  if (!(ctx.kappa(w) == b.inv.kappa)) return false;
  const W0Table& w0 = ctx.aw().w0();
  std::set<int> supp;
  for (int i : w0.word(eta_sigma(ctx, w))) supp.insert(i);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i : std::vector<int>(supp.begin(), supp.end()))
      if (supp.insert(ctx.delta().simple_perm[static_cast<size_t>(i)]).second) grew = true;
  }
  return static_cast<int>(supp.size()) == w0.rank();
}

inline bool basic_nonempty(const ClassPolyEngine& eng, const AffineElt& w, const StraightClass& b) {
  const ConjCtx& ctx = eng.ctx();
  if (basic_criterion_applies(ctx, w, b)) return basic_nonempty_criterion(ctx, w, b);
  return !iwahori_stratum_dim(eng, w, b).polynomial.is_zero();
}

// ---- admissible sets ----
inline std::vector<AffineElt> admissible_set(const ConjCtx& ctx, const Vec& mu_in) {
  const AffineWeyl& aw = ctx.aw();
  const RootDatum& rd = aw.rd();
  Vec mu = rd.normalize(mu_in);
  if (!is_dominant_coweight(rd, mu)) throw DomainError("the coweight must be dominant");
  std::vector<AffineElt> targets;
  std::set<Vec> orbit;
  for (int u = 0; u < aw.w0().size(); ++u) {
    Vec v = rd.normalize(aw.w0().act(u, mu));
    if (orbit.insert(v).second) targets.push_back(aw.translation(v));
  }
  std::vector<Vec> reps{mu};
  std::vector<AffineElt> out;
  for (const AffineElt& w : aw.enumerate_by_length(aw.pair_two_rho(to_q(mu)), &reps)) {
    for (const AffineElt& t : targets) {
      if (aw.bruhat_leq(w, t)) {
        out.push_back(w);
        break;
      }
    }
  }
  return out;
}

struct AdmissibleSets {
  std::vector<AffineElt> adm;         // everything below a translation of mu
  std::vector<AffineElt> level_reps;  // minimal double coset representatives
  std::vector<AffineElt> ekor;        // members with no left descent in K
};

inline AdmissibleSets admissible_sets(const ConjCtx& ctx, const Vec& mu,
                                      const std::vector<int>& K_cli) {
  const AffineWeyl& aw = ctx.aw();
  std::vector<int> Kpos = gen_positions(aw, K_cli);
  if (!aw.finite_parahoric(Kpos)) throw DomainError("admissible projections need a finite parahoric");
  AdmissibleSets s;
  s.adm = admissible_set(ctx, mu);
  std::set<EltKey> seen;
  for (const AffineElt& w : s.adm) {
    AffineElt m = double_coset_min(aw, w, Kpos);
    if (seen.insert(elt_key(m)).second) s.level_reps.push_back(m);
    if (aw.is_min_coset_rep(w, Kpos)) s.ekor.push_back(w);
  }
  auto by_len = [](const AffineElt& a, const AffineElt& b) {
    if (a.len != b.len) return a.len < b.len;
    return elt_key(a) < elt_key(b);
  };
  std::sort(s.level_reps.begin(), s.level_reps.end(), by_len);
  std::sort(s.ekor.begin(), s.ekor.end(), by_len);
  return s;
}

// saturating the admissible set by W_K on both sides and intersecting with
// the left-minimal representatives must give back the plain intersection
inline bool ekor_identity_holds(const ConjCtx& ctx, const Vec& mu, const std::vector<int>& K_cli) {
  const AffineWeyl& aw = ctx.aw();
  std::vector<int> Kpos = gen_positions(aw, K_cli);
  AdmissibleSets s = admissible_sets(ctx, mu, K_cli);
  std::set<EltKey> saturated_min;
  for (const AffineElt& a : s.adm)
    for (const AffineElt& x : double_coset(aw, double_coset_min(aw, a, Kpos), Kpos))
      if (aw.is_min_coset_rep(x, Kpos)) saturated_min.insert(elt_key(x));
  std::set<EltKey> plain;
  for (const AffineElt& x : s.ekor) plain.insert(elt_key(x));
  return saturated_min == plain;
}

// ---- the Mazur set of a dominant coweight ----
inline std::vector<StraightClass> bg_mu(const ConjCtx& ctx, const Vec& mu_in) {
  const AffineWeyl& aw = ctx.aw();
  const RootDatum& rd = aw.rd();
  Vec mu = rd.normalize(mu_in);
  if (!is_dominant_coweight(rd, mu)) throw DomainError("the coweight must be dominant");
  QVec diamond = sigma_average(ctx, mu);
  Vec kmu = ctx.kappa(aw.translation(mu));
  std::vector<Vec> reps{mu};
  std::vector<StraightClass> out;
  for (const StraightClass& s : ctx.straight_classes(aw.pair_two_rho(to_q(mu)), &reps)) {
    if (!(s.inv.kappa == kmu)) continue;
    if (!dominance_leq(rd, s.inv.newton, diamond)) continue;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [&](const StraightClass& a, const StraightClass& b) {
    Int ta = aw.pair_two_rho(a.inv.newton), tb = aw.pair_two_rho(b.inv.newton);
    if (ta != tb) return ta < tb;
    return a.inv < b.inv;
  });
  return out;
}

// ---- closure partial orders ----
// All minimal length members of the class of rep, by closing under the
// length-preserving conjugation moves.
inline std::vector<AffineElt> min_class_members(const ConjCtx& ctx, const AffineElt& rep,
                                                size_t cap = 1000000) {
  std::vector<AffineElt> out{rep};
  std::unordered_set<EltKey, SeqHash> seen{elt_key(rep)};
  for (size_t head = 0; head < out.size(); ++head) {
    AffineElt x = out[head];
    for (const ConjCtx::Move& m : ctx.moves()) {
      AffineElt y = ctx.apply_move(m, x);
      if (y.len != rep.len) continue;
      if (seen.insert(elt_key(y)).second) {
        if (out.size() >= cap) throw ResourceError("minimal class member cap exceeded");
        out.push_back(std::move(y));
      }
    }
  }
  return out;
}

// invariant side: same kappa and dominance between the Newton points
inline bool straight_leq(const ConjCtx& ctx, const StraightClass& a, const StraightClass& b) {
  if (!(a.inv.kappa == b.inv.kappa)) return false;
  return dominance_leq(ctx.aw().rd(), a.inv.newton, b.inv.newton);
}

// conjugation side: some minimal member of a sits below the representative
// of b in Bruhat order (one representative of b suffices)
inline bool straight_leq_bruhat(const ConjCtx& ctx, const StraightClass& a, const StraightClass& b) {
  for (const AffineElt& w : min_class_members(ctx, a.rep))
    if (ctx.aw().bruhat_leq(w, b.rep)) return true;
  return false;
}

struct ClassPoset {
  std::vector<StraightClass> nodes;
  std::vector<std::vector<char>> leq;
};

inline ClassPoset straight_class_poset(const ConjCtx& ctx, std::vector<StraightClass> nodes) {
  ClassPoset p;
  p.nodes = std::move(nodes);
  size_t n = p.nodes.size();
  p.leq.assign(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      p.leq[i][j] = (i == j) || straight_leq(ctx, p.nodes[i], p.nodes[j]);
  return p;
}

struct CosetPoset {
  std::vector<AffineElt> nodes;
  std::vector<std::vector<char>> leq;
  // a conjugator that settles a relation no plain Bruhat comparison gives
  std::vector<std::tuple<int, int, AffineElt>> witnesses;
  // pairs the bounded sweep could not settle; only when the sweep was cut off
  std::vector<std::pair<int, int>> undecided;
};

inline CosetPoset coset_closure_poset(const ConjCtx& ctx, const std::vector<int>& K_cli,
                                      std::vector<AffineElt> nodes, size_t u_budget = 1000000) {
  const AffineWeyl& aw = ctx.aw();
  std::vector<int> Kpos = gen_positions(aw, K_cli);
  std::vector<AffineElt> sweep{aw.identity()};
  bool complete = true;
  {
    std::unordered_set<EltKey, SeqHash> seen{elt_key(sweep[0])};
    for (size_t head = 0; head < sweep.size() && complete; ++head) {
      AffineElt x = sweep[head];
      for (int g : Kpos) {
        AffineElt y = aw.compose(x, aw.gens()[static_cast<size_t>(g)].elt);
        if (!seen.insert(elt_key(y)).second) continue;
        if (sweep.size() >= u_budget) {
          complete = false;
          break;
        }
        sweep.push_back(std::move(y));
      }
    }
  }
  CosetPoset p;
  p.nodes = std::move(nodes);
  size_t n = p.nodes.size();
  p.leq.assign(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) {
        p.leq[i][j] = 1;
        continue;
      }
      bool plain = aw.bruhat_leq(p.nodes[i], p.nodes[j]);
      bool found = plain;
      if (!found) {
        for (const AffineElt& u : sweep) {
          if (u.len == 0 && u.u == 0 && is_zero(u.lam)) continue;
          AffineElt c = aw.compose(aw.compose(u, p.nodes[i]),
                                   aw.inverse(twist_apply(aw, ctx.delta(), u)));
          if (aw.bruhat_leq(c, p.nodes[j])) {
            found = true;
            p.witnesses.emplace_back(static_cast<int>(i), static_cast<int>(j), u);
            break;
          }
        }
      }
      if (found) p.leq[i][j] = 1;
      else if (!complete) p.undecided.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return p;
}

// Hasse edges of a decided relation: strict pairs with nothing in between
inline std::vector<std::pair<int, int>> poset_covers(const std::vector<std::vector<char>>& leq) {
  size_t n = leq.size();
  auto strict = [&](size_t a, size_t b) { return leq[a][b] && !leq[b][a]; };
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (!strict(i, j)) continue;
      bool mid = false;
      for (size_t k = 0; k < n && !mid; ++k)
        if (k != i && k != j && strict(i, k) && strict(k, j)) mid = true;
      if (!mid) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

// ---- a validated query bundle for reports ----
struct StratumQuery {
  AffineElt w;
  std::vector<int> K;  // wall labels; empty means Iwahori level
  StraightClass b;

  static StratumQuery make(const ConjCtx& ctx, AffineElt w, std::vector<int> K_cli,
                           const AffineElt& class_witness) {
    return StratumQuery{std::move(w), std::move(K_cli), resolve_straight(ctx, class_witness)};
  }
};

struct StratumReport {
  StratumQuery query;
  DimReport dim;
  VirtualDim virt;
};

inline StratumReport stratum_report(const ClassPolyEngine& eng, const StratumQuery& q) {
  StratumReport r{q, {}, {}};
  r.dim = q.K.empty() ? iwahori_stratum_dim(eng, q.w, q.b)
                      : parahoric_stratum_dim(eng, q.w, q.K, q.b);
  r.virt = eta_virtual(eng.ctx(), q.w, q.b);
  return r;
}

}  // namespace awc
