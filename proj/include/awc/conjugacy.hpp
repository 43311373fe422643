#pragma once
// Twisted conjugation machinery: Newton points and Kottwitz classes,
// straightness, reduction to minimal length by elementary conjugation moves,
// canonical class representatives, standard quadruples and their equivalence,
// defect and twisted-stable subsets.

#include <functional>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "awc/affine.hpp"
#include "awc/twist.hpp"

namespace awc {

struct ConjInvariant {
  QVec newton;  // dominant Newton point
  Vec kappa;    // canonical coordinates in the delta-coinvariants of Omega

  friend bool operator==(const ConjInvariant& a, const ConjInvariant& b) {
    return a.newton == b.newton && a.kappa == b.kappa;
  }
  friend bool operator<(const ConjInvariant& a, const ConjInvariant& b) {
    if (a.kappa != b.kappa) return a.kappa < b.kappa;
    return std::lexicographical_compare(a.newton.begin(), a.newton.end(), b.newton.begin(), b.newton.end());
  }
  std::string str() const { return "nu=" + qvec_str(newton) + " kappa=" + vec_str(kappa); }
};

enum class Tri { No = 0, Yes = 1, Maybe = 2 };

struct ReductionStep {
  AffineElt from;
  AffineElt conj_by;  // the element x of the move w -> x w delta(x)^{-1}
  int gen_cli;        // cli index when the move is a simple conjugation, -1 for omega
  AffineElt to;
  bool drop;  // true when length strictly decreased
};

struct ReductionTrace {
  AffineElt start;
  std::vector<ReductionStep> steps;
  AffineElt result;
};

struct ConjOptions {
  size_t frontier_cap = 1000000;
  Int canon_height = 6;
  Int quad_u_extra = 6;    // u-search depth above the minimal length
  Int witness_window = 6;  // quadruple-equivalence w-search window
  bool randomized = false;
  unsigned seed = 0;
};

struct StandardQuadruple {
  std::vector<int> J;          // finite simple indices, sorted
  AffineElt x;                 // length-zero in the J-parahoric-affine group
  std::vector<AffRoot> K;      // walls of the chosen finite subset of the J-simples
  std::vector<AffineElt> C;    // twisted class inside W_K, sorted
  QVec nu;                     // dominant Newton point
};

struct StraightClass {
  ConjInvariant inv;
  AffineElt rep;  // lexicographically smallest straight element
};

class ConjCtx {
 public:
  ConjCtx(const AffineWeyl& aw, TwistAuto delta, ConjOptions opts = {})
      : aw_(aw), delta_(std::move(delta)), opts_(opts), rng_(opts.seed) {
    build_kappa();
  }

  const AffineWeyl& aw() const { return aw_; }
  const TwistAuto& delta() const { return delta_; }
  const ConjOptions& options() const { return opts_; }

  // ---- invariants ----
  // linear part of w * delta as an affine transformation of V
  Vec lin_apply(const AffineElt& w, const Vec& v) const {
    Vec t = delta_.linear_trivial ? v : delta_.act_lin(aw_.rd(), v);
    t = aw_.w0().act(delta_.tau.u, t);
    return aw_.w0().act(w.u, t);
  }
  QVec lin_apply_q(const AffineElt& w, const QVec& v) const {
    QVec t = delta_.linear_trivial ? v : delta_.act_lin_q(aw_.rd(), v);
    t = aw_.w0().act_q(delta_.tau.u, t);
    return aw_.w0().act_q(w.u, t);
  }
  Vec trans_vec(const AffineElt& w) const {  // w * delta: v -> L v - trans_vec
    return w.lam + aw_.w0().act(w.u, delta_.tau.lam);
  }

  QVec raw_newton(const AffineElt& w) const {
    const RootDatum& rd = aw_.rd();
    Vec tv = trans_vec(w);
    // order of the linear part: iterate on the lattice basis
    Int n = 0;
    {
      std::vector<Vec> cur = rd.x_basis;
      for (Int k = 1; k <= 10000; ++k) {
        bool ident = true;
        for (size_t j = 0; j < cur.size(); ++j) {
          cur[j] = lin_apply(w, cur[j]);
          if (rd.normalize(cur[j]) != rd.normalize(rd.x_basis[j])) ident = false;
        }
        if (ident) {
          n = k;
          break;
        }
      }
      if (n == 0) throw DomainError("linear part has unbounded order");
    }
    Vec acc(static_cast<size_t>(rd.dim), 0);
    Vec cur = tv;
    for (Int i = 0; i < n; ++i) {
      acc = acc + cur;
      cur = lin_apply(w, cur);
    }
    QVec nu(static_cast<size_t>(rd.dim));
    for (int i = 0; i < rd.dim; ++i) nu[static_cast<size_t>(i)] = Rat(BigInt(acc[static_cast<size_t>(i)]), BigInt(n));
    return rd.normalize_q(std::move(nu));
  }

  Vec kappa(const AffineElt& w) const {
    return AffineWeyl::snf_class(kappa_delta_, aw_.x_coords(w.lam));
  }

  ConjInvariant newton_kottwitz(const AffineElt& w) const {
    ConjInvariant inv;
    inv.newton = dominant_representative(aw_.rd(), raw_newton(w)).first;
    inv.kappa = kappa(w);
    return inv;
  }

  bool is_straight(const AffineElt& w) const {
    QVec nu = dominant_representative(aw_.rd(), raw_newton(w)).first;
    Rat target = dot(aw_.rd().two_rho, nu);
    return rat_is_int(target) && Rat(BigInt(w.len)) == target;
  }

  // defect: corank of the fixed space of the linear part on the lattice span
  Int defect(const AffineElt& w) const {
    const RootDatum& rd = aw_.rd();
    size_t n = rd.x_basis.size();
    QMat m(n, QVec(n, Rat(0)));
    for (size_t j = 0; j < n; ++j) {
      Vec img = lin_apply(w, rd.x_basis[j]);
      auto sol = q_solve(xbasis_qmat(), to_q(rd.normalize(img)));
      if (!sol) throw DomainError("twist image leaves the lattice span");
      for (size_t i = 0; i < n; ++i) m[i][j] = (*sol)[i] - (i == j ? Rat(1) : Rat(0));
    }
    size_t fixed_dim = q_kernel(m).size();
    // consistency of the displacement equation (L - 1)v = trans - nu
    {
      QVec rhs_amb = qsub(to_q(trans_vec(w)), raw_newton(w));
      auto coords = q_solve(xbasis_qmat(), rhs_amb);
      if (!coords || !q_solve(m, *coords)) throw DomainError("defect displacement equation inconsistent");
    }
    return static_cast<Int>(n - fixed_dim);
  }

  // ---- elementary moves ----
  struct Move {
    AffineElt by;
    int gen_cli;  // -1 for omega conjugators
  };
  const std::vector<Move>& moves() const {
    if (moves_.empty()) {
      for (int gi : gen_order()) {
        const auto& g = aw_.gens()[static_cast<size_t>(gi)];
        moves_.push_back(Move{g.elt, g.cli_index});
      }
      for (const auto& t : aw_.omega_conjugators())
        if (!(t == aw_.identity())) moves_.push_back(Move{t, -1});
    }
    return moves_;
  }
  AffineElt apply_move(const Move& m, const AffineElt& w) const { return twist_conj(aw_, delta_, m.by, w); }

  // ---- reduction ----
  AffineElt reduce_to_minimal(const AffineElt& w, ReductionTrace* trace = nullptr) const {
    if (trace) {
      trace->start = w;
      trace->steps.clear();
    }
    AffineElt cur = w;
    while (true) {
      // BFS across the equal-length conjugation component of cur
      std::unordered_map<EltKey, std::pair<EltKey, int>, SeqHash> parent;  // key -> (parent key, move idx)
      std::vector<AffineElt> order;
      std::unordered_map<EltKey, AffineElt, SeqHash> by_key;
      EltKey k0 = elt_key(cur);
      parent[k0] = {k0, -1};
      by_key[k0] = cur;
      order.push_back(cur);
      bool descended = false;
      for (size_t head = 0; head < order.size() && !descended; ++head) {
        AffineElt x = order[head];
        auto mv_order = move_indices();
        for (int mi : mv_order) {
          const Move& m = moves()[static_cast<size_t>(mi)];
          AffineElt y = apply_move(m, x);
          if (y.len < x.len) {
            if (trace) emit_path(*trace, by_key, parent, elt_key(x));
            if (trace) trace->steps.push_back(ReductionStep{x, m.by, m.gen_cli, y, true});
            cur = y;
            descended = true;
            break;
          }
          if (y.len == x.len) {
            EltKey ky = elt_key(y);
            if (!parent.count(ky)) {
              if (parent.size() >= opts_.frontier_cap) throw ResourceError("conjugation frontier cap exceeded");
              parent[ky] = {elt_key(x), mi};
              by_key[ky] = y;
              order.push_back(std::move(y));
            }
          }
        }
      }
      if (!descended) {
        if (trace) trace->result = cur;
        return cur;
      }
    }
  }

  // canonical representative of the full twisted class of w: the smallest
  // minimal-length element of the bounded-height conjugation component
  AffineElt canon_rep(const AffineElt& w) const {
    EltKey kw = elt_key(w);
    auto hit = canon_cache_.find(kw);
    if (hit != canon_cache_.end()) return hit->second;
    AffineElt m = reduce_to_minimal(w);
    EltKey km = elt_key(m);
    hit = canon_cache_.find(km);
    if (hit != canon_cache_.end()) {
      canon_cache_.emplace(kw, hit->second);
      return hit->second;
    }
    Int cap = m.len + opts_.canon_height;
    std::set<EltKey> visited{km};
    std::vector<AffineElt> order{m};
    AffineElt best = m;
    for (size_t head = 0; head < order.size(); ++head) {
      AffineElt x = order[head];
      for (const Move& mv : moves()) {
        AffineElt y = apply_move(mv, x);
        if (y.len > cap) continue;
        EltKey ky = elt_key(y);
        if (visited.count(ky)) continue;
        if (visited.size() >= opts_.frontier_cap) throw ResourceError("canonical-representative frontier cap exceeded");
        visited.insert(ky);
        if (y.len == m.len && (y.lam < best.lam || (y.lam == best.lam && y.u < best.u))) best = y;
        order.push_back(std::move(y));
      }
    }
    for (const EltKey& k : visited) canon_cache_.emplace(k, best);
    canon_cache_.emplace(kw, best);
    return best;
  }

  // ---- straight classes ----
  std::vector<StraightClass> straight_classes(Int length_bound, const std::vector<Vec>* kappa_reps = nullptr) const {
    std::map<ConjInvariant, AffineElt> found;
    for (const AffineElt& w : aw_.enumerate_by_length(length_bound, kappa_reps)) {
      if (!is_straight(w)) continue;
      ConjInvariant inv = newton_kottwitz(w);
      auto it = found.find(inv);
      if (it == found.end() || w < it->second) found[inv] = w;
    }
    std::vector<StraightClass> out;
    for (auto& [inv, rep] : found) out.push_back(StraightClass{inv, rep});
    return out;
  }

  // ---- the finite subsystem attached to J ----
  struct SubSys {
    std::vector<int> J;
    std::vector<int> pos_roots;  // indices into rd.roots
    std::vector<AffGen> gens;    // finite J-walls, then one affine wall per J-component
  };
  SubSys subsystem(std::vector<int> J) const {
    std::sort(J.begin(), J.end());
    const RootDatum& rd = aw_.rd();
    SubSys s;
    s.J = J;
    std::set<int> jset(J.begin(), J.end());
    for (int r = 0; r < rd.n_pos; ++r) {
      bool in = true;
      for (size_t j = 0; j < rd.simple_roots.size(); ++j)
        if (rd.root_simple_coords[static_cast<size_t>(r)][j] != 0 && !jset.count(static_cast<int>(j))) in = false;
      if (in) s.pos_roots.push_back(r);
    }
    for (int j : J) {
      AffGen g;
      int ri = rd.root_index(rd.simple_roots[static_cast<size_t>(j)]);
      g.wall = AffRoot{rd.negate_index(ri), 0};
      g.refl_root = ri;
      g.refl_k = 0;
      g.cli_index = j + 1;
      g.elt = aw_.from_finite(aw_.w0().simple(j));
      s.gens.push_back(std::move(g));
    }
    // components of J and their highest roots
    std::map<int, int> comp;
    int nc = 0;
    for (int j : J) {
      if (comp.count(j)) continue;
      std::vector<int> stack{j};
      comp[j] = nc;
      while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b : J)
          if (!comp.count(b) && dot(rd.simple_roots[static_cast<size_t>(a)], rd.simple_coroots[static_cast<size_t>(b)]) != 0) {
            comp[b] = nc;
            stack.push_back(b);
          }
      }
      ++nc;
    }
    for (int c = 0; c < nc; ++c) {
      int best = -1;
      Int best_ht = -1;
      for (int r : s.pos_roots) {
        bool in_c = false, outside = false;
        Int ht = 0;
        for (size_t j = 0; j < rd.simple_roots.size(); ++j) {
          int coef = rd.root_simple_coords[static_cast<size_t>(r)][j];
          if (!coef) continue;
          ht += coef;
          if (comp.count(static_cast<int>(j)) && comp[static_cast<int>(j)] == c) in_c = true;
          else outside = true;
        }
        if (in_c && !outside && ht > best_ht) {
          best_ht = ht;
          best = r;
        }
      }
      AffGen g;
      g.wall = AffRoot{best, 1};
      g.refl_root = best;
      g.refl_k = 1;
      g.cli_index = -1000 - c;  // internal label, not a cli name
      g.elt = aw_.make(rd.coroot_of(best), aw_.w0().reflection(best));
      s.gens.push_back(std::move(g));
    }
    return s;
  }

  bool in_wtilde_J(const SubSys& s, const AffineElt& w) const {
    // finite part generated by the J-reflections
    std::set<int> sub;
    std::vector<int> jlist = s.J;
    for (int u : aw_.w0().subgroup(jlist)) sub.insert(u);
    return sub.count(w.u) > 0;
  }

  Int length_J(const SubSys& s, const AffineElt& w) const {
    const RootDatum& rd = aw_.rd();
    Int l = 0;
    int ui = aw_.w0().inv(w.u);
    for (int r : s.pos_roots) {
      Int p = dot(rd.roots[static_cast<size_t>(r)], w.lam);
      bool inv_pos = rd.is_positive_index(aw_.w0().act_root(ui, r));
      l += inv_pos ? (p < 0 ? -p : p) : (p - 1 < 0 ? 1 - p : p - 1);
    }
    return l;
  }

  // support of u inside W_<gens(s)>: peel descents, collect gen positions
  std::vector<int> support_J(const SubSys& s, AffineElt u) const {
    std::vector<int> supp;
    std::set<int> seen;
    Int guard = 0;
    while (length_J(s, u) > 0) {
      bool found = false;
      for (size_t g = 0; g < s.gens.size(); ++g) {
        AffineElt v = aw_.compose(s.gens[g].elt, u);
        if (length_J(s, v) < length_J(s, u)) {
          if (!seen.count(static_cast<int>(g))) {
            seen.insert(static_cast<int>(g));
            supp.push_back(static_cast<int>(g));
          }
          u = v;
          found = true;
          break;
        }
      }
      if (!found) throw DomainError("support peeling failed: element not in the parahoric-affine subgroup");
      if (++guard > 100000) throw ResourceError("support peeling runaway");
    }
    std::sort(supp.begin(), supp.end());
    return supp;
  }

  // ---- standard quadruples ----
  StandardQuadruple standard_quadruple(const AffineElt& w_in) const {
    const RootDatum& rd = aw_.rd();
    AffineElt w = reduce_to_minimal(w_in);
    ConjInvariant inv = newton_kottwitz(w);
    const QVec& nu = inv.newton;
    std::vector<int> J;
    for (size_t i = 0; i < rd.simple_roots.size(); ++i)
      if (dot(rd.simple_roots[i], nu) == Rat(0)) J.push_back(static_cast<int>(i));
    SubSys sub = subsystem(J);

    Rat lx_r = dot(rd.two_rho, nu);
    if (!rat_is_int(lx_r)) throw DomainError("newton point pairs non-integrally with 2rho");
    Int lx = static_cast<Int>(lx_r.numerator());

    AffineElt canon_w = canon_rep(w);

    // The standard x has raw Newton point equal to the dominant one, which can
    // force it above minimal length; it is reached from a minimal straight
    // element by a finite Weyl twisted conjugation, so two enumeration stages
    // suffice.
    Int w0_len = aw_.w0().length(aw_.w0().longest());
    for (Int budget : {lx, lx + 2 * w0_len}) {
      std::vector<Vec> fiber = kappa_fiber_reps(w.lam, budget);
      std::vector<AffineElt> xs;
      for (const AffineElt& x : aw_.enumerate_by_length(budget, &fiber)) {
        if (raw_newton(x) != nu) continue;
        if (!(kappa(x) == inv.kappa)) continue;
        if (!in_wtilde_J(sub, x)) continue;
        if (length_J(sub, x) != 0) continue;
        if (!stabilizes_gens(sub, x)) continue;
        xs.push_back(x);
      }
      std::sort(xs.begin(), xs.end(), [](const AffineElt& a, const AffineElt& b) {
        if (a.len != b.len) return a.len < b.len;
        return a < b;
      });
      for (const AffineElt& x : xs) {
        // u-search: ball of the subgroup generated by the J-walls
        std::vector<AffineElt> ball = subsystem_ball(sub, w.len + opts_.quad_u_extra);
        for (const AffineElt& u : ball) {
          AffineElt ux = aw_.compose(u, x);
          if (!(newton_kottwitz(ux) == inv)) continue;
          if (!(canon_rep(ux) == canon_w)) continue;
          return finish_quadruple(sub, J, x, u, nu);
        }
      }
      if (budget == lx + 2 * w0_len) break;
    }
    throw ResourceError("no standard quadruple found within the search bounds");
  }

  // twisted class of u inside W_K, under v -> z v (Ad(x) delta)(z)^{-1}
  std::vector<AffineElt> twisted_class_in_K(const SubSys& sub, const std::vector<int>& K,
                                            const AffineElt& x, const AffineElt& u) const {
    std::set<AffineElt> cls{u};
    std::vector<AffineElt> order{u};
    AffineElt xi = aw_.inverse(x);
    for (size_t head = 0; head < order.size(); ++head) {
      AffineElt v = order[head];
      for (int g : K) {
        const AffineElt& z = sub.gens[static_cast<size_t>(g)].elt;
        AffineElt dz = aw_.compose(aw_.compose(x, twist_apply(aw_, delta_, z)), xi);
        AffineElt v2 = aw_.compose(aw_.compose(z, v), aw_.inverse(dz));
        if (cls.insert(v2).second) {
          if (cls.size() > 100000) throw ResourceError("twisted class enumeration cap");
          order.push_back(std::move(v2));
        }
      }
    }
    return {cls.begin(), cls.end()};
  }

  Tri quadruples_equivalent(const StandardQuadruple& a, const StandardQuadruple& b) const {
    if (a.J != b.J) return Tri::No;
    if (!(a.nu == b.nu)) return Tri::No;
    // certified difference: the attached classes differ
    AffineElt ra = aw_.compose(a.C.empty() ? aw_.identity() : a.C.front(), a.x);
    AffineElt rb = aw_.compose(b.C.empty() ? aw_.identity() : b.C.front(), b.x);
    if (!(canon_rep(ra) == canon_rb_cached(rb))) return Tri::No;
    SubSys sub = subsystem(a.J);
    // tau-part: solve tau a.x delta(tau)^{-1} = b.x exactly per finite part
    std::vector<AffineElt> taus = solve_omega_J(sub, a.x, b.x);
    if (taus.empty()) return Tri::No;
    // witness search for the W~_J part
    std::vector<AffineElt> ball = subsystem_ball(sub, opts_.witness_window);
    std::vector<AffineElt> omegaJ = omega_J_box(sub, 2);
    std::set<AffineElt> aset(a.C.begin(), a.C.end());
    for (const AffineElt& tau : taus) {
      for (const AffineElt& oj : omegaJ) {
        for (const AffineElt& wball : ball) {
          AffineElt wfull = aw_.compose(oj, wball);
          // w must be delta''-fixed for delta'' = Ad(b.x) o delta
          AffineElt dw = aw_.compose(aw_.compose(b.x, twist_apply(aw_, delta_, wfull)), aw_.inverse(b.x));
          if (!(dw == wfull)) continue;
          AffineElt wt = aw_.compose(wfull, tau);
          std::set<AffineElt> img;
          for (const AffineElt& c : a.C) img.insert(aw_.compose(aw_.compose(wt, c), aw_.inverse(wt)));
          if (img == std::set<AffineElt>(b.C.begin(), b.C.end())) return Tri::Yes;
        }
      }
    }
    return Tri::Maybe;
  }

  // largest subset of J stable under Ad(w) o delta on the finite simples
  std::vector<int> i_set(std::vector<int> J, const AffineElt& w) const {
    std::sort(J.begin(), J.end());
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> keep;
      std::set<AffineElt> gens_of_J;
      for (int j : J) gens_of_J.insert(aw_.from_finite(aw_.w0().simple(j)));
      for (int j : J) {
        AffineElt img = twist_conj(aw_, delta_, w, aw_.from_finite(aw_.w0().simple(j)));
        if (gens_of_J.count(img)) keep.push_back(j);
        else changed = true;
      }
      J = keep;
    }
    return J;
  }

  // enumerate the subgroup generated by the subsystem walls up to length_J bound
  std::vector<AffineElt> subsystem_ball(const SubSys& s, Int bound) const {
    std::vector<AffineElt> out{aw_.identity()};
    std::set<AffineElt> seen{aw_.identity()};
    for (size_t head = 0; head < out.size(); ++head) {
      AffineElt cur = out[head];
      Int lc = length_J(s, cur);
      if (lc >= bound) continue;
      for (const auto& g : s.gens) {
        AffineElt nxt = aw_.compose(cur, g.elt);
        if (length_J(s, nxt) != lc + 1) continue;
        if (seen.insert(nxt).second) {
          if (out.size() > opts_.frontier_cap) throw ResourceError("subsystem ball cap exceeded");
          out.push_back(std::move(nxt));
        }
      }
    }
    std::sort(out.begin(), out.end(), [&](const AffineElt& p, const AffineElt& q) {
      Int lp = length_J(s, p), lq = length_J(s, q);
      if (lp != lq) return lp < lq;
      return p < q;
    });
    return out;
  }

  const QMat& xbasis_qmat() const {
    if (xbq_.empty()) {
      const RootDatum& rd = aw_.rd();
      xbq_.assign(static_cast<size_t>(rd.dim), QVec(rd.x_basis.size(), Rat(0)));
      for (int i = 0; i < rd.dim; ++i)
        for (size_t j = 0; j < rd.x_basis.size(); ++j)
          xbq_[static_cast<size_t>(i)][j] = Rat(BigInt(rd.x_basis[j][static_cast<size_t>(i)]));
    }
    return xbq_;
  }

 private:
  const AffineWeyl& aw_;
  TwistAuto delta_;
  ConjOptions opts_;
  mutable std::mt19937_64 rng_;
  AffineWeyl::SnfQuotient kappa_delta_;
  mutable std::vector<Move> moves_;
  mutable std::unordered_map<EltKey, AffineElt, SeqHash> canon_cache_;
  mutable QMat xbq_;

  std::vector<int> gen_order() const {
    std::vector<int> idx;
    for (int cli : ordered_cli()) idx.push_back(aw_.gen_by_cli(cli));
    return idx;
  }
  std::vector<int> ordered_cli() const {
    std::vector<int> clis;
    for (const auto& g : aw_.gens()) clis.push_back(g.cli_index);
    std::sort(clis.begin(), clis.end());
    return clis;
  }
  std::vector<int> move_indices() const {
    std::vector<int> idx(moves().size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    if (opts_.randomized) std::shuffle(idx.begin(), idx.end(), rng_);
    return idx;
  }

  AffineElt canon_rb_cached(const AffineElt& rb) const { return canon_rep(rb); }

  void emit_path(ReductionTrace& tr, const std::unordered_map<EltKey, AffineElt, SeqHash>& by_key,
                 const std::unordered_map<EltKey, std::pair<EltKey, int>, SeqHash>& parent,
                 const EltKey& target) const {
    std::vector<std::pair<EltKey, int>> chain;  // (node, move that produced it)
    EltKey k = target;
    while (true) {
      auto [pk, mi] = parent.at(k);
      if (mi < 0) break;
      chain.push_back({k, mi});
      k = pk;
    }
    for (size_t i = chain.size(); i-- > 0;) {
      const auto& [ck, mi] = chain[i];
      const Move& m = moves()[static_cast<size_t>(mi)];
      const AffineElt& to = by_key.at(ck);
      const AffineElt& from = by_key.at(parent.at(ck).first);
      tr.steps.push_back(ReductionStep{from, m.by, m.gen_cli, to, false});
    }
  }

  void build_kappa() {
    const RootDatum& rd = aw_.rd();
    size_t n = rd.x_basis.size();
    ZMat m(n);
    for (size_t j = 0; j < rd.simple_coroots.size(); ++j) {
      std::vector<BigInt> y = aw_.x_coords(rd.simple_coroots[j]);
      for (size_t i = 0; i < n; ++i) m[i].push_back(y[i]);
    }
    if (!delta_.linear_trivial) {
      for (size_t j = 0; j < n; ++j) {
        Vec img = rd.x_basis[j] - delta_.act_lin(rd, rd.x_basis[j]);
        std::vector<BigInt> y = aw_.x_coords(rd.normalize(img));
        for (size_t i = 0; i < n; ++i) m[i].push_back(y[i]);
      }
    }
    size_t cols = 0;
    for (auto& row : m) cols = std::max(cols, row.size());
    if (cols == 0) cols = 1;
    for (auto& row : m) row.resize(cols, 0);
    kappa_delta_.n = n;
    kappa_delta_.snf = smith_normal_form(m);
  }

  // kappa0 classes hitting the same delta-coinvariant class as lam, with
  // free coordinates bounded by the length budget
  std::vector<Vec> kappa_fiber_reps(const Vec& lam, Int budget) const {
    const RootDatum& rd = aw_.rd();
    std::vector<Vec> reps{lam};
    if (delta_.linear_trivial) return reps;
    std::set<Vec> classes{aw_.kappa0_class(lam)};
    Int box = budget + 2;
    std::vector<Vec> dirs;
    for (const auto& b : rd.x_basis) dirs.push_back(rd.normalize(b - delta_.act_lin(rd, b)));
    std::vector<AffineElt> frontier{aw_.translation(lam)};
    std::set<Vec> seen_lam{rd.normalize(lam)};
    for (size_t head = 0; head < frontier.size(); ++head) {
      Vec cur = frontier[head].lam;
      for (const Vec& d : dirs)
        for (int sgn : {1, -1}) {
          Vec nxt = rd.normalize(cur + sgn * d);
          bool inbox = true;
          for (Int c : nxt)
            if (c > box || c < -box) inbox = false;
          if (!inbox || !seen_lam.insert(nxt).second) continue;
          frontier.push_back(aw_.translation(nxt));
          Vec cls = aw_.kappa0_class(nxt);
          if (classes.insert(cls).second) reps.push_back(nxt);
        }
    }
    return reps;
  }

  bool stabilizes_gens(const SubSys& sub, const AffineElt& x) const {
    std::set<AffineElt> gset;
    for (const auto& g : sub.gens) gset.insert(g.elt);
    AffineElt xi = aw_.inverse(x);
    for (const auto& g : sub.gens) {
      AffineElt img = aw_.compose(aw_.compose(x, twist_apply(aw_, delta_, g.elt)), xi);
      if (!gset.count(img)) return false;
    }
    return true;
  }

  StandardQuadruple finish_quadruple(const SubSys& sub, const std::vector<int>& J, const AffineElt& x,
                                     AffineElt u, const QVec& nu) const {
    // closure of the support under the wall permutation induced by Ad(x) delta
    auto closure = [&](std::vector<int> K0) {
      std::set<int> K(K0.begin(), K0.end());
      AffineElt xi = aw_.inverse(x);
      bool grow = true;
      while (grow) {
        grow = false;
        for (int g : std::vector<int>(K.begin(), K.end())) {
          AffineElt img = aw_.compose(aw_.compose(x, twist_apply(aw_, delta_, sub.gens[static_cast<size_t>(g)].elt)), xi);
          for (size_t h = 0; h < sub.gens.size(); ++h)
            if (sub.gens[h].elt == img && !K.count(static_cast<int>(h))) {
              K.insert(static_cast<int>(h));
              grow = true;
            }
        }
      }
      return std::vector<int>(K.begin(), K.end());
    };
    std::vector<int> K = closure(support_J(sub, u));
    while (true) {
      std::vector<AffineElt> cls = twisted_class_in_K(sub, K, x, u);
      // choose the class element with the smallest stable support closure
      std::vector<int> bestK = K;
      AffineElt bestU = u;
      for (const AffineElt& v : cls) {
        std::vector<int> kv = closure(support_J(sub, v));
        if (kv.size() < bestK.size() || (kv.size() == bestK.size() && (kv < bestK || (kv == bestK && v < bestU)))) {
          bestK = kv;
          bestU = v;
        }
      }
      if (bestK.size() < K.size()) {
        K = bestK;
        u = bestU;
        continue;
      }
      u = bestU;
      break;
    }
    std::vector<AffineElt> C = twisted_class_in_K(sub, K, x, u);
    if (!elliptic_in_K(sub, K, x, C.front())) throw DomainError("reduced class is not elliptic in its wall subgroup");
    for (const AffineElt& v : C)
      if (!(raw_newton(aw_.compose(v, x)) == raw_newton(x))) throw DomainError("newton point not constant on the class");
    StandardQuadruple q;
    q.J = J;
    q.x = x;
    for (int g : K) q.K.push_back(sub.gens[static_cast<size_t>(g)].wall);
    std::sort(q.K.begin(), q.K.end());
    q.C = std::move(C);
    std::sort(q.C.begin(), q.C.end());
    q.nu = nu;
    return q;
  }

  bool elliptic_in_K(const SubSys& sub, const std::vector<int>& K, const AffineElt& x, const AffineElt& u) const {
    if (K.empty()) return true;
    const RootDatum& rd = aw_.rd();
    std::vector<Vec> dirs;
    for (int g : K) dirs.push_back(rd.coroot_of(sub.gens[static_cast<size_t>(g)].refl_root));
    AffineElt ux = aw_.compose(u, x);
    // matrix of the linear part on span(dirs)
    QMat basis(static_cast<size_t>(rd.dim), QVec(dirs.size(), Rat(0)));
    for (int i = 0; i < rd.dim; ++i)
      for (size_t j = 0; j < dirs.size(); ++j) basis[static_cast<size_t>(i)][j] = Rat(BigInt(dirs[j][static_cast<size_t>(i)]));
    QMat m(dirs.size(), QVec(dirs.size(), Rat(0)));
    for (size_t j = 0; j < dirs.size(); ++j) {
      Vec img = lin_apply(ux, dirs[j]);
      auto sol = q_solve(basis, to_q(rd.normalize(img)));
      if (!sol) throw DomainError("wall span not stable under the twisted action");
      for (size_t i = 0; i < dirs.size(); ++i) m[i][j] = (*sol)[i] - (i == j ? Rat(1) : Rat(0));
    }
    return q_kernel(m).empty();
  }

  // length-zero elements of the J-group in a coordinate box (for witnesses)
  std::vector<AffineElt> omega_J_box(const SubSys& sub, Int box) const {
    std::vector<AffineElt> out;
    const RootDatum& rd = aw_.rd();
    std::vector<int> jelems = aw_.w0().subgroup(sub.J);
    size_t n = rd.x_basis.size();
    std::vector<Int> combo(n, -box);
    while (true) {
      Vec lam(static_cast<size_t>(rd.dim), 0);
      for (size_t j = 0; j < n; ++j)
        for (int i = 0; i < rd.dim; ++i) lam[static_cast<size_t>(i)] += combo[j] * rd.x_basis[j][static_cast<size_t>(i)];
      for (int v : jelems) {
        AffineElt t = aw_.make(lam, v);
        if (length_J(sub, t) == 0) out.push_back(t);
      }
      size_t j = 0;
      while (j < n && combo[j] == box) combo[j++] = -box;
      if (j == n) break;
      ++combo[j];
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // exact solutions tau in Omega_J of tau * x1 * delta(tau)^{-1} = x2
  std::vector<AffineElt> solve_omega_J(const SubSys& sub, const AffineElt& x1, const AffineElt& x2) const {
    const RootDatum& rd = aw_.rd();
    std::vector<AffineElt> out;
    size_t n = rd.x_basis.size();
    for (int v : aw_.w0().subgroup(sub.J)) {
      // finite-part match is independent of the translation part of tau
      auto tau_of = [&](const Vec& mu) { return aw_.make(mu, v); };
      auto conj = [&](const AffineElt& tau) {
        return aw_.compose(aw_.compose(tau, x1), aw_.inverse(twist_apply(aw_, delta_, tau)));
      };
      Vec zero(static_cast<size_t>(rd.dim), 0);
      AffineElt c0 = conj(tau_of(zero));
      if (c0.u != x2.u) continue;
      // translation part is affine-linear in mu (x-basis coordinates)
      ZMat M(static_cast<size_t>(rd.dim), std::vector<BigInt>(n, 0));
      for (size_t j = 0; j < n; ++j) {
        AffineElt cj = conj(tau_of(rd.x_basis[j]));
        Vec col = cj.lam - c0.lam;
        for (int i = 0; i < rd.dim; ++i) M[static_cast<size_t>(i)][j] = col[static_cast<size_t>(i)];
      }
      // ell_J(tau) = 0 gives exact pairing constraints per positive J-root
      std::vector<std::pair<Vec, Int>> pair_constraints;  // (row over y, value)
      int vi = aw_.w0().inv(v);
      for (int r : sub.pos_roots) {
        Int target = rd.is_positive_index(aw_.w0().act_root(vi, r)) ? 0 : 1;
        Vec row(n, 0);
        for (size_t j = 0; j < n; ++j) row[j] = dot(rd.roots[static_cast<size_t>(r)], rd.x_basis[j]);
        pair_constraints.push_back({row, target});
      }
      // stack: M y = x2.lam - c0.lam ; pair rows
      size_t rows = static_cast<size_t>(rd.dim) + pair_constraints.size();
      ZMat S(rows, std::vector<BigInt>(n, 0));
      std::vector<BigInt> rhs(rows, 0);
      Vec d = x2.lam - c0.lam;
      for (int i = 0; i < rd.dim; ++i) {
        for (size_t j = 0; j < n; ++j) S[static_cast<size_t>(i)][j] = M[static_cast<size_t>(i)][j];
        rhs[static_cast<size_t>(i)] = d[static_cast<size_t>(i)];
      }
      for (size_t p = 0; p < pair_constraints.size(); ++p) {
        for (size_t j = 0; j < n; ++j) S[static_cast<size_t>(rd.dim) + p][j] = pair_constraints[p].first[j];
        rhs[static_cast<size_t>(rd.dim) + p] = pair_constraints[p].second;
      }
      SmithNF snf = smith_normal_form(S);
      // solve S y = rhs integrally: z = U rhs, need divisibility
      std::vector<BigInt> z(rows, 0);
      for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < rows; ++k) z[i] += snf.U[i][k] * rhs[k];
      bool ok = true;
      std::vector<BigInt> yz(n, 0);
      for (size_t i = 0; i < rows && ok; ++i) {
        if (i < snf.rank) {
          if (z[i] % snf.diag[i] != 0) ok = false;
          else if (i < n) yz[i] = z[i] / snf.diag[i];
        } else if (z[i] != 0) {
          ok = false;
        }
      }
      if (!ok) continue;
      std::vector<BigInt> y(n, 0);
      for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) y[i] += snf.V[i][k] * yz[k];
      // kernel directions of S
      std::vector<std::vector<BigInt>> kern;
      for (size_t k = snf.rank; k < n; ++k) {
        std::vector<BigInt> kv(n, 0);
        for (size_t i = 0; i < n; ++i) kv[i] = snf.V[i][k];
        kern.push_back(std::move(kv));
      }
      // enumerate small kernel combinations
      std::vector<std::vector<BigInt>> ys{y};
      Int kb = 1;
      if (!kern.empty()) {
        std::vector<Int> combo(kern.size(), -kb);
        ys.clear();
        while (true) {
          std::vector<BigInt> yy = y;
          for (size_t t = 0; t < kern.size(); ++t)
            for (size_t i = 0; i < n; ++i) yy[i] += BigInt(combo[t]) * kern[t][i];
          ys.push_back(std::move(yy));
          size_t j = 0;
          while (j < kern.size() && combo[j] == kb) combo[j++] = -kb;
          if (j == kern.size()) break;
          ++combo[j];
        }
      }
      for (const auto& yy : ys) {
        Vec mu(static_cast<size_t>(rd.dim), 0);
        bool fits = true;
        for (size_t j = 0; j < n; ++j) {
          if (yy[j] > 1000000 || yy[j] < -1000000) fits = false;
        }
        if (!fits) continue;
        for (size_t j = 0; j < n; ++j)
          for (int i = 0; i < rd.dim; ++i) mu[static_cast<size_t>(i)] += static_cast<Int>(yy[j]) * rd.x_basis[j][static_cast<size_t>(i)];
        AffineElt tau = tau_of(rd.normalize(mu));
        if (length_J(sub, tau) != 0) continue;
        if (conj(tau) == x2) out.push_back(tau);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

}  // namespace awc
