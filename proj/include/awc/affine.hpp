#pragma once
// Extended affine Weyl group W~ = X x| W0 acting on V by t^lam: v -> v - lam,
// finite part acting linearly. Base alcove is the antidominant one
// {x : -1 < <alpha, x> < 0 for all positive alpha}; affine simple reflections
// are the wall reflections s_alpha (finite walls) and t^{theta_vee} s_theta
// per component. Lengths by the translation formula, words by descent
// stripping, Bruhat by the descent recursion.

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "awc/common.hpp"
#include "awc/root_datum.hpp"
#include "awc/weyl.hpp"

namespace awc {

struct AffineElt {
  Vec lam;      // translation part, in lattice normal form
  int u = 0;    // finite part, index into the W0 table
  Int len = 0;  // cached length, filled by the group operations

  friend bool operator==(const AffineElt& a, const AffineElt& b) { return a.lam == b.lam && a.u == b.u; }
  friend bool operator!=(const AffineElt& a, const AffineElt& b) { return !(a == b); }
  friend bool operator<(const AffineElt& a, const AffineElt& b) {
    if (a.lam != b.lam) return a.lam < b.lam;
    return a.u < b.u;
  }
};

using EltKey = std::vector<Int>;

inline EltKey elt_key(const AffineElt& w) {
  EltKey k = w.lam;
  k.push_back(w.u);
  return k;
}

// affine root (alpha, k), the function <alpha, .> + k; positive iff it is
// positive on the base alcove: alpha > 0 needs k >= 1, alpha < 0 needs k >= 0
struct AffRoot {
  int root;  // index into rd.roots
  Int k;
  friend bool operator==(const AffRoot& a, const AffRoot& b) { return a.root == b.root && a.k == b.k; }
  friend bool operator<(const AffRoot& a, const AffRoot& b) {
    if (a.root != b.root) return a.root < b.root;
    return a.k < b.k;
  }
};

struct AffGen {
  AffRoot wall;    // the simple affine root: (-alpha_i, 0) or (theta_c, 1)
  int refl_root;   // positive root index of the reflection direction
  Int refl_k;      // reflection = t^{k * coroot} s_root
  int cli_index;   // s0 = affine gen of component 0, s1..sr finite, then r+c
  AffineElt elt;
};

class AffineWeyl {
 public:
  explicit AffineWeyl(const RootDatum& rd) : rd_(rd), w0_(rd) { build(); }

  const RootDatum& rd() const { return rd_; }
  const W0Table& w0() const { return w0_; }
  const std::vector<AffGen>& gens() const { return gens_; }
  int gen_count() const { return static_cast<int>(gens_.size()); }
  int gen_by_cli(int cli) const {
    auto it = cli_to_gen_.find(cli);
    if (it == cli_to_gen_.end()) throw ParseError("no affine simple reflection with index " + std::to_string(cli));
    return it->second;
  }

  AffineElt identity() const { return make(Vec(static_cast<size_t>(rd_.dim), 0), 0); }

  AffineElt make(Vec lam, int u) const {
    AffineElt w;
    w.lam = rd_.normalize(std::move(lam));
    w.u = u;
    w.len = length_of(w.lam, w.u);
    return w;
  }
  AffineElt translation(const Vec& lam) const { return make(lam, 0); }
  AffineElt from_finite(int u) const { return make(Vec(static_cast<size_t>(rd_.dim), 0), u); }

  Int length(const AffineElt& w) const { return w.len; }

  AffineElt compose(const AffineElt& a, const AffineElt& b) const {
    return make(a.lam + w0_.act(a.u, b.lam), w0_.mult(a.u, b.u));
  }
  AffineElt inverse(const AffineElt& a) const {
    int ui = w0_.inv(a.u);
    return make(-w0_.act(ui, a.lam), ui);
  }
  AffineElt gen_elt(int g) const { return gens_[static_cast<size_t>(g)].elt; }

  // action on affine roots: (t^lam u)(alpha, k) = (u(alpha), k + <u(alpha), lam>)
  AffRoot act_aff_root(const AffineElt& w, const AffRoot& a) const {
    int img = w0_.act_root(w.u, a.root);
    return AffRoot{img, a.k + dot(rd_.roots[static_cast<size_t>(img)], w.lam)};
  }
  bool aff_root_positive(const AffRoot& a) const {
    return rd_.is_positive_index(a.root) ? a.k >= 1 : a.k >= 0;
  }

  bool left_descent(int g, const AffineElt& w) const {
    // ell(s w) < ell(w) iff w^{-1}(wall_s) is negative
    const AffRoot& a = gens_[static_cast<size_t>(g)].wall;
    int ui = w0_.inv(w.u);
    int img = w0_.act_root(ui, a.root);
    AffRoot b{img, a.k - dot(rd_.roots[static_cast<size_t>(a.root)], w.lam)};
    return !aff_root_positive(b);
  }
  bool right_descent(const AffineElt& w, int g) const {
    const AffRoot& a = gens_[static_cast<size_t>(g)].wall;
    return !aff_root_positive(act_aff_root(w, a));
  }

  // peel smallest-cli-index left descents; returns word (cli indices, in
  // application order w = s_{i1} ... s_{ik} * omega) and the length-zero rest
  std::pair<std::vector<int>, AffineElt> reduced_word(const AffineElt& w) const {
    std::vector<int> word;
    AffineElt x = w;
    while (x.len > 0) {
      bool found = false;
      for (int g : gens_cli_order_) {
        if (left_descent(g, x)) {
          word.push_back(gens_[static_cast<size_t>(g)].cli_index);
          x = compose(gens_[static_cast<size_t>(g)].elt, x);
          found = true;
          break;
        }
      }
      if (!found) throw DomainError("positive-length element with no descent");
    }
    return {word, x};
  }

  AffineElt from_word(const std::vector<int>& cli_word, const AffineElt& omega) const {
    AffineElt w = omega;
    for (size_t i = cli_word.size(); i-- > 0;)
      w = compose(gens_[static_cast<size_t>(gen_by_cli(cli_word[i]))].elt, w);
    return w;
  }
  AffineElt from_word(const std::vector<int>& cli_word) const { return from_word(cli_word, identity()); }

  bool same_omega_coset(const AffineElt& x, const AffineElt& y) const {
    return in_coroot_lattice(x.lam - y.lam);
  }

  // Bruhat order; elements in different W_a-cosets are incomparable
  bool bruhat_leq(AffineElt x, AffineElt y) const {
    if (!same_omega_coset(x, y)) return false;
    while (true) {
      if (x == y) return true;
      if (x.len >= y.len) return false;
      int g = -1;
      for (int gg : gens_cli_order_)
        if (left_descent(gg, y)) {
          g = gg;
          break;
        }
      const AffineElt& s = gens_[static_cast<size_t>(g)].elt;
      y = compose(s, y);
      if (left_descent(g, x)) x = compose(s, x);
    }
  }

  // ---- alcove geometry ----
  QVec act_point(const AffineElt& w, const QVec& p) const {
    QVec q = w0_.act_q(w.u, p);
    for (int i = 0; i < rd_.dim; ++i) q[static_cast<size_t>(i)] -= Rat(BigInt(w.lam[static_cast<size_t>(i)]));
    return rd_.normalize_q(std::move(q));
  }
  QVec alcove_sample(const AffineElt& w) const { return act_point(w, rd_.alcove_point); }
  Int alcove_floor(const AffineElt& w, int posroot) const {
    return rat_floor_i(dot(rd_.roots[static_cast<size_t>(posroot)], alcove_sample(w)));
  }

  // ---- omega (length-zero) machinery ----
  bool in_coroot_lattice(const Vec& lam) const {
    Vec l = rd_.normalize(lam);
    std::vector<BigInt> y = x_coords(l);
    return snf_member(kappa0_, y);
  }
  // canonical class of lam in X / coroot-lattice
  Vec kappa0_class(const Vec& lam) const { return snf_class(kappa0_, x_coords(rd_.normalize(lam))); }

  std::optional<AffineElt> length_zero_for(const Vec& lam_class_rep) const {
    // search lam in the coset with small coordinates, u over W0
    Int bound = 1;
    for (Int c : lam_class_rep) bound = std::max(bound, c < 0 ? -c : c);
    bound += 2;
    std::vector<Vec> q_basis;
    for (const auto& cv : rd_.simple_coroots) q_basis.push_back(cv);
    // iterate over integer combinations of coroot basis with bounded result coords
    std::optional<AffineElt> best;
    Int B = bound + 2;
    std::function<void(size_t, Vec)> rec = [&](size_t i, Vec acc) {
      if (i == q_basis.size()) {
        Vec lam = rd_.normalize(acc);
        for (Int c : lam)
          if (c > bound || c < -bound) return;
        for (int u = 0; u < w0_.size(); ++u) {
          if (length_of(lam, u) == 0) {
            AffineElt t = make(lam, u);
            if (!best || t < *best) best = t;
          }
        }
        return;
      }
      for (Int c = -B; c <= B; ++c) {
        Vec nxt = acc;
        for (int k = 0; k < rd_.dim; ++k) nxt[static_cast<size_t>(k)] += c * q_basis[i][static_cast<size_t>(k)];
        rec(i + 1, std::move(nxt));
      }
    };
    rec(0, rd_.normalize(lam_class_rep));
    return best;
  }

  // representatives of Omega modulo central translations; Ad-conjugation by
  // these (plus the simple reflections) generates all elementary class moves
  const std::vector<AffineElt>& omega_conjugators() const { return omega_conj_; }

  // the length-zero element of the kappa0 class of lam_rep (cached)
  AffineElt omega_rep(const Vec& lam_rep) const {
    Vec cls = kappa0_class(lam_rep);
    auto it = omega_rep_cache_.find(cls);
    if (it != omega_rep_cache_.end()) return it->second;
    auto t = length_zero_for(lam_rep);
    if (!t) throw DomainError("no length-zero element found for the requested class");
    omega_rep_cache_.emplace(cls, *t);
    return *t;
  }

  // ---- enumeration ----
  // All elements of length <= L whose kappa0 class matches one of the reps
  // (default: the zero class only). Sorted by (length, translation, finite).
  std::vector<AffineElt> enumerate_by_length(Int L, const std::vector<Vec>* kappa_reps = nullptr,
                                             size_t cap = 4000000) const {
    std::vector<AffineElt> wa;  // W_a elements, ell <= L
    std::unordered_map<EltKey, char, SeqHash> seen;
    AffineElt e = identity();
    wa.push_back(e);
    seen[elt_key(e)] = 1;
    size_t head = 0;
    while (head < wa.size()) {
      AffineElt cur = wa[head++];
      if (cur.len >= L) continue;
      for (const auto& g : gens_) {
        AffineElt nxt = compose(cur, g.elt);
        if (nxt.len != cur.len + 1) continue;
        EltKey k = elt_key(nxt);
        if (seen.count(k)) continue;
        if (wa.size() >= cap) throw ResourceError("enumerate_by_length cap exceeded");
        seen[k] = 1;
        wa.push_back(std::move(nxt));
      }
    }
    std::vector<AffineElt> out;
    std::vector<Vec> reps;
    if (kappa_reps) reps = *kappa_reps;
    else reps.push_back(Vec(static_cast<size_t>(rd_.dim), 0));
    std::set<Vec> classes_done;
    for (const Vec& rep : reps) {
      Vec cls = kappa0_class(rep);
      if (!classes_done.insert(cls).second) continue;
      AffineElt tau = omega_rep(rep);
      for (const auto& v : wa) {
        AffineElt w = compose(tau, v);
        if (w.len <= L) out.push_back(std::move(w));
      }
    }
    std::sort(out.begin(), out.end(), [](const AffineElt& a, const AffineElt& b) {
      if (a.len != b.len) return a.len < b.len;
      return a < b;
    });
    return out;
  }

  // minimal-length coset decomposition w = u * x with u in W_K, x in KW~
  std::pair<AffineElt, AffineElt> coset_decompose(const AffineElt& w, const std::vector<int>& K) const {
    if (!finite_parahoric(K)) throw DomainError("coset_decompose needs a finite parahoric");
    AffineElt u = identity();
    AffineElt x = w;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int g : K) {
        if (left_descent(g, x)) {
          x = compose(gens_[static_cast<size_t>(g)].elt, x);
          u = compose(u, gens_[static_cast<size_t>(g)].elt);
          moved = true;
          break;
        }
      }
    }
    return {u, x};
  }
  bool is_min_coset_rep(const AffineElt& w, const std::vector<int>& K) const {
    for (int g : K)
      if (left_descent(g, w)) return false;
    return true;
  }

  // W_K is finite iff the walls of K have a common point
  bool finite_parahoric(const std::vector<int>& K) const {
    QMat m;
    QVec rhs;
    for (int g : K) {
      const AffRoot& a = gens_[static_cast<size_t>(g)].wall;
      QVec row;
      for (int i = 0; i < rd_.dim; ++i)
        row.push_back(Rat(BigInt(rd_.roots[static_cast<size_t>(a.root)][static_cast<size_t>(i)])));
      m.push_back(std::move(row));
      rhs.push_back(Rat(BigInt(-a.k)));
    }
    return K.empty() || q_solve(m, rhs).has_value();
  }

  // enumerate the (finite) subgroup W_K
  std::vector<AffineElt> parahoric_subgroup(const std::vector<int>& K, size_t cap = 100000) const {
    if (!finite_parahoric(K)) throw DomainError("parahoric subgroup is infinite");
    std::vector<AffineElt> elems{identity()};
    std::set<AffineElt> seen{identity()};
    for (size_t head = 0; head < elems.size(); ++head) {
      for (int g : K) {
        AffineElt v = compose(elems[head], gens_[static_cast<size_t>(g)].elt);
        if (seen.insert(v).second) {
          if (elems.size() >= cap) throw ResourceError("parahoric subgroup cap exceeded");
          elems.push_back(std::move(v));
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
  }
  AffineElt longest_in_parahoric(const std::vector<int>& K) const {
    AffineElt best = identity();
    for (const auto& v : parahoric_subgroup(K))
      if (v.len > best.len) best = v;
    return best;
  }

  Int pair_two_rho(const QVec& v) const { return require_int(dot(rd_.two_rho, v)); }

  // length by the translation-times-finite formula
  Int length_of(const Vec& lam, int u) const {
    Int l = 0;
    int ui = w0_.inv(u);
    for (int r = 0; r < rd_.n_pos; ++r) {
      Int p = dot(rd_.roots[static_cast<size_t>(r)], lam);
      bool inv_pos = rd_.is_positive_index(w0_.act_root(ui, r));
      l += inv_pos ? (p < 0 ? -p : p) : (p - 1 < 0 ? 1 - p : p - 1);
    }
    return l;
  }

  std::vector<BigInt> x_coords(const Vec& lam) const {
    QVec rhs = to_q(lam);
    auto sol = q_solve(xbasis_mat_, rhs);
    if (!sol) throw DomainError("coweight not in the lattice span");
    std::vector<BigInt> y;
    for (const Rat& r : *sol) {
      if (r.denominator() != 1) throw DomainError("coweight not in the lattice");
      y.push_back(r.numerator());
    }
    return y;
  }

  static Int require_int(const Rat& r) {
    if (r.denominator() != 1) throw DomainError("expected integer, got " + rat_str(r));
    return static_cast<Int>(r.numerator());
  }

  struct SnfQuotient {
    SmithNF snf;
    size_t n = 0;
  };
  // canonical class coordinates in X / colspan(M)
  static Vec snf_class(const SnfQuotient& q, const std::vector<BigInt>& y) {
    std::vector<BigInt> z(q.n, 0);
    for (size_t i = 0; i < q.n; ++i)
      for (size_t j = 0; j < q.n; ++j) z[i] += q.snf.U[i][j] * y[j];
    Vec out;
    for (size_t i = 0; i < q.n; ++i) {
      if (i < q.snf.diag.size() && q.snf.diag[i] != 0) {
        BigInt d = q.snf.diag[i];
        if (d == 1) continue;
        BigInt m = ((z[i] % d) + d) % d;
        out.push_back(static_cast<Int>(m));
      } else {
        out.push_back(static_cast<Int>(z[i]));
      }
    }
    return out;
  }
  static bool snf_member(const SnfQuotient& q, const std::vector<BigInt>& y) {
    Vec c = snf_class(q, y);
    return std::all_of(c.begin(), c.end(), [](Int v) { return v == 0; });
  }

  const SnfQuotient& kappa0_quotient() const { return kappa0_; }

  // class of a translation in Omega modulo central translations
  Vec omega_class(const Vec& lam) const { return snf_class(omega_cls_, x_coords(rd_.normalize(lam))); }

 private:
  const RootDatum& rd_;
  W0Table w0_;
  std::vector<AffGen> gens_;
  std::vector<int> gens_cli_order_;  // gen positions sorted by cli index
  std::map<int, int> cli_to_gen_;
  SnfQuotient kappa0_;     // X / Q_vee
  SnfQuotient omega_cls_;  // X / (Q_vee + central sublattice)
  QMat xbasis_mat_;
  std::vector<AffineElt> omega_conj_;
  mutable std::map<Vec, AffineElt> omega_rep_cache_;

  void build() {
    int r = static_cast<int>(rd_.simple_roots.size());
    // finite gens: cli 1..r
    for (int i = 0; i < r; ++i) {
      AffGen g;
      int ri = rd_.root_index(rd_.simple_roots[static_cast<size_t>(i)]);
      g.wall = AffRoot{rd_.negate_index(ri), 0};
      g.refl_root = ri;
      g.refl_k = 0;
      g.cli_index = i + 1;
      g.elt = make(Vec(static_cast<size_t>(rd_.dim), 0), w0_.simple(i));
      gens_.push_back(std::move(g));
    }
    // affine gens: cli 0 for component 0, r + c for component c >= 1
    for (size_t c = 0; c < rd_.components.size(); ++c) {
      AffGen g;
      int th = rd_.components[c].theta_index;
      g.wall = AffRoot{th, 1};
      g.refl_root = th;
      g.refl_k = 1;
      g.cli_index = c == 0 ? 0 : r + static_cast<int>(c);
      int s_theta = w0_.reflection(th);
      g.elt = make(rd_.coroot_of(th), s_theta);
      gens_.push_back(std::move(g));
    }
    for (size_t g = 0; g < gens_.size(); ++g) cli_to_gen_[gens_[g].cli_index] = static_cast<int>(g);
    for (const auto& [cli, g] : cli_to_gen_) gens_cli_order_.push_back(g);

    // sanity: every generator is an involution of length <= 1 + theta data
    for (const auto& g : gens_)
      if (g.elt.len != 1) throw DomainError("affine simple reflection of length != 1");

    xbasis_mat_.assign(static_cast<size_t>(rd_.dim), QVec(rd_.x_basis.size(), Rat(0)));
    for (int i = 0; i < rd_.dim; ++i)
      for (size_t j = 0; j < rd_.x_basis.size(); ++j)
        xbasis_mat_[static_cast<size_t>(i)][j] = Rat(BigInt(rd_.x_basis[j][static_cast<size_t>(i)]));

    // X / Q_vee via Smith normal form on coroot coordinates
    kappa0_.n = rd_.x_basis.size();
    ZMat m(kappa0_.n, std::vector<BigInt>(rd_.simple_coroots.size(), 0));
    for (size_t j = 0; j < rd_.simple_coroots.size(); ++j) {
      std::vector<BigInt> y = x_coords(rd_.simple_coroots[j]);
      for (size_t i = 0; i < kappa0_.n; ++i) m[i][j] = y[i];
    }
    if (rd_.simple_coroots.empty()) m.assign(kappa0_.n, std::vector<BigInt>());
    kappa0_.snf = smith_normal_form(pad_square(m, kappa0_.n));
    build_omega_conjugators();
  }

  static ZMat pad_square(const ZMat& m, size_t n) {
    // keep row count n; SNF needs at least shape consistency
    ZMat out(n);
    size_t cols = 0;
    for (const auto& row : m) cols = std::max(cols, row.size());
    if (cols == 0) cols = 1;
    for (size_t i = 0; i < n; ++i) {
      out[i].assign(cols, 0);
      if (i < m.size())
        for (size_t j = 0; j < m[i].size(); ++j) out[i][j] = m[i][j];
    }
    return out;
  }

  void build_omega_conjugators() {
    // Omega modulo central translations == X / (Q_vee + X_central) is finite;
    // collect one length-zero element per class by box search.
    ZMat m;
    size_t n = rd_.x_basis.size();
    m.assign(n, {});
    for (size_t j = 0; j < rd_.simple_coroots.size(); ++j) {
      std::vector<BigInt> y = x_coords(rd_.simple_coroots[j]);
      for (size_t i = 0; i < n; ++i) m[i].push_back(y[i]);
    }
    // central sublattice of X: x_basis combinations with all pairings zero:
    // integral kernel of the pairing matrix, via SNF
    {
      ZMat pair_rows;
      for (const auto& a : rd_.simple_roots) {
        std::vector<BigInt> row;
        for (const auto& bx : rd_.x_basis) row.push_back(BigInt(dot(a, bx)));
        pair_rows.push_back(std::move(row));
      }
      if (!pair_rows.empty()) {
        SmithNF s = smith_normal_form(pair_rows);
        // columns of V beyond the rank give the integral kernel in x-coords
        for (size_t j = s.rank; j < n; ++j) {
          for (size_t i = 0; i < n; ++i) m[i].push_back(s.V[i][j]);
        }
      } else {
        for (size_t j = 0; j < n; ++j) {
          for (size_t i = 0; i < n; ++i) m[i].push_back(i == j ? 1 : 0);
        }
      }
    }
    SnfQuotient q;
    q.n = n;
    q.snf = smith_normal_form(pad_square(m, n));
    BigInt order = 1;
    for (size_t i = 0; i < q.snf.diag.size(); ++i)
      if (q.snf.diag[i] != 0) order *= q.snf.diag[i];
    for (size_t i = q.snf.rank; i < n; ++i) order = 0;  // free part would be infinite
    if (order == 0) throw DomainError("omega modulo central translations is not finite");
    omega_cls_ = q;

    std::set<Vec> classes;
    std::vector<AffineElt> reps;
    for (Int box = 0; static_cast<BigInt>(classes.size()) < order && box <= 6; ++box) {
      std::vector<Int> combo(n, -box);
      while (true) {
        Vec lam(static_cast<size_t>(rd_.dim), 0);
        for (size_t j = 0; j < n; ++j)
          for (int i = 0; i < rd_.dim; ++i) lam[static_cast<size_t>(i)] += combo[j] * rd_.x_basis[j][static_cast<size_t>(i)];
        lam = rd_.normalize(std::move(lam));
        Vec cls = snf_class(q, x_coords(lam));
        if (!classes.count(cls)) {
          auto tau = length_zero_for(lam);
          if (tau) {
            classes.insert(cls);
            reps.push_back(*tau);
          }
        }
        size_t j = 0;
        while (j < n && combo[j] == box) combo[j++] = -box;
        if (j == n) break;
        ++combo[j];
      }
    }
    if (static_cast<BigInt>(classes.size()) != order) throw DomainError("failed to enumerate omega conjugators");
    std::sort(reps.begin(), reps.end());
    omega_conj_ = std::move(reps);
  }
};

}  // namespace awc
