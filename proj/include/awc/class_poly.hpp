#pragma once
// Class polynomials of Iwahori-Hecke algebras attached to extended affine
// Weyl groups, computed by the length-reduction recursion
//   F_w = (q-1) F_{s w'} + q F_{s w' delta(s)}
// for w' in the equal-length conjugation component of w, memoized so that all
// elements sharing a cocenter image share one decomposition. Also builds the
// step-by-step reduction tree used for dimension bookkeeping.

#include <memory>

#include "awc/conjugacy.hpp"
#include "awc/poly.hpp"

namespace awc {

struct MinimalClassKey {
  ConjInvariant inv;
  Int min_len = 0;
  EltKey canon;  // canonical minimal representative of the class

  friend bool operator==(const MinimalClassKey& a, const MinimalClassKey& b) {
    return a.min_len == b.min_len && a.canon == b.canon && a.inv == b.inv;
  }
  friend bool operator<(const MinimalClassKey& a, const MinimalClassKey& b) {
    if (!(a.inv == b.inv)) return a.inv < b.inv;
    if (a.min_len != b.min_len) return a.min_len < b.min_len;
    return a.canon < b.canon;
  }
};

struct ClassPolyDecomp {
  std::vector<std::pair<MinimalClassKey, PolyZq>> entries;  // sorted by key

  const PolyZq* find(const MinimalClassKey& k) const {
    for (const auto& [key, val] : entries)
      if (key == k) return &val;
    return nullptr;
  }
  // specializing q = 1 must recover the group algebra: total mass 1
  BigInt mass_at_one() const {
    BigInt s = 0;
    for (const auto& [k, v] : entries) s += v.at_one();
    return s;
  }
};

struct ReductionNode {
  AffineElt elt;             // element as first reached
  Int dim = NEG_INFINITY;    // degree of the invariant-graded polynomial
  bool leaf = false;
  AffineElt shifted;         // the conjugate w' used for the split (if not leaf)
  int split_cli = -1;        // generator index of the split
  int child_one = -1;        // index of s w' (coefficient q-1)
  int child_two = -1;        // index of s w' delta(s) (coefficient q)
};

struct ReductionTree {
  std::vector<ReductionNode> nodes;  // node 0 is the root
};

class ClassPolyEngine {
 public:
  using DecompMap = std::map<EltKey, PolyZq>;  // canon key -> polynomial

  explicit ClassPolyEngine(const ConjCtx& ctx, size_t memo_budget = 1000000)
      : ctx_(ctx), budget_(memo_budget) {}

  const ConjCtx& ctx() const { return ctx_; }

  std::shared_ptr<const DecompMap> compute(const AffineElt& w) const {
    auto it = memo_.find(elt_key(w));
    if (it != memo_.end()) return it->second;

    std::vector<AffineElt> component;
    AffineElt shifted = w;
    int split = -1;
    bool minimal = !find_split(w, &component, &shifted, &split);

    std::shared_ptr<const DecompMap> result;
    if (minimal) {
      DecompMap m;
      m[elt_key(ctx_.canon_rep(w))] = PolyZq(1);
      result = std::make_shared<DecompMap>(std::move(m));
    } else {
      const auto& g = ctx_.aw().gens()[static_cast<size_t>(ctx_.aw().gen_by_cli(split))];
      AffineElt sw = ctx_.aw().compose(g.elt, shifted);
      AffineElt sws = ctx_.aw().compose(sw, twist_apply(ctx_.aw(), ctx_.delta(), g.elt));
      auto a = compute(sw);
      auto b = compute(sws);
      DecompMap m;
      PolyZq qm1(std::vector<Int>{-1, 1});
      PolyZq q(std::vector<Int>{0, 1});
      for (const auto& [k, v] : *a) m[k] = m.count(k) ? m[k] + qm1 * v : qm1 * v;
      for (const auto& [k, v] : *b) {
        PolyZq t = q * v;
        auto f = m.find(k);
        if (f == m.end()) m[k] = std::move(t);
        else f->second = f->second + t;
      }
      for (auto it2 = m.begin(); it2 != m.end();) {
        if (it2->second.is_zero()) it2 = m.erase(it2);
        else ++it2;
      }
      result = std::make_shared<DecompMap>(std::move(m));
    }
    for (const AffineElt& x : component) store(elt_key(x), result);
    store(elt_key(w), result);
    return result;
  }

  ClassPolyDecomp decomp(const AffineElt& w) const {
    auto m = compute(w);
    ClassPolyDecomp d;
    for (const auto& [k, v] : *m) {
      Vec lam(k.begin(), k.end() - 1);
      AffineElt rep = ctx_.aw().make(lam, static_cast<int>(k.back()));
      MinimalClassKey key{ctx_.newton_kottwitz(rep), rep.len, k};
      d.entries.push_back({std::move(key), v});
    }
    std::sort(d.entries.begin(), d.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return d;
  }

  PolyZq by_invariant(const AffineElt& w, const ConjInvariant& b) const {
    PolyZq total;
    for (const auto& [k, v] : decomp(w).entries)
      if (k.inv == b) total = total + PolyZq::q_power(k.min_len) * v;
    return total;
  }

  // stepwise reduction tree: a node is expanded while its double coset meets
  // both the target class [b] and its complement; once the decomposition is
  // supported purely on [b] (dim = length) or purely off it (dim = -inf) the
  // node is a leaf. Splits go through the first conjugate found by the
  // breadth-first sweep, preferring finite simple reflections over affine
  // ones, then the smaller index.
  ReductionTree reduction_tree(const AffineElt& w, const ConjInvariant& b) const {
    ReductionTree tree;
    build_tree_node(tree, w, b);
    return tree;
  }

  size_t memo_size() const { return memo_.size(); }

 private:
  const ConjCtx& ctx_;
  size_t budget_;
  mutable std::unordered_map<EltKey, std::shared_ptr<const DecompMap>, SeqHash> memo_;

  void store(const EltKey& k, const std::shared_ptr<const DecompMap>& v) const {
    if (memo_.size() >= budget_) throw ResourceError("class polynomial memo budget exceeded");
    memo_.emplace(k, v);
  }

  // sweep the equal-length component; report the first descent split found.
  // Returns false when the component carries no descent (minimal level).
  bool find_split(const AffineElt& w, std::vector<AffineElt>* component, AffineElt* shifted,
                  int* split_cli) const {
    std::set<EltKey> seen{elt_key(w)};
    std::vector<AffineElt> order{w};
    struct Hit {
      AffineElt at;
      int cli;
      bool affine_wall;
    };
    std::optional<Hit> best;
    for (size_t head = 0; head < order.size(); ++head) {
      AffineElt x = order[head];
      for (const auto& mv : ctx_.moves()) {
        AffineElt y = ctx_.apply_move(mv, x);
        if (mv.gen_cli >= 0 && y.len == x.len - 2) {
          bool aff = is_affine_wall(mv.gen_cli);
          bool better = !best || (best->affine_wall && !aff) ||
                        (best->affine_wall == aff && mv.gen_cli < best->cli);
          if (better) best = Hit{x, mv.gen_cli, aff};
        } else if (y.len == x.len) {
          EltKey ky = elt_key(y);
          if (seen.insert(ky).second) {
            if (seen.size() > budget_) throw ResourceError("equal-length component budget exceeded");
            order.push_back(std::move(y));
          }
        }
      }
      if (best) break;  // earliest element of the sweep that admits a split wins
    }
    *component = std::move(order);
    if (!best) return false;
    *shifted = best->at;
    *split_cli = best->cli;
    return true;
  }

  bool is_affine_wall(int cli) const {
    const auto& g = ctx_.aw().gens()[static_cast<size_t>(ctx_.aw().gen_by_cli(cli))];
    return g.wall.k != 0;
  }

  int build_tree_node(ReductionTree& tree, const AffineElt& w, const ConjInvariant& b) const {
    int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(ReductionNode{});
    tree.nodes[static_cast<size_t>(id)].elt = w;
    tree.nodes[static_cast<size_t>(id)].dim = by_invariant(w, b).degree();
    bool meets = false, escapes = false;
    for (const auto& [k, v] : decomp(w).entries) (k.inv == b ? meets : escapes) = true;
    std::vector<AffineElt> component;
    AffineElt shifted = w;
    int split = -1;
    if (!(meets && escapes) || !find_split(w, &component, &shifted, &split)) {
      tree.nodes[static_cast<size_t>(id)].leaf = true;
      return id;
    }
    const auto& g = ctx_.aw().gens()[static_cast<size_t>(ctx_.aw().gen_by_cli(split))];
    AffineElt sw = ctx_.aw().compose(g.elt, shifted);
    AffineElt sws = ctx_.aw().compose(sw, twist_apply(ctx_.aw(), ctx_.delta(), g.elt));
    tree.nodes[static_cast<size_t>(id)].shifted = shifted;
    tree.nodes[static_cast<size_t>(id)].split_cli = split;
    int c1 = build_tree_node(tree, sw, b);
    int c2 = build_tree_node(tree, sws, b);
    tree.nodes[static_cast<size_t>(id)].child_one = c1;
    tree.nodes[static_cast<size_t>(id)].child_two = c2;
    return id;
  }
};

}  // namespace awc
