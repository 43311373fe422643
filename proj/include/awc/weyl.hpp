#pragma once
// Finite Weyl group tables: elements enumerated once per root datum, with
// root permutations, coweight matrices, reduced words, Bruhat order and
// parabolic subgroup helpers.

#include <map>
#include <vector>

#include "awc/common.hpp"
#include "awc/root_datum.hpp"

namespace awc {

class W0Table {
 public:
  explicit W0Table(const RootDatum& rd) : rd_(&rd) { build(); }

  const RootDatum& rd() const { return *rd_; }
  int size() const { return static_cast<int>(rootperm_.size()); }
  int rank() const { return static_cast<int>(rd_->simple_roots.size()); }
  int length(int u) const { return length_[static_cast<size_t>(u)]; }
  const std::vector<int>& word(int u) const { return words_[static_cast<size_t>(u)]; }

  int simple(int i) const { return simple_elt_[static_cast<size_t>(i)]; }

  int act_root(int u, int r) const { return rootperm_[static_cast<size_t>(u)][static_cast<size_t>(r)]; }

  Vec act(int u, const Vec& v) const {
    const Vec& m = mats_[static_cast<size_t>(u)];
    int d = rd_->dim;
    Vec out(static_cast<size_t>(d), 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[static_cast<size_t>(i)] += m[static_cast<size_t>(i * d + j)] * v[static_cast<size_t>(j)];
    return rd_->normalize(std::move(out));
  }
  QVec act_q(int u, const QVec& v) const {
    const Vec& m = mats_[static_cast<size_t>(u)];
    int d = rd_->dim;
    QVec out(static_cast<size_t>(d), Rat(0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[static_cast<size_t>(i)] += Rat(BigInt(m[static_cast<size_t>(i * d + j)])) * v[static_cast<size_t>(j)];
    return rd_->normalize_q(std::move(out));
  }
  const Vec& matrix(int u) const { return mats_[static_cast<size_t>(u)]; }

  int mult(int u, int v) const {
    std::vector<int16_t> p(rootperm_[static_cast<size_t>(u)].size());
    const auto& pu = rootperm_[static_cast<size_t>(u)];
    const auto& pv = rootperm_[static_cast<size_t>(v)];
    for (size_t j = 0; j < p.size(); ++j) p[j] = pu[static_cast<size_t>(pv[j])];
    auto it = index_.find(p);
    if (it == index_.end()) throw DomainError("weyl mult lookup failed");
    return it->second;
  }
  int inv(int u) const { return inv_[static_cast<size_t>(u)]; }
  int rmul(int u, int i) const { return rmul_[static_cast<size_t>(u)][static_cast<size_t>(i)]; }
  int lmul(int i, int u) const { return mult(simple(i), u); }

  // descent tests: u(alpha_i) negative <=> ell(u s_i) < ell(u) is the
  // right version on the functional action side; we track both explicitly.
  bool right_descent(int u, int i) const {
    // ell(u s_i) < ell(u) iff u(alpha_i) < 0
    int img = act_root(u, simple_root_index_[static_cast<size_t>(i)]);
    return !rd_->is_positive_index(img);
  }
  bool left_descent(int u, int i) const { return right_descent(inv(u), i); }

  int longest() const { return longest_; }

  int from_word(const std::vector<int>& w) const {
    int u = 0;
    for (int i : w) u = rmul(u, i);
    return u;
  }

  std::vector<int> subgroup(const std::vector<int>& J) const {
    std::vector<int> elems{0};
    std::vector<char> seen(static_cast<size_t>(size()), 0);
    seen[0] = 1;
    for (size_t head = 0; head < elems.size(); ++head) {
      for (int i : J) {
        int v = rmul(elems[head], i);
        if (!seen[static_cast<size_t>(v)]) {
          seen[static_cast<size_t>(v)] = 1;
          elems.push_back(v);
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
  }
  int longest_in(const std::vector<int>& J) const {
    int best = 0;
    for (int u : subgroup(J))
      if (length(u) > length(best)) best = u;
    return best;
  }

  bool bruhat_leq(int u, int v) const {
    if (u == v) return true;
    if (length(u) >= length(v)) return false;
    // take the first left descent s of v; recurse on sv
    for (int i = 0; i < rank(); ++i) {
      if (!left_descent(v, i)) continue;
      int sv = lmul(i, v);
      if (left_descent(u, i)) return bruhat_leq(lmul(i, u), sv);
      return bruhat_leq(u, sv);
    }
    return false;  // v = identity handled by the length test above
  }

  int simple_root_index(int i) const { return simple_root_index_[static_cast<size_t>(i)]; }

  // reflection through positive root #r as a group element
  int reflection(int r) const { return refl_[static_cast<size_t>(r)]; }

  const std::vector<int16_t>& perm(int u) const { return rootperm_[static_cast<size_t>(u)]; }
  int index_of_perm(const std::vector<int16_t>& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw DomainError("root permutation is not a Weyl element");
    return it->second;
  }

 private:
  const RootDatum* rd_;
  std::vector<std::vector<int16_t>> rootperm_;
  std::vector<Vec> mats_;
  std::vector<int> length_;
  std::vector<std::vector<int>> words_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> rmul_;
  std::vector<int> simple_elt_;
  std::vector<int> simple_root_index_;
  std::vector<int> refl_;
  std::map<std::vector<int16_t>, int> index_;
  int longest_ = 0;

  std::vector<int16_t> perm_of_reflection(const Vec& root, const Vec& coroot) const {
    size_t nr = rd_->roots.size();
    std::vector<int16_t> p(nr);
    for (size_t j = 0; j < nr; ++j) {
      Vec img = rd_->roots[j] - dot(rd_->roots[j], coroot) * root;
      int idx = rd_->root_index(img);
      if (idx < 0) throw DomainError("reflection does not permute the roots");
      p[j] = static_cast<int16_t>(idx);
    }
    return p;
  }

  void build() {
    int r = rank(), d = rd_->dim;
    size_t nr = rd_->roots.size();
    simple_root_index_.resize(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) simple_root_index_[static_cast<size_t>(i)] = rd_->root_index(rd_->simple_roots[static_cast<size_t>(i)]);

    std::vector<std::vector<int16_t>> gen_perm(static_cast<size_t>(r));
    std::vector<Vec> gen_mat(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) {
      gen_perm[static_cast<size_t>(i)] = perm_of_reflection(rd_->simple_roots[static_cast<size_t>(i)], rd_->simple_coroots[static_cast<size_t>(i)]);
      Vec m(static_cast<size_t>(d * d), 0);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          m[static_cast<size_t>(a * d + b)] = (a == b ? 1 : 0) - rd_->simple_coroots[static_cast<size_t>(i)][static_cast<size_t>(a)] * rd_->simple_roots[static_cast<size_t>(i)][static_cast<size_t>(b)];
      gen_mat[static_cast<size_t>(i)] = std::move(m);
    }

    std::vector<int16_t> idperm(nr);
    for (size_t j = 0; j < nr; ++j) idperm[j] = static_cast<int16_t>(j);
    Vec idmat(static_cast<size_t>(d * d), 0);
    for (int a = 0; a < d; ++a) idmat[static_cast<size_t>(a * d + a)] = 1;

    rootperm_.push_back(idperm);
    mats_.push_back(idmat);
    length_.push_back(0);
    words_.push_back({});
    index_[idperm] = 0;

    for (size_t head = 0; head < rootperm_.size(); ++head) {
      if (rootperm_.size() > 2000000) throw ResourceError("finite Weyl group too large");
      for (int i = 0; i < r; ++i) {
        std::vector<int16_t> p(nr);
        const auto& pu = rootperm_[head];
        const auto& ps = gen_perm[static_cast<size_t>(i)];
        for (size_t j = 0; j < nr; ++j) p[j] = pu[static_cast<size_t>(ps[j])];
        if (index_.count(p)) continue;
        Vec m(static_cast<size_t>(d * d), 0);
        const Vec& mu = mats_[head];
        const Vec& ms = gen_mat[static_cast<size_t>(i)];
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            Int s = 0;
            for (int k = 0; k < d; ++k) s += mu[static_cast<size_t>(a * d + k)] * ms[static_cast<size_t>(k * d + b)];
            m[static_cast<size_t>(a * d + b)] = s;
          }
        index_[p] = static_cast<int>(rootperm_.size());
        rootperm_.push_back(std::move(p));
        mats_.push_back(std::move(m));
        length_.push_back(length_[head] + 1);
        std::vector<int> w = words_[head];
        w.push_back(i);
        words_.push_back(std::move(w));
      }
    }

    int n = size();
    simple_elt_.assign(static_cast<size_t>(r), 0);
    for (int i = 0; i < r; ++i) {
      auto it = index_.find(gen_perm[static_cast<size_t>(i)]);
      simple_elt_[static_cast<size_t>(i)] = it->second;
    }
    rmul_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(r)));
    for (int u = 0; u < n; ++u)
      for (int i = 0; i < r; ++i) {
        std::vector<int16_t> p(nr);
        const auto& pu = rootperm_[static_cast<size_t>(u)];
        const auto& ps = gen_perm[static_cast<size_t>(i)];
        for (size_t j = 0; j < nr; ++j) p[j] = pu[static_cast<size_t>(ps[j])];
        rmul_[static_cast<size_t>(u)][static_cast<size_t>(i)] = index_.at(p);
      }
    inv_.assign(static_cast<size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
      std::vector<int16_t> p(nr);
      const auto& pu = rootperm_[static_cast<size_t>(u)];
      for (size_t j = 0; j < nr; ++j) p[static_cast<size_t>(pu[j])] = static_cast<int16_t>(j);
      inv_[static_cast<size_t>(u)] = index_.at(p);
    }
    longest_ = 0;
    for (int u = 0; u < n; ++u)
      if (length(u) > length(longest_)) longest_ = u;

    refl_.assign(static_cast<size_t>(rd_->n_pos), 0);
    for (int rt = 0; rt < rd_->n_pos; ++rt)
      refl_[static_cast<size_t>(rt)] = index_.at(perm_of_reflection(rd_->roots[static_cast<size_t>(rt)], rd_->coroots[static_cast<size_t>(rt)]));
  }
};

}  // namespace awc
