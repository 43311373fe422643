#pragma once
// Length-preserving automorphisms delta = Ad(tau) o varsigma of the extended
// affine Weyl group: a lattice-preserving linear part permuting the simple
// roots, composed with conjugation by a length-zero element. Validated to
// permute the affine simple reflections.

#include <vector>

#include "awc/affine.hpp"

namespace awc {

struct TwistAuto {
  Vec A;                         // flattened dim x dim linear part
  Vec A_inv;                     // exact inverse, also integral
  std::vector<int16_t> rootmap;  // root index -> image under the linear part
  std::vector<int> w0_conj;      // u -> index of (A u A^{-1})
  std::vector<int> simple_perm;  // induced diagram permutation (finite simples)
  AffineElt tau;                 // length-zero element
  std::vector<int> gen_perm;     // gen position -> gen position under delta
  bool linear_trivial = true;
  bool trivial = true;

  Vec act_lin(const RootDatum& rd, const Vec& v) const {
    int d = rd.dim;
    Vec out(static_cast<size_t>(d), 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[static_cast<size_t>(i)] += A[static_cast<size_t>(i * d + j)] * v[static_cast<size_t>(j)];
    return rd.normalize(std::move(out));
  }
  QVec act_lin_q(const RootDatum& rd, const QVec& v) const {
    int d = rd.dim;
    QVec out(static_cast<size_t>(d), Rat(0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[static_cast<size_t>(i)] += Rat(BigInt(A[static_cast<size_t>(i * d + j)])) * v[static_cast<size_t>(j)];
    return rd.normalize_q(std::move(out));
  }
};

namespace detail {

inline Vec identity_flat(int d) {
  Vec m(static_cast<size_t>(d * d), 0);
  for (int i = 0; i < d; ++i) m[static_cast<size_t>(i * d + i)] = 1;
  return m;
}

inline Vec invert_integral(const Vec& a, int d) {
  QMat m(static_cast<size_t>(d), QVec(static_cast<size_t>(2 * d), Rat(0)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rat(BigInt(a[static_cast<size_t>(i * d + j)]));
    m[static_cast<size_t>(i)][static_cast<size_t>(d + i)] = Rat(1);
  }
  for (int c = 0; c < d; ++c) {
    int p = c;
    while (p < d && m[static_cast<size_t>(p)][static_cast<size_t>(c)] == Rat(0)) ++p;
    if (p == d) throw DomainError("twist linear part is singular");
    std::swap(m[static_cast<size_t>(p)], m[static_cast<size_t>(c)]);
    Rat pv = m[static_cast<size_t>(c)][static_cast<size_t>(c)];
    for (int j = 0; j < 2 * d; ++j) m[static_cast<size_t>(c)][static_cast<size_t>(j)] /= pv;
    for (int i = 0; i < d; ++i)
      if (i != c && m[static_cast<size_t>(i)][static_cast<size_t>(c)] != Rat(0)) {
        Rat f = m[static_cast<size_t>(i)][static_cast<size_t>(c)];
        for (int j = 0; j < 2 * d; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * m[static_cast<size_t>(c)][static_cast<size_t>(j)];
      }
  }
  Vec inv(static_cast<size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rat v = m[static_cast<size_t>(i)][static_cast<size_t>(d + j)];
      if (v.denominator() != 1) throw DomainError("twist linear part is not lattice-invertible");
      inv[static_cast<size_t>(i * d + j)] = static_cast<Int>(v.numerator());
    }
  return inv;
}

}  // namespace detail

inline TwistAuto make_twist(const AffineWeyl& aw, Vec A_flat, AffineElt tau) {
  const RootDatum& rd = aw.rd();
  int d = rd.dim;
  TwistAuto t;
  t.A = std::move(A_flat);
  if (t.A.empty()) t.A = detail::identity_flat(d);
  if (static_cast<int>(t.A.size()) != d * d) throw DomainError("twist matrix has wrong shape");
  t.A_inv = detail::invert_integral(t.A, d);
  t.linear_trivial = t.A == detail::identity_flat(d);

  if (tau.len != 0) throw DomainError("twist tau must have length zero");
  t.tau = tau;
  t.trivial = t.linear_trivial && tau == aw.identity();

  // functional image under the linear part: alpha o A^{-1} = alpha * A_inv
  auto map_root = [&](const Vec& a) {
    Vec out(static_cast<size_t>(d), 0);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        out[static_cast<size_t>(j)] += a[static_cast<size_t>(i)] * t.A_inv[static_cast<size_t>(i * d + j)];
    return out;
  };
  size_t nr = rd.roots.size();
  t.rootmap.resize(nr);
  for (size_t j = 0; j < nr; ++j) {
    int idx = rd.root_index(map_root(rd.roots[j]));
    if (idx < 0) throw DomainError("twist linear part does not permute the roots");
    t.rootmap[j] = static_cast<int16_t>(idx);
  }
  t.simple_perm.resize(rd.simple_roots.size());
  for (size_t i = 0; i < rd.simple_roots.size(); ++i) {
    int src = rd.root_index(rd.simple_roots[i]);
    int img = t.rootmap[static_cast<size_t>(src)];
    bool found = false;
    for (size_t j = 0; j < rd.simple_roots.size(); ++j)
      if (rd.root_index(rd.simple_roots[j]) == img) {
        t.simple_perm[i] = static_cast<int>(j);
        found = true;
      }
    if (!found) throw DomainError("twist linear part does not permute the simple roots");
  }
  // lattice preservation: images of the lattice basis stay in the lattice
  for (const auto& b : rd.x_basis) aw.x_coords(t.act_lin(rd, b));

  const W0Table& w0 = aw.w0();
  std::vector<int16_t> inv_rootmap(nr);
  for (size_t j = 0; j < nr; ++j) inv_rootmap[static_cast<size_t>(t.rootmap[j])] = static_cast<int16_t>(j);
  t.w0_conj.resize(static_cast<size_t>(w0.size()));
  for (int u = 0; u < w0.size(); ++u) {
    std::vector<int16_t> p(nr);
    const auto& pu = w0.perm(u);
    for (size_t j = 0; j < nr; ++j) p[j] = t.rootmap[static_cast<size_t>(pu[static_cast<size_t>(inv_rootmap[j])])];
    t.w0_conj[static_cast<size_t>(u)] = w0.index_of_perm(p);
  }

  // delta must permute the affine simple reflections
  auto apply = [&](const AffineElt& w) {
    AffineElt vs = aw.make(t.act_lin(rd, w.lam), t.w0_conj[static_cast<size_t>(w.u)]);
    return aw.compose(aw.compose(t.tau, vs), aw.inverse(t.tau));
  };
  t.gen_perm.assign(aw.gens().size(), -1);
  for (size_t g = 0; g < aw.gens().size(); ++g) {
    AffineElt img = apply(aw.gens()[g].elt);
    for (size_t h = 0; h < aw.gens().size(); ++h)
      if (aw.gens()[h].elt == img) t.gen_perm[g] = static_cast<int>(h);
    if (t.gen_perm[g] < 0) throw DomainError("twist does not permute the affine simple reflections");
  }
  return t;
}

inline TwistAuto twist_identity(const AffineWeyl& aw) { return make_twist(aw, {}, aw.identity()); }

// the order-two diagram automorphism of the type A presets: e_i -> -e_{n+1-i}
inline Vec flip_matrix(const RootDatum& rd) {
  int d = rd.dim;
  Vec m(static_cast<size_t>(d * d), 0);
  for (int i = 0; i < d; ++i) m[static_cast<size_t>(i * d + (d - 1 - i))] = -1;
  return m;
}

inline AffineElt twist_apply(const AffineWeyl& aw, const TwistAuto& t, const AffineElt& w) {
  if (t.trivial) return w;
  AffineElt vs = t.linear_trivial
                     ? w
                     : aw.make(t.act_lin(aw.rd(), w.lam), t.w0_conj[static_cast<size_t>(w.u)]);
  if (t.tau == aw.identity()) return vs;
  return aw.compose(aw.compose(t.tau, vs), aw.inverse(t.tau));
}

// delta-conjugation move: x w delta(x)^{-1}
inline AffineElt twist_conj(const AffineWeyl& aw, const TwistAuto& t, const AffineElt& x, const AffineElt& w) {
  return aw.compose(aw.compose(x, w), aw.inverse(twist_apply(aw, t, x)));
}

}  // namespace awc
