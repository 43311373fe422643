#pragma once
// Based reduced root data over explicit lattices, with enough structure to
// drive alcove geometry: simple/positive roots and coroots as integer
// vectors, components with their highest roots, an interior sample point of
// the fundamental antidominant alcove, and dominance tests.

#include <map>
#include <string>
#include <vector>

#include "awc/common.hpp"

namespace awc {

using RationalCoweight = QVec;

struct RootDatumComponent {
  std::vector<int> simples;  // indices into simple_roots
  int theta_index = -1;      // index into roots: highest root of the component
  Int coxeter_h = 0;         // height(theta) + 1
};

class RootDatum {
 public:
  std::string name;
  int dim = 0;     // ambient coordinate count for coweights
  int rank_X = 0;  // rank of the coweight lattice
  std::vector<Vec> simple_roots;    // functionals: pairing via dot()
  std::vector<Vec> simple_coroots;  // lattice vectors (normalized form)
  std::vector<Vec> roots;           // all roots; [0, n_pos) positive, roots[n_pos+i] = -roots[i]
  std::vector<Vec> coroots;         // aligned with roots
  std::vector<std::vector<int>> root_simple_coords;  // coords of roots in simple basis
  int n_pos = 0;
  Vec two_rho;  // sum of positive roots, as a functional
  std::vector<RootDatumComponent> components;
  std::vector<Vec> x_basis;        // basis of the coweight lattice in ambient coords
  std::vector<QVec> central_basis;  // rational basis of {v : <alpha, v> = 0 for all roots}
  QVec alcove_point;  // interior point of {x : -1 < <alpha,x> < 0 for alpha > 0}

  // Quotient lattices (PGL(n)) carry a normal form: subtract the last
  // coordinate times the kernel vector. Identity elsewhere.
  bool has_quotient = false;
  Vec quotient_kernel;  // e.g. (1,...,1)

  Vec normalize(Vec v) const {
    if (!has_quotient) return v;
    Int c = v.back();
    for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] -= c * quotient_kernel[static_cast<size_t>(i)];
    return v;
  }
  QVec normalize_q(QVec v) const {
    if (!has_quotient) return v;
    Rat c = v.back();
    for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] -= c * Rat(BigInt(quotient_kernel[static_cast<size_t>(i)]));
    return v;
  }

  Int pairing(const Vec& root, const Vec& coweight) const { return dot(root, coweight); }
  Rat pairing_q(const Vec& root, const QVec& coweight) const { return dot(root, coweight); }
  const Vec& coroot_of(int root_index) const { return coroots[static_cast<size_t>(root_index)]; }
  bool is_positive_index(int root_index) const { return root_index < n_pos; }
  int negate_index(int root_index) const {
    return root_index < n_pos ? root_index + n_pos : root_index - n_pos;
  }
  int root_index(const Vec& functional) const {
    auto it = root_lookup_.find(functional);
    return it == root_lookup_.end() ? -1 : it->second;
  }

  // reflection through root #r applied to a coweight
  Vec reflect(int r, Vec v) const {
    Int p = dot(roots[static_cast<size_t>(r)], v);
    const Vec& cv = coroots[static_cast<size_t>(r)];
    for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] -= p * cv[static_cast<size_t>(i)];
    return normalize(std::move(v));
  }
  QVec reflect_q(int r, QVec v) const {
    Rat p = dot(roots[static_cast<size_t>(r)], v);
    const Vec& cv = coroots[static_cast<size_t>(r)];
    for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] -= p * Rat(BigInt(cv[static_cast<size_t>(i)]));
    return normalize_q(std::move(v));
  }

  void finalize() {
    build_lookup();
    build_components();
    build_central_basis();
    build_alcove_point();
  }

 private:
  std::map<Vec, int> root_lookup_;

  void build_lookup() {
    root_lookup_.clear();
    for (size_t i = 0; i < roots.size(); ++i) root_lookup_[roots[i]] = static_cast<int>(i);
  }

  void build_components() {
    components.clear();
    int r = static_cast<int>(simple_roots.size());
    std::vector<int> comp(static_cast<size_t>(r), -1);
    int nc = 0;
    for (int i = 0; i < r; ++i) {
      if (comp[static_cast<size_t>(i)] >= 0) continue;
      std::vector<int> stack{i};
      comp[static_cast<size_t>(i)] = nc;
      while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b = 0; b < r; ++b)
          if (comp[static_cast<size_t>(b)] < 0 &&
              dot(simple_roots[static_cast<size_t>(a)], simple_coroots[static_cast<size_t>(b)]) != 0) {
            comp[static_cast<size_t>(b)] = nc;
            stack.push_back(b);
          }
      }
      ++nc;
    }
    components.resize(static_cast<size_t>(nc));
    for (int i = 0; i < r; ++i) components[static_cast<size_t>(comp[static_cast<size_t>(i)])].simples.push_back(i);
    for (int c = 0; c < nc; ++c) {
      auto& cc = components[static_cast<size_t>(c)];
      Int best_ht = -1;
      for (int ri = 0; ri < n_pos; ++ri) {
        const auto& coords = root_simple_coords[static_cast<size_t>(ri)];
        bool in_c = false;
        Int ht = 0;
        bool outside = false;
        for (int j = 0; j < r; ++j) {
          if (coords[static_cast<size_t>(j)] == 0) continue;
          ht += coords[static_cast<size_t>(j)];
          if (comp[static_cast<size_t>(j)] == c) in_c = true;
          else outside = true;
        }
        if (in_c && !outside && ht > best_ht) {
          best_ht = ht;
          cc.theta_index = ri;
        }
      }
      cc.coxeter_h = best_ht + 1;
    }
  }

  void build_central_basis() {
    central_basis.clear();
    if (simple_roots.empty()) {
      for (int i = 0; i < rank_X; ++i) central_basis.push_back(to_q(x_basis[static_cast<size_t>(i)]));
      return;
    }
    QMat m;
    for (const auto& a : simple_roots) {
      QVec row;
      // express the functional on the x_basis coordinates
      for (const auto& bx : x_basis) row.push_back(Rat(BigInt(dot(a, bx))));
      m.push_back(std::move(row));
    }
    for (const auto& k : q_kernel(m)) {
      QVec v(static_cast<size_t>(dim), Rat(0));
      for (size_t j = 0; j < x_basis.size(); ++j)
        for (int i = 0; i < dim; ++i)
          v[static_cast<size_t>(i)] += k[j] * Rat(BigInt(x_basis[j][static_cast<size_t>(i)]));
      central_basis.push_back(normalize_q(std::move(v)));
    }
  }

  void build_alcove_point() {
    // point with <alpha_i, p> = -1/h(component of i); then every positive
    // root alpha of height k has <alpha, p> = -k/h in (-1, 0).
    QMat m;
    QVec rhs;
    std::vector<int> comp_of(simple_roots.size(), 0);
    for (size_t c = 0; c < components.size(); ++c)
      for (int i : components[c].simples) comp_of[static_cast<size_t>(i)] = static_cast<int>(c);
    for (size_t i = 0; i < simple_roots.size(); ++i) {
      QVec row;
      for (int j = 0; j < dim; ++j) row.push_back(Rat(BigInt(simple_roots[i][static_cast<size_t>(j)])));
      m.push_back(std::move(row));
      rhs.push_back(Rat(BigInt(-1), BigInt(components[static_cast<size_t>(comp_of[i])].coxeter_h)));
    }
    auto sol = q_solve(m, rhs);
    if (!sol) throw DomainError("alcove sample point solve failed");
    alcove_point = normalize_q(*sol);
  }
};

namespace detail {

inline void generate_roots(RootDatum& rd) {
  // close the simple system under reflections, tracking simple-basis coords
  std::map<Vec, int> seen;
  std::vector<Vec> roots, coroots;
  std::vector<std::vector<int>> coords;
  size_t r = rd.simple_roots.size();
  for (size_t i = 0; i < r; ++i) {
    std::vector<int> c(r, 0);
    c[i] = 1;
    seen[rd.simple_roots[i]] = static_cast<int>(roots.size());
    roots.push_back(rd.simple_roots[i]);
    coroots.push_back(rd.simple_coroots[i]);
    coords.push_back(std::move(c));
  }
  size_t head = 0;
  while (head < roots.size()) {
    if (roots.size() > 4096) throw DomainError("root system does not close up: not finite type");
    Vec a = roots[head];
    Vec av = coroots[head];
    std::vector<int> ac = coords[head];
    ++head;
    for (size_t i = 0; i < r; ++i) {
      Int p = dot(a, rd.simple_coroots[i]);
      Int pv = dot(rd.simple_roots[i], av);
      Vec b = a - p * rd.simple_roots[i];
      Vec bv = rd.normalize(av - pv * rd.simple_coroots[i]);
      std::vector<int> bc = ac;
      bc[i] -= static_cast<int>(p);
      if (!seen.count(b)) {
        seen[b] = static_cast<int>(roots.size());
        roots.push_back(b);
        coroots.push_back(bv);
        coords.push_back(bc);
      }
    }
  }
  // order: positives by (height, coords lex), then matching negatives
  std::vector<int> pos;
  for (size_t i = 0; i < roots.size(); ++i) {
    Int h = 0;
    bool nonneg = true, nonpos = true;
    for (int c : coords[i]) {
      h += c;
      if (c < 0) nonneg = false;
      if (c > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) throw DomainError("mixed-sign root encountered");
    if (nonneg) pos.push_back(static_cast<int>(i));
  }
  std::sort(pos.begin(), pos.end(), [&](int a, int b) {
    Int ha = 0, hb = 0;
    for (int c : coords[static_cast<size_t>(a)]) ha += c;
    for (int c : coords[static_cast<size_t>(b)]) hb += c;
    if (ha != hb) return ha < hb;
    return coords[static_cast<size_t>(a)] < coords[static_cast<size_t>(b)];
  });
  rd.roots.clear();
  rd.coroots.clear();
  rd.root_simple_coords.clear();
  for (int i : pos) {
    rd.roots.push_back(roots[static_cast<size_t>(i)]);
    rd.coroots.push_back(coroots[static_cast<size_t>(i)]);
    rd.root_simple_coords.push_back(coords[static_cast<size_t>(i)]);
  }
  rd.n_pos = static_cast<int>(pos.size());
  for (int i = 0; i < rd.n_pos; ++i) {
    rd.roots.push_back(-rd.roots[static_cast<size_t>(i)]);
    rd.coroots.push_back(rd.normalize(-rd.coroots[static_cast<size_t>(i)]));
    std::vector<int> c = rd.root_simple_coords[static_cast<size_t>(i)];
    for (int& x : c) x = -x;
    rd.root_simple_coords.push_back(std::move(c));
  }
  rd.two_rho.assign(static_cast<size_t>(rd.dim), 0);
  for (int i = 0; i < rd.n_pos; ++i) rd.two_rho = rd.two_rho + rd.roots[static_cast<size_t>(i)];
}

inline void validate_cartan(const ZMat& c) {
  size_t r = c.size();
  for (size_t i = 0; i < r; ++i) {
    if (c[i].size() != r) throw DomainError("cartan matrix not square");
    if (c[i][i] != 2) throw DomainError("cartan diagonal must be 2");
    for (size_t j = 0; j < r; ++j)
      if (i != j) {
        if (c[i][j] > 0) throw DomainError("cartan off-diagonal must be <= 0");
        if ((c[i][j] == 0) != (c[j][i] == 0)) throw DomainError("cartan zero pattern must be symmetric");
      }
  }
  // symmetrize: d_i c_ij = d_j c_ji with d_i > 0, then positive definiteness
  std::vector<Rat> d(r, Rat(0));
  for (size_t start = 0; start < r; ++start) {
    if (d[start] != Rat(0)) continue;
    d[start] = Rat(1);
    std::vector<size_t> stack{start};
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < r; ++j)
        if (c[i][j] != 0 && i != j && d[j] == Rat(0)) {
          d[j] = d[i] * Rat(c[i][j]) / Rat(c[j][i]);
          if (d[j] <= Rat(0)) throw DomainError("cartan matrix not symmetrizable");
          stack.push_back(j);
        }
    }
  }
  QMat s(r, QVec(r, Rat(0)));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) s[i][j] = d[i] * Rat(c[i][j]);
  // leading principal minors all positive (Sylvester)
  for (size_t k = 1; k <= r; ++k) {
    QMat mk(k, QVec(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) mk[i][j] = s[i][j];
    // determinant by fraction-free elimination on rationals
    Rat det(1);
    for (size_t col = 0; col < k; ++col) {
      size_t piv = col;
      while (piv < k && mk[piv][col] == Rat(0)) ++piv;
      if (piv == k) {
        det = Rat(0);
        break;
      }
      if (piv != col) {
        std::swap(mk[piv], mk[col]);
        det = -det;
      }
      det *= mk[col][col];
      for (size_t i = col + 1; i < k; ++i) {
        Rat f = mk[i][col] / mk[col][col];
        for (size_t j = col; j < k; ++j) mk[i][j] -= f * mk[col][j];
      }
    }
    if (det <= Rat(0)) throw DomainError("cartan matrix not of finite type");
  }
}

}  // namespace detail

struct LatticeSpec {
  enum Kind { SimplyConnected, Adjoint, Matrix } kind = SimplyConnected;
  ZMat rows;  // for Matrix: basis of X in adjoint (fundamental-coweight) coords
};

inline RootDatum build_root_datum_from_cartan(const ZMat& cartan, const LatticeSpec& lat,
                                              const std::string& name) {
  detail::validate_cartan(cartan);
  RootDatum rd;
  rd.name = name;
  int r = static_cast<int>(cartan.size());
  rd.dim = r;
  if (lat.kind == LatticeSpec::SimplyConnected) {
    // coords in the coroot basis: coroot_j = e_j, <alpha_i, .> = row i of C
    rd.rank_X = r;
    for (int i = 0; i < r; ++i) {
      Vec root(static_cast<size_t>(r)), coroot(static_cast<size_t>(r), 0);
      for (int j = 0; j < r; ++j) root[static_cast<size_t>(j)] = static_cast<Int>(cartan[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      coroot[static_cast<size_t>(i)] = 1;
      rd.simple_roots.push_back(root);
      rd.simple_coroots.push_back(coroot);
      Vec e(static_cast<size_t>(r), 0);
      e[static_cast<size_t>(i)] = 1;
      rd.x_basis.push_back(e);
    }
  } else {
    // coords in the fundamental coweight basis: <alpha_i, .> = e_i,
    // coroot_j = column j of C. Adjoint: X = all of it; Matrix: given rows.
    rd.rank_X = r;
    for (int i = 0; i < r; ++i) {
      Vec root(static_cast<size_t>(r), 0), coroot(static_cast<size_t>(r));
      root[static_cast<size_t>(i)] = 1;
      for (int j = 0; j < r; ++j) coroot[static_cast<size_t>(j)] = static_cast<Int>(cartan[static_cast<size_t>(j)][static_cast<size_t>(i)]);
      rd.simple_roots.push_back(root);
      rd.simple_coroots.push_back(coroot);
    }
    if (lat.kind == LatticeSpec::Adjoint) {
      for (int i = 0; i < r; ++i) {
        Vec e(static_cast<size_t>(r), 0);
        e[static_cast<size_t>(i)] = 1;
        rd.x_basis.push_back(e);
      }
    } else {
      if (static_cast<int>(lat.rows.size()) != r) throw DomainError("lattice matrix must have full rank rows");
      for (const auto& row : lat.rows) {
        if (static_cast<int>(row.size()) != r) throw DomainError("lattice row size mismatch");
        Vec v(static_cast<size_t>(r));
        for (int j = 0; j < r; ++j) v[static_cast<size_t>(j)] = static_cast<Int>(row[static_cast<size_t>(j)]);
        rd.x_basis.push_back(v);
      }
      // X must contain the coroot lattice: each coroot solvable integrally
      ZMat b(static_cast<size_t>(r), std::vector<BigInt>(static_cast<size_t>(r)));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) b[static_cast<size_t>(i)][static_cast<size_t>(j)] = rd.x_basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
      SmithNF s = smith_normal_form(b);
      for (const auto& cv : rd.simple_coroots) {
        // solve B y = cv integrally via U cv against diag
        std::vector<BigInt> ub(static_cast<size_t>(r), 0);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) ub[static_cast<size_t>(i)] += s.U[static_cast<size_t>(i)][static_cast<size_t>(j)] * cv[static_cast<size_t>(j)];
        for (int i = 0; i < r; ++i) {
          if (i < static_cast<int>(s.rank)) {
            if (ub[static_cast<size_t>(i)] % s.diag[static_cast<size_t>(i)] != 0)
              throw DomainError("lattice does not contain the coroot lattice");
          } else if (ub[static_cast<size_t>(i)] != 0) {
            throw DomainError("lattice does not contain the coroot lattice");
          }
        }
      }
    }
  }
  detail::generate_roots(rd);
  rd.finalize();
  return rd;
}

inline RootDatum build_root_datum(const std::string& preset_in) {
  std::string p = preset_in;
  auto starts = [&](const char* s) { return p.rfind(s, 0) == 0; };
  auto tail_int = [&](size_t off) -> int {
    std::string t = p.substr(off);
    if (!t.empty() && t.front() == '(') t = t.substr(1, t.size() - 2);
    if (t.empty()) throw ParseError("preset needs a rank: " + preset_in);
    for (char ch : t)
      if (!isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad preset rank: " + preset_in);
    return std::stoi(t);
  };

  auto type_a_roots = [](RootDatum& rd, int n) {
    for (int i = 0; i + 1 < n; ++i) {
      Vec a(static_cast<size_t>(n), 0);
      a[static_cast<size_t>(i)] = 1;
      a[static_cast<size_t>(i) + 1] = -1;
      rd.simple_roots.push_back(a);
      rd.simple_coroots.push_back(rd.normalize(a));
    }
  };

  RootDatum rd;
  if (starts("GL")) {
    int n = tail_int(2);
    if (n < 1) throw DomainError("GL rank must be >= 1");
    rd.name = "GL" + std::to_string(n);
    rd.dim = n;
    rd.rank_X = n;
    for (int i = 0; i < n; ++i) {
      Vec e(static_cast<size_t>(n), 0);
      e[static_cast<size_t>(i)] = 1;
      rd.x_basis.push_back(e);
    }
    type_a_roots(rd, n);
  } else if (starts("SL")) {
    int n = tail_int(2);
    if (n < 2) throw DomainError("SL rank must be >= 2");
    rd.name = "SL" + std::to_string(n);
    rd.dim = n;
    rd.rank_X = n - 1;
    for (int i = 0; i + 1 < n; ++i) {
      Vec e(static_cast<size_t>(n), 0);
      e[static_cast<size_t>(i)] = 1;
      e[static_cast<size_t>(i) + 1] = -1;
      rd.x_basis.push_back(e);
    }
    type_a_roots(rd, n);
  } else if (starts("PGL")) {
    int n = tail_int(3);
    if (n < 2) throw DomainError("PGL rank must be >= 2");
    rd.name = "PGL" + std::to_string(n);
    rd.dim = n;
    rd.rank_X = n - 1;
    rd.has_quotient = true;
    rd.quotient_kernel.assign(static_cast<size_t>(n), 1);
    for (int i = 0; i + 1 < n; ++i) {
      Vec e(static_cast<size_t>(n), 0);
      e[static_cast<size_t>(i)] = 1;
      rd.x_basis.push_back(e);
    }
    type_a_roots(rd, n);
  } else if (p == "Sp4" || p == "Sp(4)" || p == "C2") {
    rd.name = "Sp4";
    rd.dim = 2;
    rd.rank_X = 2;
    rd.x_basis = {{1, 0}, {0, 1}};
    rd.simple_roots = {{1, -1}, {0, 2}};
    rd.simple_coroots = {{1, -1}, {0, 1}};
  } else if (p == "SO5" || p == "SO(5)" || p == "B2") {
    rd.name = "SO5";
    rd.dim = 2;
    rd.rank_X = 2;
    rd.x_basis = {{1, 0}, {0, 1}};
    rd.simple_roots = {{1, -1}, {0, 1}};
    rd.simple_coroots = {{1, -1}, {0, 2}};
  } else if (p == "A1") {
    return build_root_datum_from_cartan({{BigInt(2)}}, LatticeSpec{LatticeSpec::SimplyConnected, {}}, "A1");
  } else {
    throw ParseError("unknown preset: " + preset_in);
  }
  detail::generate_roots(rd);
  rd.finalize();
  return rd;
}

// Applies simple reflections, always at the lexicographically first strictly
// negative pairing, until dominant. Returns the dominant vector and the word
// of simple indices in application order.
inline std::pair<QVec, std::vector<int>> dominant_representative(const RootDatum& rd, QVec v) {
  std::vector<int> word;
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t i = 0; i < rd.simple_roots.size(); ++i) {
      if (dot(rd.simple_roots[i], v) < Rat(0)) {
        v = rd.reflect_q(rd.root_index(rd.simple_roots[i]), std::move(v));
        word.push_back(static_cast<int>(i));
        moved = true;
        break;
      }
    }
    if (word.size() > 100000) throw ResourceError("dominant_representative runaway");
  }
  return {v, word};
}

inline bool is_dominant(const RootDatum& rd, const QVec& v) {
  for (const auto& a : rd.simple_roots)
    if (dot(a, v) < Rat(0)) return false;
  return true;
}

// Dominance order on dominant rational coweights: a <= b iff b - a is a
// nonnegative rational combination of positive coroots and the central
// components agree. Precondition: both dominant.
inline bool dominance_leq(const RootDatum& rd, const QVec& a, const QVec& b) {
  if (!is_dominant(rd, a) || !is_dominant(rd, b)) throw DomainError("dominance_leq needs dominant inputs");
  QVec d = qsub(b, a);
  if (rd.has_quotient) d = rd.normalize_q(std::move(d));
  QMat m(static_cast<size_t>(rd.dim));
  size_t ncr = rd.simple_coroots.size();
  for (int i = 0; i < rd.dim; ++i) {
    QVec row;
    for (size_t j = 0; j < ncr; ++j) row.push_back(Rat(BigInt(rd.simple_coroots[j][static_cast<size_t>(i)])));
    for (const auto& cb : rd.central_basis) row.push_back(cb[static_cast<size_t>(i)]);
    m[static_cast<size_t>(i)] = std::move(row);
  }
  auto sol = q_solve(m, d);
  if (!sol) return false;
  for (size_t j = 0; j < ncr; ++j)
    if ((*sol)[j] < Rat(0)) return false;
  for (size_t j = ncr; j < sol->size(); ++j)
    if ((*sol)[j] != Rat(0)) return false;
  return true;
}

}  // namespace awc
