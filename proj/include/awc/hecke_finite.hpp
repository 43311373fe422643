#pragma once
// Cocenter bases and the small finite Hecke character tables: number-field
// arithmetic for specialized parameters, the A2/C2 tables with their
// determinants, trace kernels, the 0-Hecke basis of minimal-length
// equivalence classes, and the rigid basis (classes with zero Newton point).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "awc/class_poly.hpp"
#include "awc/conjugacy.hpp"
#include "awc/poly.hpp"

namespace awc {

// ---- polynomials over Q, coefficient vectors low to high ----
namespace qp {

inline void trim(QVec& p) {
  while (!p.empty() && p.back() == Rat(0)) p.pop_back();
}
inline int deg(const QVec& p) { return static_cast<int>(p.size()) - 1; }
inline QVec add(QVec a, const QVec& b) {
  if (b.size() > a.size()) a.resize(b.size(), Rat(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}
inline QVec scale(const Rat& c, QVec a) {
  if (c == Rat(0)) return {};
  for (Rat& x : a) x *= c;
  return a;
}
inline QVec mul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}
// a = q*b + r with deg r < deg b
inline std::pair<QVec, QVec> divmod(QVec a, const QVec& b) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  QVec q;
  while (deg(a) >= deg(b)) {
    int shift = deg(a) - deg(b);
    Rat c = a.back() / b.back();
    if (static_cast<int>(q.size()) < shift + 1) q.resize(static_cast<size_t>(shift) + 1, Rat(0));
    q[static_cast<size_t>(shift)] += c;
    for (size_t i = 0; i < b.size(); ++i) a[static_cast<size_t>(shift) + i] -= c * b[i];
    trim(a);
  }
  return {q, a};
}

}  // namespace qp

// Q[x]/(f). Elements are coefficient vectors of length deg f. A degree-one
// modulus recovers plain rational arithmetic. Inverses come from the extended
// Euclid algorithm; a noninvertible nonzero element means the modulus was
// reducible and the specialization ill-posed.
class NumberField {
 public:
  using Elem = QVec;

  explicit NumberField(QVec modulus) : f_(std::move(modulus)) {
    qp::trim(f_);
    if (qp::deg(f_) < 1) throw DomainError("number field modulus must have positive degree");
    // make monic
    Rat lead = f_.back();
    for (Rat& c : f_) c /= lead;
  }

  size_t degree() const { return f_.size() - 1; }
  const QVec& modulus() const { return f_; }

  Elem zero() const { return Elem(degree(), Rat(0)); }
  Elem one() const { return from_rat(Rat(1)); }
  Elem from_rat(const Rat& c) const {
    Elem e(degree(), Rat(0));
    e[0] = c;
    return e;
  }
  Elem from_big(const BigInt& c) const { return from_rat(Rat(c)); }
  Elem gen() const {  // the class of x
    QVec x{Rat(0), Rat(1)};
    return reduce(std::move(x));
  }

  bool is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](const Rat& c) { return c == Rat(0); });
  }
  Elem add(Elem a, const Elem& b) const {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }
  Elem sub(Elem a, const Elem& b) const {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
  }
  Elem neg(Elem a) const {
    for (Rat& c : a) c = -c;
    return a;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    QVec p = qp::mul(strip(a), strip(b));
    return reduce(std::move(p));
  }
  Elem inv(const Elem& a) const {
    QVec r0 = f_, r1 = strip(a);
    if (r1.empty()) throw DomainError("inverse of zero in the specialization field");
    QVec t0, t1{Rat(1)};
    while (!r1.empty()) {
      auto [q, r] = qp::divmod(r0, r1);
      QVec t2 = qp::add(t0, qp::scale(Rat(-1), qp::mul(q, t1)));
      r0 = std::move(r1);
      r1 = std::move(r);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (qp::deg(r0) != 0)
      throw DomainError("specialization is a zero divisor; the modulus is reducible");
    return reduce(qp::scale(Rat(1) / r0[0], t0));
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  std::string str(const Elem& a, const std::string& var = "q") const {
    QVec s = strip(a);
    if (s.empty()) return "0";
    std::string out;
    for (size_t i = s.size(); i-- > 0;) {
      const Rat& c = s[i];
      if (c == Rat(0)) continue;
      Rat abs = c < Rat(0) ? -c : c;
      if (out.empty()) out += c < Rat(0) ? "-" : "";
      else out += c < Rat(0) ? " - " : " + ";
      std::string mono;
      if (i > 0) {
        mono = var;
        if (i > 1) mono += "^" + std::to_string(i);
      }
      if (mono.empty()) out += rat_str(abs);
      else {
        if (abs != Rat(1)) out += rat_str(abs) + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  QVec f_;

  QVec strip(QVec a) const {
    qp::trim(a);
    return a;
  }
  Elem reduce(QVec p) const {
    auto [q, r] = qp::divmod(std::move(p), f_);
    (void)q;
    r.resize(degree(), Rat(0));
    return r;
  }
};

// ---- character tables ----

struct CharTable {
  std::string label;
  std::vector<std::string> params;     // parameter names, one per generator orbit
  std::vector<std::string> row_names;  // cocenter basis rows, decreasing min length
  std::vector<Int> row_min_len;
  std::vector<std::string> col_names;  // irreducible modules
  std::vector<std::vector<MPoly>> entries;

  const MPoly& entry(const std::string& row, const std::string& col) const {
    for (size_t i = 0; i < row_names.size(); ++i)
      if (row_names[i] == row)
        for (size_t j = 0; j < col_names.size(); ++j)
          if (col_names[j] == col) return entries[i][j];
    throw DomainError("no character table entry (" + row + ", " + col + ")");
  }
};

namespace detail_ct {

using PMat = std::vector<std::vector<MPoly>>;

inline PMat pmat_mul(const PMat& a, const PMat& b, const std::vector<std::string>& vars) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  PMat r(n, std::vector<MPoly>(m, MPoly(vars)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
  return r;
}
inline MPoly pmat_trace(const PMat& a, const std::vector<std::string>& vars) {
  MPoly t(vars);
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}
inline PMat pmat_identity(size_t n, const std::vector<std::string>& vars) {
  PMat r(n, std::vector<MPoly>(n, MPoly(vars)));
  for (size_t i = 0; i < n; ++i) r[i][i] = MPoly::constant(vars, 1);
  return r;
}
inline bool pmat_eq(const PMat& a, const PMat& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (!(a[i][j] == b[i][j])) return false;
  return true;
}
inline PMat pmat_scale(const MPoly& c, PMat a) {
  for (auto& row : a)
    for (auto& e : row) e = e * c;
  return a;
}
inline PMat pmat_add(PMat a, const PMat& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  return a;
}

// checks the quadratic relation (T+1)(T-q) = 0 and the braid relation of
// order m for each module
inline void verify_module(const PMat& t1, const PMat& t2, const MPoly& q1, const MPoly& q2, int m,
                          const std::vector<std::string>& vars, const std::string& what) {
  auto quad = [&](const PMat& t, const MPoly& q) {
    // (T+1)(T-q) = 0, rearranged as T^2 = (q-1)T + q
    PMat lhs = pmat_mul(t, t, vars);
    PMat rhs = pmat_add(pmat_scale(q - MPoly::constant(vars, 1), t),
                        pmat_scale(q, pmat_identity(t.size(), vars)));
    return pmat_eq(lhs, rhs);
  };
  if (!quad(t1, q1) || !quad(t2, q2)) throw DomainError(what + ": quadratic relation fails");
  PMat a = t1, b = t2;
  for (int i = 1; i < m; ++i) {
    a = pmat_mul(a, i % 2 ? t2 : t1, vars);
    b = pmat_mul(b, i % 2 ? t1 : t2, vars);
  }
  if (!pmat_eq(a, b)) throw DomainError(what + ": braid relation fails");
}

}  // namespace detail_ct

// Character tables of the rank-two finite Hecke algebras with the modules in
// explicit matrix form. Rows are the standard cocenter basis, ordered by
// decreasing minimal length then name; this order also fixes the determinant
// sign. Parameter names are caller-chosen, one per generator.
inline CharTable finite_char_table(const std::string& label, std::vector<std::string> params = {}) {
  using detail_ct::PMat;
  CharTable t;
  t.label = label;
  if (label == "A2") {
    if (params.empty()) params = {"q"};
    if (params.size() != 1) throw DomainError("A2 table takes one parameter");
    t.params = params;
    const auto& vars = t.params;
    MPoly q = MPoly::var(vars, 0);
    MPoly one = MPoly::constant(vars, 1);
    MPoly zero(vars);
    // modules: trivial, Steinberg, and the two-dimensional reflection module
    std::vector<std::pair<PMat, PMat>> modules;
    modules.push_back({PMat{{q}}, PMat{{q}}});
    modules.push_back({PMat{{-one}}, PMat{{-one}}});
    modules.push_back({PMat{{-one, one}, {zero, q}}, PMat{{q, zero}, {q, -one}}});
    for (const auto& [a, b] : modules) detail_ct::verify_module(a, b, q, q, 3, vars, "A2 module");
    t.col_names = {"triv", "St", "pi"};
    t.row_names = {"T_{s1s2}", "T_{s1}", "1"};
    t.row_min_len = {2, 1, 0};
    std::vector<std::vector<int>> words = {{0, 1}, {0}, {}};
    for (const auto& w : words) {
      std::vector<MPoly> row;
      for (const auto& [a, b] : modules) {
        PMat acc = detail_ct::pmat_identity(a.size(), vars);
        for (int g : w) acc = detail_ct::pmat_mul(acc, g == 0 ? a : b, vars);
        row.push_back(detail_ct::pmat_trace(acc, vars));
      }
      t.entries.push_back(std::move(row));
    }
    return t;
  }
  if (label == "C2") {
    if (params.empty()) params = {"q1", "q2"};
    if (params.size() != 2) throw DomainError("C2 table takes two parameters");
    t.params = params;
    const auto& vars = t.params;
    MPoly q1 = MPoly::var(vars, 0), q2 = MPoly::var(vars, 1);
    MPoly one = MPoly::constant(vars, 1);
    MPoly zero(vars);
    // four one-dimensional modules indexed by sign choices, then the
    // two-dimensional reflection module
    std::vector<std::pair<PMat, PMat>> modules;
    modules.push_back({PMat{{q1}}, PMat{{q2}}});
    modules.push_back({PMat{{-one}}, PMat{{q2}}});
    modules.push_back({PMat{{q1}}, PMat{{-one}}});
    modules.push_back({PMat{{-one}}, PMat{{-one}}});
    modules.push_back({PMat{{-one, one}, {zero, q1}}, PMat{{q2, zero}, {q1 + q2, -one}}});
    for (const auto& [a, b] : modules) detail_ct::verify_module(a, b, q1, q2, 4, vars, "C2 module");
    t.col_names = {"2x0", "11x0", "0x2", "0x11", "1x1"};
    t.row_names = {"T_{s1s2s1s2}", "T_{s1s2}", "T_{s1}", "T_{s2}", "1"};
    t.row_min_len = {4, 2, 1, 1, 0};
    std::vector<std::vector<int>> words = {{0, 1, 0, 1}, {0, 1}, {0}, {1}, {}};
    for (const auto& w : words) {
      std::vector<MPoly> row;
      for (const auto& [a, b] : modules) {
        PMat acc = detail_ct::pmat_identity(a.size(), vars);
        for (int g : w) acc = detail_ct::pmat_mul(acc, g == 0 ? a : b, vars);
        row.push_back(detail_ct::pmat_trace(acc, vars));
      }
      t.entries.push_back(std::move(row));
    }
    return t;
  }
  throw DomainError("unsupported character table label: " + label);
}

namespace detail_ct {

inline MPoly det_expand(const std::vector<std::vector<MPoly>>& m, std::vector<int> cols,
                        size_t row, const std::vector<std::string>& vars) {
  if (cols.empty()) return MPoly::constant(vars, 1);
  MPoly acc(vars);
  int sign = 1;
  for (size_t ci = 0; ci < cols.size(); ++ci) {
    std::vector<int> rest;
    for (size_t k = 0; k < cols.size(); ++k)
      if (k != ci) rest.push_back(cols[k]);
    MPoly sub = det_expand(m, rest, row + 1, vars);
    MPoly term = m[row][static_cast<size_t>(cols[ci])] * sub;
    if (sign < 0) term = -term;
    acc += term;
    sign = -sign;
  }
  return acc;
}

// leading term in the graded lex order used for printing
inline std::pair<MPoly::Expo, BigInt> lead_term(const MPoly& p) {
  auto better = [](const MPoly::Expo& a, const MPoly::Expo& b) {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da > db;
    return a > b;
  };
  auto it = p.terms().begin();
  auto best = it;
  for (; it != p.terms().end(); ++it)
    if (better(it->first, best->first)) best = it;
  return *best;
}

// field elements wrapped so the polynomial evaluator sees ring operators
struct NFWrapped {
  const NumberField* nf;
  NumberField::Elem v;
  friend NFWrapped operator+(const NFWrapped& a, const NFWrapped& b) {
    return {a.nf, a.nf->add(a.v, b.v)};
  }
  friend NFWrapped operator*(const NFWrapped& a, const NFWrapped& b) {
    return {a.nf, a.nf->mul(a.v, b.v)};
  }
};

inline std::optional<MPoly> try_divide(MPoly a, const MPoly& d) {
  if (d.is_zero()) return std::nullopt;
  MPoly q(a.vars());
  auto [de, dc] = lead_term(d);
  while (!a.is_zero()) {
    auto [ae, ac] = lead_term(a);
    MPoly::Expo diff(ae.size());
    for (size_t i = 0; i < ae.size(); ++i) {
      diff[i] = ae[i] - de[i];
      if (diff[i] < 0) return std::nullopt;
    }
    if (ac % dc != 0) return std::nullopt;
    MPoly mono = MPoly::constant(a.vars(), ac / dc);
    for (size_t i = 0; i < diff.size(); ++i)
      if (diff[i]) mono = mono * MPoly::var(a.vars(), i, diff[i]);
    q += mono;
    a -= mono * d;
  }
  return q;
}

}  // namespace detail_ct

inline MPoly char_table_det(const CharTable& t) {
  size_t n = t.row_names.size();
  if (n != t.col_names.size()) throw DomainError("character table is not square");
  std::vector<int> cols(n);
  for (size_t i = 0; i < n; ++i) cols[i] = static_cast<int>(i);
  return detail_ct::det_expand(t.entries, cols, 0, t.params);
}

// Best-effort factored display: pull out the small cyclotomic-style factors
// that occur in these determinants, leave the rest expanded.
inline std::string char_table_det_factored(const CharTable& t) {
  MPoly d = char_table_det(t);
  if (d.is_zero()) return "0";
  const auto& vars = t.params;
  std::vector<MPoly> candidates;
  for (size_t i = 0; i < vars.size(); ++i) {
    candidates.push_back(MPoly::var(vars, i));
    candidates.push_back(MPoly::constant(vars, 1) + MPoly::var(vars, i));
    candidates.push_back(MPoly::constant(vars, 1) + MPoly::var(vars, i) + MPoly::var(vars, i, 2));
  }
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j) {
      candidates.push_back(MPoly::var(vars, i) + MPoly::var(vars, j));
      candidates.push_back(MPoly::constant(vars, 1) + MPoly::var(vars, i) * MPoly::var(vars, j));
    }
  std::vector<std::pair<MPoly, int>> factors;
  for (const MPoly& c : candidates) {
    int mult = 0;
    while (true) {
      auto q = detail_ct::try_divide(d, c);
      if (!q) break;
      d = *q;
      ++mult;
    }
    if (mult) factors.push_back({c, mult});
  }
  std::string out;
  auto wrap = [](const std::string& s) { return s.find_first_of("+- ") == std::string::npos ? s : "(" + s + ")"; };
  if (!(d == MPoly::constant(vars, 1))) out += wrap(d.str());
  for (const auto& [f, m] : factors) {
    if (!out.empty()) out += "*";
    out += wrap(f.str());
    if (m > 1) out += "^" + std::to_string(m);
  }
  return out;
}

// Kernel of the trace pairing at a parameter specialization: vectors c with
// sum_i c_i * row_i vanishing on every module, i.e. M^T c = 0 over the field
// Q[x]/(modulus). Basis vectors are normalized so the last nonzero
// coordinate is 1; coordinates follow the table's row order.
inline std::vector<std::vector<NumberField::Elem>> trace_kernel_at(
    const CharTable& t, const NumberField& nf, const std::vector<NumberField::Elem>& values) {
  if (values.size() != t.params.size()) throw DomainError("wrong number of parameter values");
  for (size_t i = 0; i < values.size(); ++i)
    if (nf.is_zero(values[i]))
      throw DomainError("parameter " + t.params[i] + " specialized to zero; use the 0-Hecke basis");
  size_t n = t.row_names.size(), m = t.col_names.size();
  std::vector<detail_ct::NFWrapped> vals;
  for (const auto& v : values) vals.push_back(detail_ct::NFWrapped{&nf, v});
  auto from = [&](const BigInt& c) { return detail_ct::NFWrapped{&nf, nf.from_big(c)}; };
  // rows of g are the modules, columns the cocenter coordinates
  std::vector<std::vector<NumberField::Elem>> g(m, std::vector<NumberField::Elem>(n, nf.zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j)
      g[j][i] = t.entries[i][j].eval<detail_ct::NFWrapped>(vals, from).v;
  // elimination over the number field
  std::vector<int> pivot_of_col(n, -1);
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && nf.is_zero(g[p][c])) ++p;
    if (p == m) continue;
    std::swap(g[p], g[r]);
    NumberField::Elem pv = nf.inv(g[r][c]);
    for (size_t j = 0; j < n; ++j) g[r][j] = nf.mul(g[r][j], pv);
    for (size_t i = 0; i < m; ++i)
      if (i != r && !nf.is_zero(g[i][c])) {
        NumberField::Elem f = g[i][c];
        for (size_t j = 0; j < n; ++j) g[i][j] = nf.sub(g[i][j], nf.mul(f, g[r][j]));
      }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  std::vector<std::vector<NumberField::Elem>> basis;
  for (size_t c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<NumberField::Elem> v(n, nf.zero());
    v[c] = nf.one();
    for (size_t j = 0; j < n; ++j)
      if (pivot_of_col[j] >= 0) v[j] = nf.neg(g[static_cast<size_t>(pivot_of_col[j])][c]);
    // normalize at the last nonzero coordinate
    size_t last = n;
    for (size_t j = n; j-- > 0;)
      if (!nf.is_zero(v[j])) {
        last = j;
        break;
      }
    if (last < n) {
      NumberField::Elem s = nf.inv(v[last]);
      for (auto& x : v) x = nf.mul(x, s);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::string cocenter_combo_str(const CharTable& t, const NumberField& nf,
                                      const std::vector<NumberField::Elem>& v,
                                      const std::string& var = "q") {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (nf.is_zero(v[i])) continue;
    std::string c = nf.str(v[i], var);
    if (!out.empty()) out += " + ";
    if (t.row_names[i] == "1") out += c;
    else if (c == "1") out += t.row_names[i];
    else {
      bool simple = c.find_first_of("+- ") == std::string::npos;
      out += (simple ? c : "(" + c + ")") + "*" + t.row_names[i];
    }
  }
  return out.empty() ? "0" : out;
}

// ---- 0-Hecke basis ----

// An equivalence class of minimal-length elements under length-preserving
// elementary conjugations. For the finite scope the (support, class) pair is
// the classifying label; rep is the smallest member.
struct ZeroHeckeClass {
  AffineElt rep;
  Int len = 0;
  std::vector<AffineElt> members;
  std::vector<int> support;  // cli indices appearing in reduced words
};

namespace detail_zh {

inline std::vector<int> support_of(const AffineWeyl& aw, const std::vector<AffineElt>& members) {
  std::set<int> s;
  for (const AffineElt& w : members)
    for (int cli : aw.reduced_word(w).first) s.insert(cli);
  return std::vector<int>(s.begin(), s.end());
}

inline std::vector<ZeroHeckeClass> partition_minimal(const ConjCtx& ctx,
                                                     const std::vector<AffineElt>& minimal,
                                                     const std::vector<ConjCtx::Move>& moves) {
  const AffineWeyl& aw = ctx.aw();
  std::set<EltKey> pool;
  for (const AffineElt& w : minimal) pool.insert(elt_key(w));
  std::set<EltKey> done;
  std::vector<ZeroHeckeClass> out;
  for (const AffineElt& w : minimal) {
    if (done.count(elt_key(w))) continue;
    std::vector<AffineElt> comp{w};
    std::set<EltKey> seen{elt_key(w)};
    for (size_t head = 0; head < comp.size(); ++head) {
      for (const auto& m : moves) {
        AffineElt y = ctx.apply_move(m, comp[head]);
        if (y.len != w.len) continue;
        EltKey k = elt_key(y);
        if (seen.count(k)) continue;
        if (!pool.count(k))
          throw DomainError("length-preserving move leaves the enumerated scope");
        seen.insert(k);
        comp.push_back(std::move(y));
      }
    }
    std::sort(comp.begin(), comp.end());
    ZeroHeckeClass cls;
    cls.rep = comp.front();
    cls.len = w.len;
    cls.support = support_of(aw, comp);
    cls.members = std::move(comp);
    for (const AffineElt& x : cls.members) done.insert(elt_key(x));
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(), [](const ZeroHeckeClass& a, const ZeroHeckeClass& b) {
    if (a.len != b.len) return a.len < b.len;
    return a.rep < b.rep;
  });
  return out;
}

}  // namespace detail_zh

// Finite scope: the parahoric subgroup W_K with conjugation by its own
// generators. The twist must permute the walls of K.
inline std::vector<ZeroHeckeClass> zero_hecke_basis(const ConjCtx& ctx, const std::vector<int>& K) {
  const AffineWeyl& aw = ctx.aw();
  std::vector<AffineElt> kgens;
  std::set<AffineElt> kgen_set;
  for (int cli : K) {
    AffineElt e = aw.gen_elt(aw.gen_by_cli(cli));
    kgens.push_back(e);
    kgen_set.insert(e);
  }
  for (const AffineElt& g : kgens)
    if (!kgen_set.count(twist_apply(aw, ctx.delta(), g)))
      throw DomainError("twist does not stabilize the parahoric generators");

  std::vector<ConjCtx::Move> moves;
  std::vector<int> kpos;  // generator positions, as parahoric_subgroup expects
  for (int cli : K) {
    int pos = aw.gen_by_cli(cli);
    kpos.push_back(pos);
    const auto& g = aw.gens()[static_cast<size_t>(pos)];
    moves.push_back(ConjCtx::Move{g.elt, g.cli_index});
  }

  std::vector<AffineElt> elems = aw.parahoric_subgroup(kpos);
  std::set<EltKey> group;
  for (const AffineElt& w : elems) group.insert(elt_key(w));

  // twisted conjugacy classes within W_K, minimal-length members of each
  std::set<EltKey> done;
  std::vector<AffineElt> minimal;
  for (const AffineElt& w : elems) {
    if (done.count(elt_key(w))) continue;
    std::vector<AffineElt> cls{w};
    std::set<EltKey> seen{elt_key(w)};
    for (size_t head = 0; head < cls.size(); ++head) {
      for (const auto& m : moves) {
        AffineElt y = ctx.apply_move(m, cls[head]);
        EltKey k = elt_key(y);
        if (!group.count(k)) throw DomainError("conjugation move leaves the parahoric subgroup");
        if (seen.count(k)) continue;
        seen.insert(k);
        cls.push_back(std::move(y));
      }
    }
    Int min_len = cls.front().len;
    for (const AffineElt& x : cls) min_len = std::min(min_len, x.len);
    for (const AffineElt& x : cls) {
      done.insert(elt_key(x));
      if (x.len == min_len) minimal.push_back(x);
    }
  }
  return detail_zh::partition_minimal(ctx, minimal, moves);
}

// Affine scope: all classes whose minimal length is within the bound,
// restricted to the kappa classes covered by the length-zero conjugators
// (every class of a semisimple datum).
inline std::vector<ZeroHeckeClass> zero_hecke_basis(const ConjCtx& ctx, Int length_bound) {
  if (length_bound < 0) throw ResourceError("affine 0-Hecke scope needs a length bound");
  const AffineWeyl& aw = ctx.aw();
  std::vector<Vec> reps{Vec(static_cast<size_t>(aw.rd().dim), 0)};
  for (const AffineElt& tau : aw.omega_conjugators()) reps.push_back(tau.lam);
  std::vector<AffineElt> minimal;
  for (const AffineElt& w : aw.enumerate_by_length(length_bound, &reps))
    if (ctx.reduce_to_minimal(w).len == w.len) minimal.push_back(w);
  return detail_zh::partition_minimal(ctx, minimal, ctx.moves());
}

// ---- rigid basis ----

// Classes with zero Newton point, one MinimalClassKey each. The default
// length bound is the number of positive roots: a zero-Newton class has an
// elliptic minimal representative inside a proper parahoric, and no longest
// element of one is longer than that.
inline std::vector<MinimalClassKey> rigid_basis(const ConjCtx& ctx, Int length_bound = -1,
                                                const std::vector<Vec>* kappa_window = nullptr) {
  const AffineWeyl& aw = ctx.aw();
  const RootDatum& rd = aw.rd();
  if (length_bound < 0) length_bound = rd.n_pos;
  std::vector<Vec> reps;
  if (kappa_window) reps = *kappa_window;
  else {
    if (rd.x_basis.size() != rd.simple_roots.size())
      throw DomainError("rigid basis needs an explicit kappa window unless the datum is semisimple");
    reps.push_back(Vec(static_cast<size_t>(rd.dim), 0));
    for (const AffineElt& tau : aw.omega_conjugators()) reps.push_back(tau.lam);
  }
  std::set<MinimalClassKey> keys;
  for (const AffineElt& w : aw.enumerate_by_length(length_bound, &reps)) {
    if (!is_zero(ctx.raw_newton(w))) continue;
    AffineElt m = ctx.reduce_to_minimal(w);
    if (m.len > length_bound) continue;
    AffineElt c = ctx.canon_rep(m);
    keys.insert(MinimalClassKey{ctx.newton_kottwitz(c), c.len, elt_key(c)});
  }
  return std::vector<MinimalClassKey>(keys.begin(), keys.end());
}

}  // namespace awc
