#pragma once
// Shared plumbing: error types, exact arithmetic aliases, small integer
// linear algebra (Smith normal form, rational elimination), hashing.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace awc {

using Int = long long;
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;
using Vec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Exit codes: 0 ok, 2 parse, 3 domain, 4 resource.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
  static constexpr int exit_code = 2;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
  static constexpr int exit_code = 3;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
  static constexpr int exit_code = 4;
};

constexpr Int NEG_INFINITY = std::numeric_limits<Int>::min();

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
inline Vec operator*(Int c, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}
inline Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline Rat dot(const Vec& a, const QVec& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += Rat(BigInt(a[i])) * b[i];
  return s;
}
inline bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}
inline bool is_zero(const QVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == Rat(0); });
}

inline QVec to_q(const Vec& a) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = Rat(BigInt(a[i]));
  return r;
}
inline QVec qadd(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline QVec qsub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline QVec qscale(const Rat& c, const QVec& a) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}
inline Rat qdot(const QVec& a, const QVec& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// floor of a rational, exact.
inline BigInt rat_floor(const Rat& r) {
  BigInt q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r < Rat(0)) q -= 1;
  return q;
}
inline Int rat_floor_i(const Rat& r) { return static_cast<Int>(rat_floor(r)); }
inline bool rat_is_int(const Rat& r) { return r.denominator() == 1; }

inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}
inline std::string qvec_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_str(v[i]);
  }
  return s + ")";
}
inline std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

// FNV-1a over a little-endian byte view of an int64 sequence.
struct SeqHash {
  size_t operator()(const std::vector<Int>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (Int x : v) {
      uint64_t u = static_cast<uint64_t>(x);
      for (int b = 0; b < 8; ++b) {
        h ^= (u >> (8 * b)) & 0xff;
        h *= 1099511628211ull;
      }
    }
    return static_cast<size_t>(h);
  }
};

using ZMat = std::vector<std::vector<BigInt>>;

inline ZMat z_identity(size_t n) {
  ZMat m(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Smith normal form. U*A*V = D with U, V unimodular; diag holds the
// invariant factors d_1 | d_2 | ... (nonnegative, zeros trailing).
struct SmithNF {
  ZMat U, V;
  std::vector<BigInt> diag;
  size_t rank = 0;
};

inline SmithNF smith_normal_form(ZMat a) {
  const size_t m = a.size(), n = m ? a[0].size() : 0;
  SmithNF s;
  s.U = z_identity(m);
  s.V = z_identity(n);
  auto row_op = [&](size_t i, size_t j, const BigInt& c) {  // row_i -= c*row_j
    for (size_t k = 0; k < n; ++k) a[i][k] -= c * a[j][k];
    for (size_t k = 0; k < m; ++k) s.U[i][k] -= c * s.U[j][k];
  };
  auto col_op = [&](size_t i, size_t j, const BigInt& c) {  // col_i -= c*col_j
    for (size_t k = 0; k < m; ++k) a[k][i] -= c * a[k][j];
    for (size_t k = 0; k < n; ++k) s.V[k][i] -= c * s.V[k][j];
  };
  auto row_swap = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(s.U[i], s.U[j]);
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t k = 0; k < m; ++k) std::swap(a[k][i], a[k][j]);
    for (size_t k = 0; k < n; ++k) std::swap(s.V[k][i], s.V[k][j]);
  };
  auto row_neg = [&](size_t i) {
    for (size_t k = 0; k < n; ++k) a[i][k] = -a[i][k];
    for (size_t k = 0; k < m; ++k) s.U[i][k] = -s.U[i][k];
  };

  size_t t = 0;
  while (t < m && t < n) {
    // locate a nonzero pivot of smallest magnitude in the remaining block
    size_t pi = t, pj = t;
    BigInt best = 0;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (best == 0 || abs(a[i][j]) < best)) {
          best = abs(a[i][j]);
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < m; ++i)
        if (a[i][t] != 0) {
          BigInt q = a[i][t] / a[t][t];
          row_op(i, t, q);
          if (a[i][t] != 0) {
            row_swap(t, i);
            clean = false;
          }
        }
      for (size_t j = t + 1; j < n; ++j)
        if (a[t][j] != 0) {
          BigInt q = a[t][j] / a[t][t];
          col_op(j, t, q);
          if (a[t][j] != 0) {
            col_swap(t, j);
            clean = false;
          }
        }
    }
    if (a[t][t] < 0) row_neg(t);
    ++t;
  }
  s.rank = t;
  // enforce the divisibility chain d_i | d_{i+1}
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < s.rank; ++i) {
      if (a[i + 1][i + 1] % a[i][i] != 0) {
        // fold entry (i+1,i+1) into position (i,i) and redo the 2x2 block
        for (size_t k = 0; k < m; ++k) a[k][i] += a[k][i + 1];
        for (size_t k = 0; k < n; ++k) s.V[k][i] += s.V[k][i + 1];
        // clear with row/col ops
        BigInt g = 0;  // gcd via euclid on the 2x2 block
        while (a[i + 1][i] != 0) {
          BigInt q = a[i][i] / a[i + 1][i];
          row_op(i, i + 1, q);
          row_swap(i, i + 1);
        }
        (void)g;
        while (a[i][i + 1] != 0) {
          BigInt q = a[i][i + 1] / a[i][i];
          col_op(i + 1, i, q);
        }
        if (a[i][i] < 0) row_neg(i);
        if (a[i + 1][i + 1] < 0) row_neg(i + 1);
        changed = true;
      }
    }
  }
  s.diag.assign(std::min(m, n), 0);
  for (size_t i = 0; i < s.diag.size(); ++i) s.diag[i] = a[i][i];
  return s;
}

// Rational matrices: elimination, rank, kernel, solving.
using QMat = std::vector<std::vector<Rat>>;

inline size_t q_rank(QMat a) {
  size_t m = a.size(), n = m ? a[0].size() : 0, r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && a[p][c] == Rat(0)) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    for (size_t i = 0; i < m; ++i)
      if (i != r && a[i][c] != Rat(0)) {
        Rat f = a[i][c] / a[r][c];
        for (size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
      }
    ++r;
  }
  return r;
}

// Kernel basis of a (over ℚ), columns = variables.
inline std::vector<QVec> q_kernel(QMat a) {
  size_t m = a.size(), n = m ? a[0].size() : 0;
  std::vector<int> pivot_of_col(n, -1);
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && a[p][c] == Rat(0)) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    Rat pv = a[r][c];
    for (size_t j = 0; j < n; ++j) a[r][j] /= pv;
    for (size_t i = 0; i < m; ++i)
      if (i != r && a[i][c] != Rat(0)) {
        Rat f = a[i][c];
        for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
      }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  std::vector<QVec> basis;
  for (size_t c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    QVec v(n, Rat(0));
    v[c] = Rat(1);
    for (size_t j = 0; j < n; ++j)
      if (pivot_of_col[j] >= 0) v[j] = -a[static_cast<size_t>(pivot_of_col[j])][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve a x = b over ℚ; returns one solution if consistent.
inline std::optional<QVec> q_solve(QMat a, QVec b) {
  size_t m = a.size(), n = m ? a[0].size() : 0;
  for (size_t i = 0; i < m; ++i) a[i].push_back(b[i]);
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && a[p][c] == Rat(0)) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    Rat pv = a[r][c];
    for (size_t j = 0; j <= n; ++j) a[r][j] /= pv;
    for (size_t i = 0; i < m; ++i)
      if (i != r && a[i][c] != Rat(0)) {
        Rat f = a[i][c];
        for (size_t j = 0; j <= n; ++j) a[i][j] -= f * a[r][j];
      }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t i = r; i < m; ++i)
    if (a[i][n] != Rat(0)) return std::nullopt;
  QVec x(n, Rat(0));
  for (size_t i = 0; i < r; ++i) x[static_cast<size_t>(pivot_col[i])] = a[i][n];
  return x;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("integer overflow in polynomial arithmetic");
  return r;
}
inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("integer overflow in polynomial arithmetic");
  return r;
}

}  // namespace awc
