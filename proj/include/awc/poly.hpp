#pragma once
// Univariate integer polynomials in q, plus a small multivariate variant
// for unequal Hecke parameters.

#include <map>
#include <string>
#include <vector>

#include "awc/common.hpp"

namespace awc {

// Polynomial in ℤ[q]. The zero polynomial has degree NEG_INFINITY and,
// by the working convention used throughout the dimension formulas,
// leading coefficient 1.
class PolyZq {
 public:
  PolyZq() = default;
  explicit PolyZq(Int c) {
    if (c != 0) coeffs_.push_back(c);
  }
  explicit PolyZq(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static PolyZq q_power(Int k, Int c = 1) {
    if (c == 0) return PolyZq{};
    if (k < 0) throw DomainError("negative q-power");
    std::vector<Int> v(static_cast<size_t>(k) + 1, 0);
    v.back() = c;
    return PolyZq(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  Int degree() const { return coeffs_.empty() ? NEG_INFINITY : static_cast<Int>(coeffs_.size()) - 1; }
  Int leading_coeff() const { return coeffs_.empty() ? 1 : coeffs_.back(); }
  Int coeff(Int k) const {
    if (k < 0 || k >= static_cast<Int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<size_t>(k)];
  }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  PolyZq& operator+=(const PolyZq& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = checked_add(coeffs_[i], o.coeffs_[i]);
    trim();
    return *this;
  }
  PolyZq& operator-=(const PolyZq& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = checked_add(coeffs_[i], -o.coeffs_[i]);
    trim();
    return *this;
  }
  friend PolyZq operator+(PolyZq a, const PolyZq& b) { return a += b; }
  friend PolyZq operator-(PolyZq a, const PolyZq& b) { return a -= b; }
  friend PolyZq operator*(const PolyZq& a, const PolyZq& b) {
    if (a.is_zero() || b.is_zero()) return PolyZq{};
    std::vector<Int> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        r[i + j] = checked_add(r[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
    return PolyZq(std::move(r));
  }
  friend bool operator==(const PolyZq& a, const PolyZq& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const PolyZq& a, const PolyZq& b) { return !(a == b); }

  BigInt eval(const BigInt& q) const {
    BigInt s = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) s = s * q + coeffs_[i];
    return s;
  }
  BigInt at_one() const { return eval(1); }

  // Coefficients in the basis (q-1)^k, k = 0..deg. Exact, by repeated
  // division: p(q) = sum c_k (q-1)^k  with  c_k = p_k(1), p_{k+1} = (p_k - c_k)/(q-1).
  std::vector<BigInt> q_minus_one_coeffs() const {
    std::vector<BigInt> out;
    std::vector<BigInt> cur(coeffs_.begin(), coeffs_.end());
    while (!cur.empty()) {
      BigInt at1 = 0;
      for (size_t i = cur.size(); i-- > 0;) at1 += cur[i];
      out.push_back(at1);
      // divide (cur - at1) by (q-1) synthetically at root 1
      std::vector<BigInt> nxt(cur.size() ? cur.size() - 1 : 0, 0);
      BigInt carry = 0;
      for (size_t i = cur.size(); i-- > 1;) {
        carry += cur[i];
        nxt[i - 1] = carry;
      }
      cur = std::move(nxt);
      while (!cur.empty() && cur.back() == 0) cur.pop_back();
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  }
  bool q_minus_one_nonneg() const {
    for (const BigInt& c : q_minus_one_coeffs())
      if (c < 0) return false;
    return true;
  }

  std::string str(const std::string& var = "q") const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (size_t i = coeffs_.size(); i-- > 0;) {
      Int c = coeffs_[i];
      if (c == 0) continue;
      if (!s.empty()) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      Int a = c < 0 ? -c : c;
      if (i == 0) s += std::to_string(a);
      else {
        if (a != 1) s += std::to_string(a) + "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Int> coeffs_;
};

// Sparse multivariate polynomial over ℤ with named variables; printing in
// graded lex order. Used for unequal-parameter character tables.
class MPoly {
 public:
  using Expo = std::vector<int>;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MPoly constant(std::vector<std::string> vars, BigInt c) {
    MPoly p(std::move(vars));
    if (c != 0) p.terms_[Expo(p.vars_.size(), 0)] = std::move(c);
    return p;
  }
  static MPoly var(std::vector<std::string> vars, size_t idx, int pow = 1, BigInt c = 1) {
    MPoly p(std::move(vars));
    if (c != 0) {
      Expo e(p.vars_.size(), 0);
      e[idx] = pow;
      p.terms_[std::move(e)] = std::move(c);
    }
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Expo, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) terms_[e] = c;
      else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) terms_[e] = -c;
      else {
        it->second -= c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Expo e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        BigInt c = ca * cb;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) r.terms_[std::move(e)] = std::move(c);
        else {
          it->second += c;
          if (it->second == 0) r.terms_.erase(it);
        }
      }
    return r;
  }
  MPoly operator-() const {
    MPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  // Substitute ring elements for the variables. Ring needs +, *, and
  // construction from BigInt via the supplied functor.
  template <class Ring, class FromBig>
  Ring eval(const std::vector<Ring>& vals, FromBig from) const {
    Ring acc = from(BigInt(0));
    for (const auto& [e, c] : terms_) {
      Ring t = from(c);
      for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) t = t * vals[i];
      acc = acc + t;
    }
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    // graded lex: total degree desc, then lex desc
    std::vector<std::pair<Expo, BigInt>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
      int da = 0, db = 0;
      for (int x : a.first) da += x;
      for (int x : b.first) db += x;
      if (da != db) return da > db;
      return a.first > b.first;
    });
    std::string s;
    for (const auto& [e, c] : ts) {
      bool neg = c < 0;
      BigInt a = neg ? BigInt(-c) : c;
      if (s.empty()) s += neg ? "-" : "";
      else s += neg ? " - " : " + ";
      std::string mono;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) s += a.str();
      else {
        if (a != 1) s += a.str() + "*";
        s += mono;
      }
    }
    return s;
  }

 private:
  std::vector<std::string> vars_;
  std::map<Expo, BigInt> terms_;
};

}  // namespace awc
