#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "circkit/errors.hpp"

namespace circkit {

using Int = mpz_class;
using Rat = mpq_class;

/// Exponent vector of a monomial; entry t is the exponent of variable t.
using ExponentVec = std::vector<int>;

inline long total_degree(const ExponentVec& e) {
  return std::accumulate(e.begin(), e.end(), 0L);
}

/// Term order: graded lex with variable 0 > variable 1 > ... Iteration of a
/// polynomial's term map runs from the leading term down, so serialization
/// is deterministic.
struct GrlexDescLess {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const {
    const long da = total_degree(a);
    const long db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Sparse polynomial with arbitrary-precision integer coefficients.
/// Invariants: no stored coefficient is zero; every exponent vector has
/// length nvars() and nonnegative entries.
class IntPolynomial {
 public:
  using TermMap = std::map<ExponentVec, Int, GrlexDescLess>;

  explicit IntPolynomial(int nvars) : nvars_(nvars) {
    if (nvars <= 0) throw contract_error("polynomial needs at least one variable");
  }

  static IntPolynomial zero(int nvars) { return IntPolynomial(nvars); }

  static IntPolynomial constant(int nvars, const Int& c) {
    IntPolynomial p(nvars);
    p.add_term(ExponentVec(static_cast<size_t>(nvars), 0), c);
    return p;
  }

  static IntPolynomial monomial(const ExponentVec& exps, const Int& c) {
    IntPolynomial p(static_cast<int>(exps.size()));
    p.add_term(exps, c);
    return p;
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }

  /// Degree of the zero polynomial is -1.
  long degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  bool is_homogeneous(long* deg = nullptr) const {
    long d = degree();
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return false;
    if (deg) *deg = d;
    return true;
  }

  Int coeff(const ExponentVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
  }

  /// Accumulates c onto the coefficient of exps, dropping the term if the
  /// result is zero.
  void add_term(const ExponentVec& exps, const Int& c) {
    check_exps(exps);
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(exps, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  IntPolynomial operator-() const {
    IntPolynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  IntPolynomial& operator+=(const IntPolynomial& q) {
    check_arity(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }

  IntPolynomial& operator-=(const IntPolynomial& q) {
    check_arity(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial p, const IntPolynomial& q) { return p += q; }
  friend IntPolynomial operator-(IntPolynomial p, const IntPolynomial& q) { return p -= q; }

  friend IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q) {
    p.check_arity(q);
    IntPolynomial r(p.nvars_);
    ExponentVec e(static_cast<size_t>(p.nvars_));
    for (const auto& [ep, cp] : p.terms_) {
      for (const auto& [eq, cq] : q.terms_) {
        for (size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
        r.add_term(e, cp * cq);
      }
    }
    return r;
  }

  bool operator==(const IntPolynomial& q) const {
    return nvars_ == q.nvars_ && terms_ == q.terms_;
  }
  bool operator!=(const IntPolynomial& q) const { return !(*this == q); }

 private:
  void check_arity(const IntPolynomial& q) const {
    if (nvars_ != q.nvars_)
      throw contract_error("polynomial arity mismatch: " + std::to_string(nvars_) +
                           " vs " + std::to_string(q.nvars_));
  }
  void check_exps(const ExponentVec& e) const {
    if (static_cast<int>(e.size()) != nvars_)
      throw contract_error("exponent vector length " + std::to_string(e.size()) +
                           " does not match arity " + std::to_string(nvars_));
    for (int x : e)
      if (x < 0) throw contract_error("negative exponent");
  }

  int nvars_;
  TermMap terms_;
};

inline IntPolynomial add(const IntPolynomial& p, const IntPolynomial& q) { return p + q; }
inline IntPolynomial mul(const IntPolynomial& p, const IntPolynomial& q) { return p * q; }

/// Exact quotient p/q over the integers. Throws divisibility_error when q
/// does not divide p (including non-divisibility of a single coefficient).
inline IntPolynomial exact_divide(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.nvars() != q.nvars()) throw contract_error("polynomial arity mismatch in division");
  if (q.is_zero()) throw divisibility_error("division by the zero polynomial");
  IntPolynomial rem = p;
  IntPolynomial quot(p.nvars());
  const auto& qlead = *q.terms().begin();
  ExponentVec e(static_cast<size_t>(p.nvars()));
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().begin();
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] = rlead.first[i] - qlead.first[i];
      if (e[i] < 0) throw divisibility_error("inexact polynomial division (monomial)");
    }
    Int c, r;
    mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(), rlead.second.get_mpz_t(),
                qlead.second.get_mpz_t());
    if (r != 0) throw divisibility_error("inexact polynomial division (coefficient)");
    IntPolynomial t = IntPolynomial::monomial(e, c);
    quot += t;
    rem -= t * q;
  }
  return quot;
}

/// Exact evaluation at an integer point.
inline Int eval(const IntPolynomial& p, const std::vector<Int>& point) {
  if (static_cast<int>(point.size()) != p.nvars())
    throw contract_error("evaluation point arity mismatch");
  // Per-variable power tables; exponents are small.
  std::vector<std::vector<Int>> pows(point.size());
  for (size_t i = 0; i < point.size(); ++i) pows[i] = {Int(1)};
  Int acc = 0, term;
  for (const auto& [e, c] : p.terms()) {
    term = c;
    for (size_t i = 0; i < point.size(); ++i) {
      auto& pw = pows[i];
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * point[i]);
      term *= pw[static_cast<size_t>(e[i])];
    }
    acc += term;
  }
  return acc;
}

/// Termwise absolute value.
inline IntPolynomial termwise_abs(const IntPolynomial& p) {
  IntPolynomial r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, abs(c));
  return r;
}

/// Packs a bivariate exponent pair into a single exponent: A + base*B.
/// Injective on {(A,B) : 0 <= A < base}.
inline long kronecker_pack(int A, int B, long base) {
  if (A < 0 || B < 0 || base <= A)
    throw contract_error("kronecker_pack requires 0 <= A < base and B >= 0");
  return static_cast<long>(A) + base * static_cast<long>(B);
}

inline long kronecker_pack(const ExponentVec& e, long base) {
  if (e.size() != 2) throw contract_error("kronecker_pack expects an (A,B) pair");
  return kronecker_pack(e[0], e[1], base);
}

inline ExponentVec kronecker_unpack(long packed, long base) {
  if (packed < 0 || base <= 0) throw contract_error("kronecker_unpack: bad input");
  return ExponentVec{static_cast<int>(packed % base), static_cast<int>(packed / base)};
}

/// Human-readable rendering, leading term first: "x^3 - 3*x*y*z + ...".
inline std::string poly_to_string(const IntPolynomial& p,
                                  const std::vector<std::string>& names = {}) {
  if (p.is_zero()) return "0";
  std::vector<std::string> vn = names;
  if (vn.empty()) {
    static const char* defaults[] = {"x", "y", "z", "u", "v", "w"};
    for (int i = 0; i < p.nvars(); ++i)
      vn.push_back(i < 6 ? defaults[i] : "x" + std::to_string(i));
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Int mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (mag != 1 || total_degree(e) == 0) {
      os << mag.get_str();
      printed = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << vn[i];
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) {
  return os << poly_to_string(p);
}

}  // namespace circkit
