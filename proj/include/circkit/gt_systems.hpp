#pragma once

#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circkit/errors.hpp"
#include "circkit/fast_permanent.hpp"
#include "circkit/poly.hpp"

namespace circkit {

/// All degree-d monomials x^alpha y^beta z^gamma fixed by the diagonal
/// weight-(0,a,b) action of Z/dZ: alpha+beta+gamma = d and
/// a*beta + b*gamma ≡ 0 (mod d). Canonical (graded-lex descending) order.
inline std::vector<ExponentVec> invariant_monomials(int d, int a, int b) {
  if (d < 3) throw contract_error("need d >= 3");
  if (a < 1 || b <= a || b > d - 1) throw contract_error("need 1 <= a < b <= d-1");
  std::vector<ExponentVec> gens;
  for (int beta = 0; beta <= d; ++beta)
    for (int gamma = 0; beta + gamma <= d; ++gamma)
      if ((static_cast<long>(a) * beta + static_cast<long>(b) * gamma) % d == 0)
        gens.push_back(ExponentVec{d - beta - gamma, beta, gamma});
  std::sort(gens.begin(), gens.end(), GrlexDescLess{});
  return gens;
}

/// mu(I) <= d+1, the generator-count condition of a Togliatti system.
inline bool check_generator_bound(int d, int a, int b, long* mu_out = nullptr) {
  const long mu = static_cast<long>(invariant_monomials(d, a, b).size());
  if (mu_out) *mu_out = mu;
  return mu <= d + 1;
}

/// The invariant form of degree d reached through integer arithmetic only:
/// it coincides with det(Circ_(d;0,a,b)), so no root of unity is ever
/// materialized.
inline IntPolynomial reynolds_form(int d, int a, int b, int threads = 1) {
  return det_poly_interpolate(d, a, b, InterpPlan::Grid, nullptr, threads);
}

namespace detail {

/// Rank over Z (equivalently over Q) by fraction-free Bareiss elimination
/// with full pivoting.
inline long integer_rank(std::vector<std::vector<Int>> m) {
  if (m.empty() || m[0].empty()) return 0;
  const long rows = static_cast<long>(m.size());
  const long cols = static_cast<long>(m[0].size());
  Int prev = 1, t;
  long r = 0;
  while (r < rows && r < cols) {
    long pi = -1, pj = -1;
    for (long i = r; i < rows && pi < 0; ++i)
      for (long j = r; j < cols; ++j)
        if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(pi)]);
    if (pj != r)
      for (long i = 0; i < rows; ++i)
        std::swap(m[static_cast<size_t>(i)][static_cast<size_t>(r)],
                  m[static_cast<size_t>(i)][static_cast<size_t>(pj)]);
    for (long i = r + 1; i < rows; ++i)
      for (long j = r + 1; j < cols; ++j) {
        t = m[static_cast<size_t>(i)][static_cast<size_t>(j)] * m[static_cast<size_t>(r)][static_cast<size_t>(r)] -
            m[static_cast<size_t>(i)][static_cast<size_t>(r)] * m[static_cast<size_t>(r)][static_cast<size_t>(j)];
        mpz_divexact(m[static_cast<size_t>(i)][static_cast<size_t>(j)].get_mpz_t(), t.get_mpz_t(),
                     prev.get_mpz_t());
      }
    prev = m[static_cast<size_t>(r)][static_cast<size_t>(r)];
    ++r;
  }
  return r;
}

inline std::vector<ExponentVec> monomials_of_degree(int deg) {
  std::vector<ExponentVec> out;
  for (int i = deg; i >= 0; --i)
    for (int j = deg - i; j >= 0; --j) out.push_back(ExponentVec{i, j, deg - i - j});
  std::sort(out.begin(), out.end(), GrlexDescLess{});
  return out;
}

}  // namespace detail

/// Dimension of ker( x(x+y+z) : R_(d-1) -> (R/I)_d ) where I is generated by
/// the invariant monomials: build the multiplication matrix with the
/// invariant coordinates of R_d deleted and subtract its exact rank from
/// dim R_(d-1) = d(d+1)/2.
inline long wlp_kernel_dim(int d, int a, int b) {
  const auto invariants = invariant_monomials(d, a, b);
  const std::set<ExponentVec> invariant_set(invariants.begin(), invariants.end());

  const auto domain = detail::monomials_of_degree(d - 1);
  std::vector<ExponentVec> codomain;
  std::map<ExponentVec, long> codomain_index;
  for (const auto& mono : detail::monomials_of_degree(d))
    if (!invariant_set.count(mono)) {
      codomain_index[mono] = static_cast<long>(codomain.size());
      codomain.push_back(mono);
    }

  std::vector<std::vector<Int>> mat(codomain.size(),
                                    std::vector<Int>(domain.size(), Int(0)));
  ExponentVec img(3);
  for (size_t c = 0; c < domain.size(); ++c) {
    for (int v = 0; v < 3; ++v) {
      img = domain[c];
      ++img[static_cast<size_t>(v)];
      auto it = codomain_index.find(img);
      if (it != codomain_index.end()) mat[static_cast<size_t>(it->second)][c] = 1;
    }
  }
  return static_cast<long>(domain.size()) - detail::integer_rank(std::move(mat));
}

struct GTSystemReport {
  int d = 0, a = 0, b = 0;
  std::string mode;  // "gt-certificate" (GCD = 1) or "support-coverage-check"
  std::vector<ExponentVec> generators;
  long mu = 0;
  bool togliatti_bound_ok = false;
  long kernel_dim = 0;
  bool minimal = false;
  std::vector<ExponentVec> missing_witnesses;
};

/// Minimality through determinant support: the system is minimal exactly
/// when every invariant monomial carries a nonzero coefficient in the
/// invariant form. With GCD(a,b,d) != 1 the cyclic action is not faithful,
/// so the report runs as a raw support-coverage check and claims no
/// Togliatti status.
inline GTSystemReport minimality_certificate(int d, int a, int b, int threads = 1) {
  GTSystemReport rep;
  rep.d = d;
  rep.a = a;
  rep.b = b;
  const long g = std::gcd(std::gcd(static_cast<long>(a), static_cast<long>(b)),
                          static_cast<long>(d));
  rep.mode = (g == 1) ? "gt-certificate" : "support-coverage-check";
  rep.generators = invariant_monomials(d, a, b);
  rep.mu = static_cast<long>(rep.generators.size());
  rep.togliatti_bound_ok = rep.mu <= d + 1;
  rep.kernel_dim = wlp_kernel_dim(d, a, b);
  const IntPolynomial form = reynolds_form(d, a, b, threads);
  for (const auto& mono : rep.generators)
    if (form.coeff(mono) == 0) rep.missing_witnesses.push_back(mono);
  rep.minimal = rep.missing_witnesses.empty();
  return rep;
}

}  // namespace circkit
