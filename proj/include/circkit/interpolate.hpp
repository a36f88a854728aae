#pragma once

#include <utility>
#include <vector>

#include "circkit/errors.hpp"
#include "circkit/poly.hpp"

namespace circkit {

/// Exact univariate interpolation on the consecutive integer nodes
/// t = 0, 1, ..., N. Values are forward-differenced in place, giving the
/// Newton coefficients in the binomial basis C(t,j); those are converted to
/// the monomial basis through falling-factorial expansions, scaled by N! so
/// every intermediate stays an integer. A non-integer final coefficient
/// throws internal_error: it means the data did not come from an integer
/// polynomial of degree <= N.
///
/// Building the object costs O(N^2) bigint operations; it is meant to be
/// reused across many value vectors on the same node set.
class ConsecutiveInterpolator {
 public:
  explicit ConsecutiveInterpolator(int n_max_degree) : n_(n_max_degree) {
    if (n_ < 0) throw contract_error("negative interpolation degree");
    // scaled_rows_[j][m] = s1(j,m) * N!/j!, where s1 is the signed Stirling
    // number of the first kind: t(t-1)...(t-j+1) = sum_m s1(j,m) t^m.
    nfact_ = 1;
    for (int i = 2; i <= n_; ++i) nfact_ *= i;
    std::vector<Int> row = {Int(1)};  // s1 row for j = 0
    Int fact_ratio = nfact_;          // N!/j!
    scaled_rows_.reserve(static_cast<size_t>(n_) + 1);
    scaled_rows_.push_back({fact_ratio});
    for (int j = 1; j <= n_; ++j) {
      std::vector<Int> next(static_cast<size_t>(j) + 1);
      for (int m = 0; m <= j; ++m) {
        if (m > 0) next[static_cast<size_t>(m)] = row[static_cast<size_t>(m - 1)];
        if (m < j) next[static_cast<size_t>(m)] -= (j - 1) * row[static_cast<size_t>(m)];
      }
      row = std::move(next);
      mpz_divexact_ui(fact_ratio.get_mpz_t(), fact_ratio.get_mpz_t(),
                      static_cast<unsigned long>(j));
      std::vector<Int> scaled(row.size());
      for (size_t m = 0; m < row.size(); ++m) scaled[m] = row[m] * fact_ratio;
      scaled_rows_.push_back(std::move(scaled));
    }
  }

  int degree_bound() const { return n_; }
  int node_count() const { return n_ + 1; }

  /// values[t] = P(t) for t = 0..N; returns monomial coefficients c[0..N].
  std::vector<Int> coefficients(std::vector<Int> values) const {
    if (static_cast<int>(values.size()) != n_ + 1)
      throw contract_error("interpolation needs exactly degree_bound()+1 values");
    // In-place forward differences: values[j] becomes Delta^j v_0.
    for (int j = 1; j <= n_; ++j)
      for (int i = n_; i >= j; --i)
        values[static_cast<size_t>(i)] -= values[static_cast<size_t>(i - 1)];
    std::vector<Int> scaled(static_cast<size_t>(n_) + 1, Int(0));
    for (int j = 0; j <= n_; ++j) {
      const Int& dj = values[static_cast<size_t>(j)];
      if (dj == 0) continue;
      const auto& grow = scaled_rows_[static_cast<size_t>(j)];
      for (size_t m = 0; m < grow.size(); ++m) scaled[m] += dj * grow[m];
    }
    std::vector<Int> coeffs(static_cast<size_t>(n_) + 1);
    for (size_t m = 0; m < coeffs.size(); ++m) {
      if (!mpz_divisible_p(scaled[m].get_mpz_t(), nfact_.get_mpz_t()))
        throw internal_error("interpolation produced a non-integer coefficient");
      mpz_divexact(coeffs[m].get_mpz_t(), scaled[m].get_mpz_t(), nfact_.get_mpz_t());
    }
    return coeffs;
  }

 private:
  int n_;
  Int nfact_;
  std::vector<std::vector<Int>> scaled_rows_;
};

inline std::vector<Int> interpolate_consecutive(std::vector<Int> values) {
  if (values.empty()) throw contract_error("no interpolation values");
  ConsecutiveInterpolator interp(static_cast<int>(values.size()) - 1);
  return interp.coefficients(std::move(values));
}

}  // namespace circkit
