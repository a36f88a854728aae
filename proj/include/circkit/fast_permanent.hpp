#pragma once

#include <array>
#include <bit>
#include <chrono>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "circkit/circulant.hpp"
#include "circkit/errors.hpp"
#include "circkit/interpolate.hpp"
#include "circkit/mod_arith.hpp"
#include "circkit/poly.hpp"

namespace circkit {

/// Fraction-free determinant of an integer matrix: two-step Bareiss
/// elimination with row-swap sign tracking. Every intermediate entry is an
/// exact minor of the input.
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw contract_error("matrix must be square");
  if (n == 0) return 1;
  Int prev = 1, t;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
      int r = k + 1;
      while (r < n && m[static_cast<size_t>(r)][static_cast<size_t>(k)] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[static_cast<size_t>(k)], m[static_cast<size_t>(r)]);
      sign = -sign;
    }
    const auto& pivot_row = m[static_cast<size_t>(k)];
    for (int i = k + 1; i < n; ++i) {
      auto& row = m[static_cast<size_t>(i)];
      for (int j = k + 1; j < n; ++j) {
        t = row[static_cast<size_t>(j)] * pivot_row[static_cast<size_t>(k)] -
            row[static_cast<size_t>(k)] * pivot_row[static_cast<size_t>(j)];
        mpz_divexact(row[static_cast<size_t>(j)].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return sign * m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

/// Exact numeric determinant of Circ_(d;0,a,b) at an integer point, by CRT
/// over word-size primes p ≡ 1 (mod d): modulo such p the circulant
/// diagonalizes, det = prod_j (x + y w^(ja) + z w^(jb)) for a primitive
/// d-th root of unity w. Built once per point set; `coord_bound` must be
/// at least the largest absolute coordinate it will see.
class CirculantDetEvaluator {
 public:
  CirculantDetEvaluator(int d, int a, int b, const Int& coord_bound)
      : d_(d), a_(a), b_(b) {
    if (d < 1) throw contract_error("order must be positive");
    Int hadamard = 3 * coord_bound * coord_bound;  // row norm^2 bound
    Int bound;
    mpz_pow_ui(bound.get_mpz_t(), hadamard.get_mpz_t(),
               static_cast<unsigned long>((d + 1) / 2));
    primes_ = primes_one_mod(static_cast<u64>(d), 2 * bound + 1);
    wa_.reserve(primes_.size());
    wb_.reserve(primes_.size());
    prefix_.reserve(primes_.size());
    garner_inv_.reserve(primes_.size());
    Int prefix = 1;
    for (u64 p : primes_) {
      const u64 w = primitive_root_of_unity(p, static_cast<u64>(d));
      wa_.push_back(powmod(w, static_cast<u64>(a), p));
      wb_.push_back(powmod(w, static_cast<u64>(b), p));
      prefix_.push_back(prefix);
      garner_inv_.push_back(invmod(mpz_fdiv_ui(prefix.get_mpz_t(), p), p));
      prefix *= mpz_class(static_cast<unsigned long>(p));
    }
    modulus_ = prefix;
    half_modulus_ = modulus_ / 2;
  }

  Int eval(const Int& x, const Int& y, const Int& z) const {
    std::vector<u64> residues(primes_.size());
    for (size_t i = 0; i < primes_.size(); ++i) {
      const u64 p = primes_[i];
      residues[i] = residue(mpz_fdiv_ui(x.get_mpz_t(), p), mpz_fdiv_ui(y.get_mpz_t(), p),
                            mpz_fdiv_ui(z.get_mpz_t(), p), i);
    }
    return reconstruct(residues);
  }

  const Int& modulus() const { return modulus_; }
  size_t prime_count() const { return primes_.size(); }

 private:
  u64 residue(u64 xm, u64 ym, u64 zm, size_t i) const {
    const u64 p = primes_[i];
    u64 ra = 1, rb = 1, acc = 1 % p;
    for (int j = 0; j < d_ && acc != 0; ++j) {
      const u64 term = addmod(xm, addmod(mulmod(ym, ra, p), mulmod(zm, rb, p), p), p);
      acc = mulmod(acc, term, p);
      ra = mulmod(ra, wa_[i], p);
      rb = mulmod(rb, wb_[i], p);
    }
    return acc;
  }

  Int reconstruct(const std::vector<u64>& residues) const {
    Int x = static_cast<unsigned long>(residues[0] % primes_[0]);
    for (size_t i = 1; i < primes_.size(); ++i) {
      const u64 p = primes_[i];
      const u64 cur = mpz_fdiv_ui(x.get_mpz_t(), p);
      const u64 delta = addmod(residues[i] % p, p - cur, p);
      const u64 t = mulmod(delta, garner_inv_[i], p);
      x += prefix_[i] * mpz_class(static_cast<unsigned long>(t));
    }
    if (x > half_modulus_) x -= modulus_;
    return x;
  }

  int d_, a_, b_;
  std::vector<u64> primes_, wa_, wb_, garner_inv_;
  std::vector<Int> prefix_;
  Int modulus_, half_modulus_;
};

/// Single-point exact determinant of the three-line circulant.
inline Int circulant_det_value(int d, int a, int b, const Int& x, const Int& y, const Int& z) {
  Int cb = abs(x);
  if (abs(y) > cb) cb = abs(y);
  if (abs(z) > cb) cb = abs(z);
  if (cb == 0) return 0;  // the zero matrix, d >= 1
  return CirculantDetEvaluator(d, a, b, cb).eval(x, y, z);
}

enum class InterpPlan { Grid, Kronecker };

struct PlanInfo {
  std::string plan;
  long points = 0;
  long degree_bound = 0;   // of each univariate interpolation problem
  long nodes_per_problem = 0;
  std::string substitution;
  int threads = 1;
};

namespace detail {

inline void check_interp_args(int d, int a, int b) {
  if (d < 3) throw contract_error("need d >= 3");
  if (a < 1 || b <= a || b > d - 1) throw contract_error("need 1 <= a < b <= d-1");
}

inline void run_chunked(long n, int threads, const std::function<void(long, long)>& body) {
  if (threads <= 1 || n < 2 * threads) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(body, lo, hi);
  }
  for (auto& th : pool) th.join();
}

inline IntPolynomial assemble_three_line(int d, const std::vector<std::pair<std::pair<int, int>, Int>>& coeffs) {
  IntPolynomial out(3);
  for (const auto& [ab, c] : coeffs) {
    const auto [A, B] = ab;
    if (c == 0) continue;
    if (A + B > d) throw internal_error("interpolation produced an inhomogeneous term");
    out.add_term(ExponentVec{d - A - B, A, B}, c);
  }
  return out;
}

}  // namespace detail

/// Exact symbolic det(Circ_(d;0,a,b)) recovered from integer evaluations.
/// Valid for every (a,b), no coprimality needed.
///
/// Grid plan (default): normalize x = 1, evaluate on the (d+1) x (d+1)
/// lattice (y,z) in {0..d}^2 and interpolate one direction at a time; both
/// directions have degree bound d with d+1 nodes. O(d^2) evaluations.
///
/// Kronecker plan: x = 1, y = t, z = t^(d+1) maps (A,B) injectively to the
/// exponent A + (d+1)B, one univariate problem of degree d^2+d on the
/// d^2+d+1 nodes t = 0..d^2+d. The evaluations carry integers of size
/// t^(d(d+1)), so this plan is capped at d <= 20 and exists as an
/// independently checkable realization, not the fast path.
inline IntPolynomial det_poly_interpolate(int d, int a, int b,
                                          InterpPlan plan = InterpPlan::Grid,
                                          PlanInfo* info = nullptr, int threads = 1) {
  detail::check_interp_args(d, a, b);
  if (threads < 1) threads = 1;
  std::vector<std::pair<std::pair<int, int>, Int>> coeffs;

  if (plan == InterpPlan::Grid) {
    const long n = d + 1;
    CirculantDetEvaluator ev(d, a, b, Int(d));
    std::vector<std::vector<Int>> values(static_cast<size_t>(n),
                                         std::vector<Int>(static_cast<size_t>(n)));
    detail::run_chunked(n, threads, [&](long lo, long hi) {
      for (long u = lo; u < hi; ++u)
        for (long v = 0; v < n; ++v)
          values[static_cast<size_t>(u)][static_cast<size_t>(v)] =
              ev.eval(Int(1), Int(u), Int(v));
    });
    ConsecutiveInterpolator interp(d);
    // First pass: for fixed y = u, coefficients in z.
    std::vector<std::vector<Int>> zcoeffs(static_cast<size_t>(n));
    detail::run_chunked(n, threads, [&](long lo, long hi) {
      for (long u = lo; u < hi; ++u)
        zcoeffs[static_cast<size_t>(u)] =
            interp.coefficients(std::move(values[static_cast<size_t>(u)]));
    });
    // Second pass: for fixed z-exponent B, coefficients in y.
    std::vector<std::vector<Int>> ycoeffs(static_cast<size_t>(n));
    detail::run_chunked(n, threads, [&](long lo, long hi) {
      std::vector<Int> slice(static_cast<size_t>(n));
      for (long B = lo; B < hi; ++B) {
        for (long u = 0; u < n; ++u)
          slice[static_cast<size_t>(u)] = zcoeffs[static_cast<size_t>(u)][static_cast<size_t>(B)];
        ycoeffs[static_cast<size_t>(B)] = interp.coefficients(slice);
      }
    });
    for (int B = 0; B <= d; ++B)
      for (int A = 0; A <= d; ++A)
        if (ycoeffs[static_cast<size_t>(B)][static_cast<size_t>(A)] != 0)
          coeffs.push_back({{A, B}, ycoeffs[static_cast<size_t>(B)][static_cast<size_t>(A)]});
    if (info) {
      info->plan = "grid";
      info->points = n * n;
      info->degree_bound = d;
      info->nodes_per_problem = n;
      info->substitution = "x=1; (y,z) on {0..d}^2";
      info->threads = threads;
    }
  } else {
    if (d > 20)
      throw resource_limit_error("kronecker plan capped at d <= 20; use the grid plan");
    const long nbig = static_cast<long>(d) * d + d;  // degree bound
    Int tmax(nbig), zmax;
    mpz_pow_ui(zmax.get_mpz_t(), tmax.get_mpz_t(), static_cast<unsigned long>(d + 1));
    CirculantDetEvaluator ev(d, a, b, zmax);
    std::vector<Int> values(static_cast<size_t>(nbig) + 1);
    detail::run_chunked(nbig + 1, threads, [&](long lo, long hi) {
      Int z;
      for (long t = lo; t < hi; ++t) {
        mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(t),
                      static_cast<unsigned long>(d + 1));
        values[static_cast<size_t>(t)] = ev.eval(Int(1), Int(t), z);
      }
    });
    auto univ = interpolate_consecutive(std::move(values));
    for (long m = 0; m <= nbig; ++m) {
      if (univ[static_cast<size_t>(m)] == 0) continue;
      const auto ab = kronecker_unpack(m, d + 1);
      coeffs.push_back({{ab[0], ab[1]}, univ[static_cast<size_t>(m)]});
    }
    if (info) {
      info->plan = "kronecker";
      info->points = nbig + 1;
      info->degree_bound = nbig;
      info->nodes_per_problem = nbig + 1;
      info->substitution = "x=1; y=t; z=t^(d+1); t on {0..d^2+d}";
      info->threads = threads;
    }
  }
  return detail::assemble_three_line(d, coeffs);
}

/// Permanent coefficients are the absolute determinant coefficients when
/// GCD(a,b,d) = 1; refuses otherwise (the relation genuinely fails there).
inline IntPolynomial per_poly_from_det(int d, int a, int b,
                                       InterpPlan plan = InterpPlan::Grid, int threads = 1) {
  detail::check_interp_args(d, a, b);
  const long g = std::gcd(std::gcd(static_cast<long>(a), static_cast<long>(b)),
                          static_cast<long>(d));
  if (g != 1)
    throw hypothesis_error("GCD(a,b,d) = " + std::to_string(g) +
                           " != 1: permanent-from-determinant does not apply");
  return termwise_abs(det_poly_interpolate(d, a, b, plan, nullptr, threads));
}

/// Ryser's inclusion-exclusion permanent, Gray-code subset order with
/// incremental row sums: O(2^n * n) big-integer operations. The exponential
/// baseline; refuses orders above `max_order`.
inline Int ryser_permanent(const std::vector<std::vector<Int>>& m, int max_order = 20) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw contract_error("matrix must be square");
  if (n == 0) return 1;
  if (n > max_order)
    throw resource_limit_error("ryser refused for order " + std::to_string(n) + " > bound " +
                               std::to_string(max_order));
  std::vector<Int> rowsum(static_cast<size_t>(n), Int(0));
  Int total = 0, prod;
  u64 gray = 0;
  const u64 end = u64(1) << n;
  for (u64 k = 1; k < end; ++k) {
    const int j = std::countr_zero(k);
    const u64 bit = u64(1) << j;
    gray ^= bit;
    if (gray & bit)
      for (int i = 0; i < n; ++i) rowsum[static_cast<size_t>(i)] += m[static_cast<size_t>(i)][static_cast<size_t>(j)];
    else
      for (int i = 0; i < n; ++i) rowsum[static_cast<size_t>(i)] -= m[static_cast<size_t>(i)][static_cast<size_t>(j)];
    prod = rowsum[0];
    for (int i = 1; i < n && prod != 0; ++i) prod *= rowsum[static_cast<size_t>(i)];
    if (k & 1)
      total -= prod;  // odd subset size
    else
      total += prod;
  }
  return (n % 2) ? -total : total;
}

enum class PermanentMethod { Ryser, Interp };

/// Exact permanent of the numeric specialization Circ_(d;0,a,b)(x,y,z).
inline Int per_eval(int d, int a, int b, const std::array<Int, 3>& point,
                    PermanentMethod method, int ryser_bound = 20, int threads = 1) {
  detail::check_interp_args(d, a, b);
  if (method == PermanentMethod::Ryser) {
    CirculantSpec spec(d, {0, a, b});
    return ryser_permanent(circulant_matrix_at(spec, {point[0], point[1], point[2]}),
                           ryser_bound);
  }
  return eval(per_poly_from_det(d, a, b, InterpPlan::Grid, threads),
              {point[0], point[1], point[2]});
}

struct BenchCell {
  int d = 0, a = 0, b = 0;
  std::string method;
  double wall_ms = 0.0;
  std::string agrees;  // "true" | "false" | "na" | "skipped"
};

/// Times each requested method on per(Circ_(d;0,a,b)) at (1,1,1) and marks
/// cross-method agreement. Infeasible cells (ryser above its bound, interp
/// without the coprimality hypothesis) are marked skipped.
inline std::vector<BenchCell> bench_matrix(const std::vector<std::array<int, 3>>& grid,
                                           const std::vector<PermanentMethod>& methods,
                                           int ryser_bound = 20, int threads = 1) {
  std::vector<BenchCell> out;
  const std::array<Int, 3> ones = {Int(1), Int(1), Int(1)};
  for (const auto& cell : grid) {
    const auto [d, a, b] = cell;
    std::vector<size_t> computed;
    std::vector<Int> results;
    for (PermanentMethod m : methods) {
      BenchCell bc;
      bc.d = d;
      bc.a = a;
      bc.b = b;
      bc.method = (m == PermanentMethod::Ryser) ? "ryser" : "interp";
      const bool feasible =
          (m == PermanentMethod::Ryser)
              ? d <= ryser_bound
              : std::gcd(std::gcd(static_cast<long>(a), static_cast<long>(b)),
                         static_cast<long>(d)) == 1;
      if (!feasible) {
        bc.agrees = "skipped";
        out.push_back(std::move(bc));
        continue;
      }
      const auto t0 = std::chrono::steady_clock::now();
      Int v = per_eval(d, a, b, ones, m, ryser_bound, threads);
      const auto t1 = std::chrono::steady_clock::now();
      bc.wall_ms = std::max(
          std::chrono::duration<double, std::milli>(t1 - t0).count(), 1e-6);
      computed.push_back(out.size());
      results.push_back(std::move(v));
      out.push_back(std::move(bc));
    }
    std::string verdict = "na";
    if (results.size() >= 2) {
      verdict = "true";
      for (size_t i = 1; i < results.size(); ++i)
        if (results[i] != results[0]) verdict = "false";
    }
    for (size_t idx : computed) out[idx].agrees = verdict;
  }
  return out;
}

}  // namespace circkit
