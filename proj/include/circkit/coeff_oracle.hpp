#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "circkit/errors.hpp"
#include "circkit/poly.hpp"

namespace circkit {

/// Coefficient theory for det(Circ_(d;0,a,b)) under GCD(a,b,d) = 1: the
/// coefficient of x^(d-A-B) y^A z^B is nonzero exactly when d | (aA + bB);
/// its sign follows a parity rule in k = GCD(A,B,l) and A+B-1, and its
/// magnitude counts permutations made of k cycles of length (A+B)/k, each
/// using A/k forward steps of a and B/k of b. The permanent coefficient is
/// the same number without the sign.
struct CoefficientReport {
  int d = 0, a = 0, b = 0;
  int A = 0, B = 0;
  bool nonzero = false;
  int sign = +1;        // meaningful only when nonzero
  Int magnitude{0};
  Int value{0};         // sign * magnitude
  long k = -1;          // GCD(A, B, ell); -1 when the coefficient is zero
  long ell = -1;        // (aA + bB)/d;    -1 when not an integer
  bool zero_pair_convention = false;  // (A,B) = (0,0) handled by convention
};

namespace detail {

inline long gcd3(long x, long y, long z) { return std::gcd(std::gcd(x, y), z); }

inline void check_three_line(int d, int a, int b) {
  if (d < 3) throw contract_error("need d >= 3");
  if (a < 1 || b <= a || b > d - 1) throw contract_error("need 1 <= a < b <= d-1");
}

inline void require_coprime(int d, int a, int b) {
  long g = gcd3(a, b, d);
  if (g != 1)
    throw hypothesis_error("GCD(a,b,d) = " + std::to_string(g) +
                           " != 1: coefficient theory does not apply; use step enumeration");
}

inline void check_exponents(int d, int A, int B) {
  if (A < 0 || B < 0 || A + B > d)
    throw contract_error("need A, B >= 0 with A + B <= d");
}

// Counts permutations of {0..d-1} with exactly k nontrivial cycles, each
// consisting of a_per a-steps and b_per b-steps. Cycles are generated in
// canonical form: ordered by their smallest element and walked from it, so
// no permutation is counted twice.
inline Int count_canonical_cycle_perms(int d, int a, int b, int k, int a_per, int b_per) {
  std::vector<char> covered(static_cast<size_t>(d), 0);
  Int total = 0;
  std::function<void(int, int, int, int, int)> go = [&](int start, int cur, int rema,
                                                        int remb, int cycles_left) {
    if (rema + remb == 0) {
      if (cycles_left == 0) {
        total += 1;
        return;
      }
      for (int s = start + 1; s < d; ++s) {
        if (covered[static_cast<size_t>(s)]) continue;
        covered[static_cast<size_t>(s)] = 1;
        go(s, s, a_per, b_per, cycles_left - 1);
        covered[static_cast<size_t>(s)] = 0;
      }
      return;
    }
    const bool last = (rema + remb == 1);
    for (int which = 0; which < 2; ++which) {
      const bool use_a = (which == 0);
      if (use_a ? rema == 0 : remb == 0) continue;
      const int nxt = (cur + (use_a ? a : b)) % d;
      if (last) {
        if (nxt == start) go(start, nxt, 0, 0, cycles_left);
      } else if (nxt > start && !covered[static_cast<size_t>(nxt)]) {
        covered[static_cast<size_t>(nxt)] = 1;
        go(start, nxt, rema - (use_a ? 1 : 0), remb - (use_a ? 0 : 1), cycles_left);
        covered[static_cast<size_t>(nxt)] = 0;
      }
    }
  };
  for (int s = 0; s + k * (a_per + b_per) <= d; ++s) {
    covered[static_cast<size_t>(s)] = 1;
    go(s, s, a_per, b_per, k - 1);
    covered[static_cast<size_t>(s)] = 0;
  }
  return total;
}

}  // namespace detail

inline bool coeff_nonzero(int d, int a, int b, int A, int B) {
  detail::check_three_line(d, a, b);
  detail::check_exponents(d, A, B);
  detail::require_coprime(d, a, b);
  return (static_cast<long>(a) * A + static_cast<long>(b) * B) % d == 0;
}

/// +1 or -1; requires d | (aA + bB). The (A,B) = (0,0) constant term uses
/// the convention GCD(0,0,0) = 0 with 0 even, giving +.
inline int coeff_sign(int d, int a, int b, int A, int B) {
  detail::check_three_line(d, a, b);
  detail::check_exponents(d, A, B);
  detail::require_coprime(d, a, b);
  const long w = static_cast<long>(a) * A + static_cast<long>(b) * B;
  if (w % d != 0) throw contract_error("coefficient is zero: d does not divide aA + bB");
  const long ell = w / d;
  const long k = detail::gcd3(A, B, ell);
  return (k % 2 == 0 || (A + B - 1) % 2 == 0) ? +1 : -1;
}

/// |coefficient| = |P_{a,b,d,A,B}|, counted through the canonical cycle
/// structure. Enumerative: cost grows with binom(A+B, A); fine for moderate
/// A+B, use det_poly_interpolate for large instances.
inline Int coeff_magnitude(int d, int a, int b, int A, int B) {
  detail::check_three_line(d, a, b);
  detail::check_exponents(d, A, B);
  detail::require_coprime(d, a, b);
  const long w = static_cast<long>(a) * A + static_cast<long>(b) * B;
  if (w % d != 0) throw contract_error("coefficient is zero: d does not divide aA + bB");
  if (A == 0 && B == 0) return 1;  // identity permutation only
  const long ell = w / d;
  const long k = detail::gcd3(A, B, ell);
  return detail::count_canonical_cycle_perms(d, a, b, static_cast<int>(k),
                                             A / static_cast<int>(k), B / static_cast<int>(k));
}

inline CoefficientReport full_coefficient(int d, int a, int b, int A, int B) {
  CoefficientReport rep;
  rep.d = d;
  rep.a = a;
  rep.b = b;
  rep.A = A;
  rep.B = B;
  rep.nonzero = coeff_nonzero(d, a, b, A, B);
  if (!rep.nonzero) return rep;
  const long w = static_cast<long>(a) * A + static_cast<long>(b) * B;
  rep.ell = w / d;
  rep.k = detail::gcd3(A, B, rep.ell);
  rep.zero_pair_convention = (A == 0 && B == 0);
  rep.sign = coeff_sign(d, a, b, A, B);
  rep.magnitude = coeff_magnitude(d, a, b, A, B);
  rep.value = rep.sign * rep.magnitude;
  return rep;
}

/// D = P = #{(A,B) : A,B >= 0, A+B <= d, d | (aA+bB)}; a pure arithmetic
/// scan, no permutation enumeration.
inline std::pair<long, long> oracle_support_count(int d, int a, int b) {
  detail::check_three_line(d, a, b);
  detail::require_coprime(d, a, b);
  long n = 0;
  for (int A = 0; A <= d; ++A)
    for (int B = 0; A + B <= d; ++B)
      if ((static_cast<long>(a) * A + static_cast<long>(b) * B) % d == 0) ++n;
  return {n, n};
}

}  // namespace circkit
