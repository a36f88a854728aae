#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "circkit/errors.hpp"

namespace circkit {

using u64 = std::uint64_t;

inline u64 addmod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  if (s >= p || s < a) s -= p;
  return s;
}

inline u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}

inline u64 powmod(u64 base, u64 exp, u64 p) {
  u64 r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return r;
}

inline u64 invmod(u64 a, u64 p) {  // p prime
  return powmod(a % p, p - 2, p);
}

inline bool is_prime_u64(u64 n) {
  mpz_class m(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(m.get_mpz_t(), 30) != 0;
}

/// Distinct prime factors by trial division; intended for small n (matrix
/// orders), not cryptographic sizes.
inline std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> fs;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      fs.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

/// Smallest-base deterministic search for an element of multiplicative
/// order exactly d mod p. Requires d | p-1.
inline u64 primitive_root_of_unity(u64 p, u64 d) {
  if ((p - 1) % d != 0) throw internal_error("p is not 1 mod d");
  if (d == 1) return 1 % p;
  const auto qs = distinct_prime_factors(d);
  for (u64 g = 2; g < p; ++g) {
    u64 w = powmod(g, (p - 1) / d, p);
    if (w == 1) continue;
    bool ok = true;
    for (u64 q : qs)
      if (powmod(w, d / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return w;
  }
  throw internal_error("no primitive d-th root found");  // unreachable for prime p
}

/// Primes p ≡ 1 (mod d), largest first, until their product exceeds `need`.
inline std::vector<u64> primes_one_mod(u64 d, const mpz_class& need) {
  std::vector<u64> ps;
  mpz_class prod = 1;
  const u64 kmax = ((u64(1) << 62) - 1) / d;
  for (u64 k = kmax; k > 0 && prod <= need; --k) {
    const u64 p = k * d + 1;
    if (!is_prime_u64(p)) continue;
    ps.push_back(p);
    prod *= mpz_class(static_cast<unsigned long>(p));
  }
  if (prod <= need) throw resource_limit_error("not enough word-size primes for modulus");
  return ps;
}

}  // namespace circkit
