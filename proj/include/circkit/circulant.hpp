#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "circkit/errors.hpp"
#include "circkit/mod_arith.hpp"
#include "circkit/poly.hpp"

namespace circkit {

/// An r-line circulant of order d: entry (i,j) holds variable t when
/// (j - i) mod d equals shifts[t], and a structural zero otherwise.
struct CirculantSpec {
  int d = 0;
  std::vector<int> shifts;

  CirculantSpec() = default;
  CirculantSpec(int order, std::vector<int> sh) : d(order), shifts(std::move(sh)) {
    validate();
  }

  int lines() const { return static_cast<int>(shifts.size()); }

  void validate() const {
    if (d < 1) throw contract_error("circulant order must be positive");
    if (shifts.empty() || static_cast<int>(shifts.size()) > d)
      throw contract_error("need between 1 and d shifts");
    for (size_t i = 0; i < shifts.size(); ++i) {
      if (shifts[i] < 0 || shifts[i] >= d) throw contract_error("shift out of [0, d-1]");
      if (i > 0 && shifts[i] <= shifts[i - 1])
        throw contract_error("shifts must be strictly increasing");
    }
  }
};

/// Entry (i,j) is the variable index t with (j-i) mod d == shifts[t], or -1.
inline std::vector<std::vector<int>> build_matrix(const CirculantSpec& spec) {
  spec.validate();
  std::vector<int> shift_var(static_cast<size_t>(spec.d), -1);
  for (size_t t = 0; t < spec.shifts.size(); ++t)
    shift_var[static_cast<size_t>(spec.shifts[t])] = static_cast<int>(t);
  std::vector<std::vector<int>> m(static_cast<size_t>(spec.d),
                                  std::vector<int>(static_cast<size_t>(spec.d)));
  for (int i = 0; i < spec.d; ++i)
    for (int j = 0; j < spec.d; ++j)
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          shift_var[static_cast<size_t>(((j - i) % spec.d + spec.d) % spec.d)];
  return m;
}

/// Numeric specialization: variable t is replaced by values[t].
inline std::vector<std::vector<Int>> circulant_matrix_at(const CirculantSpec& spec,
                                                         const std::vector<Int>& values) {
  if (values.size() != spec.shifts.size())
    throw contract_error("one value per shift required");
  const auto pattern = build_matrix(spec);
  std::vector<std::vector<Int>> m(static_cast<size_t>(spec.d),
                                  std::vector<Int>(static_cast<size_t>(spec.d), Int(0)));
  for (int i = 0; i < spec.d; ++i)
    for (int j = 0; j < spec.d; ++j) {
      int t = pattern[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (t >= 0) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = values[static_cast<size_t>(t)];
    }
  return m;
}

namespace detail {
inline int permutation_sign(const std::vector<int>& sigma) {
  const int d = static_cast<int>(sigma.size());
  std::vector<char> seen(sigma.size(), 0);
  int transpositions = 0;
  for (int i = 0; i < d; ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<size_t>(j)]; j = sigma[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return (transpositions % 2 == 0) ? 1 : -1;
}
}  // namespace detail

/// A permutation given by forward steps: sigma(i) = (i + steps[i]) mod d,
/// with every step drawn from the spec's shift set.
struct StepPermutation {
  CirculantSpec spec;
  std::vector<int> steps;

  StepPermutation(CirculantSpec sp, std::vector<int> st)
      : spec(std::move(sp)), steps(std::move(st)) {
    spec.validate();
    if (static_cast<int>(steps.size()) != spec.d)
      throw contract_error("steps length must equal d");
    std::vector<char> hit(static_cast<size_t>(spec.d), 0);
    for (int i = 0; i < spec.d; ++i) {
      int s = steps[static_cast<size_t>(i)];
      if (std::find(spec.shifts.begin(), spec.shifts.end(), s) == spec.shifts.end())
        throw contract_error("step value not among the shifts");
      int img = (i + s) % spec.d;
      if (hit[static_cast<size_t>(img)]) throw contract_error("steps do not define a bijection");
      hit[static_cast<size_t>(img)] = 1;
    }
  }

  std::vector<int> sigma() const {
    std::vector<int> s(steps.size());
    for (int i = 0; i < spec.d; ++i)
      s[static_cast<size_t>(i)] = (i + steps[static_cast<size_t>(i)]) % spec.d;
    return s;
  }

  /// Cycles of length >= 2, each starting at its smallest element, ordered
  /// by that element. Fixed points (step 0) are not cycles.
  std::vector<std::vector<int>> cycles() const {
    const auto s = sigma();
    std::vector<char> seen(s.size(), 0);
    std::vector<std::vector<int>> cs;
    for (int i = 0; i < spec.d; ++i) {
      if (seen[static_cast<size_t>(i)] || s[static_cast<size_t>(i)] == i) continue;
      std::vector<int> c;
      for (int j = i; !seen[static_cast<size_t>(j)]; j = s[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = 1;
        c.push_back(j);
      }
      cs.push_back(std::move(c));
    }
    return cs;
  }

  int sign() const { return detail::permutation_sign(sigma()); }
};

/// Per-cycle statistics in the three-line setting (shifts = [0, a, b]):
/// counts of a-steps and b-steps and the winding number (step sum)/d.
struct CycleStats {
  int a_count = 0;
  int b_count = 0;
  long winding = 0;
};

struct CycleProfile {
  std::vector<CycleStats> cycles;
  int k = 0;  // number of nontrivial cycles
};

inline CycleProfile cycle_profile(const StepPermutation& sp) {
  if (sp.spec.lines() != 3 || sp.spec.shifts[0] != 0)
    throw contract_error("cycle_profile expects shifts [0, a, b]");
  const int d = sp.spec.d;
  const int a = sp.spec.shifts[1];
  const int b = sp.spec.shifts[2];
  CycleProfile prof;
  for (const auto& cyc : sp.cycles()) {
    CycleStats st;
    long sum = 0;
    for (int i : cyc) {
      int s = sp.steps[static_cast<size_t>(i)];
      if (s == a)
        ++st.a_count;
      else if (s == b)
        ++st.b_count;
      sum += s;
    }
    if (sum % d != 0) throw internal_error("cycle step sum not divisible by d");
    st.winding = sum / d;
    prof.cycles.push_back(st);
  }
  prof.k = static_cast<int>(prof.cycles.size());
  return prof;
}

enum class ExpandMode { Det, Per };

/// Ground-truth expansion over the full symmetric group S_d. Exponential;
/// refuses orders above `bound`.
inline std::pair<IntPolynomial, IntPolynomial> leibniz_expand_pair(const CirculantSpec& spec,
                                                                   int bound = 9) {
  spec.validate();
  const int d = spec.d;
  if (d > bound)
    throw resource_limit_error("full S_d expansion refused for d = " + std::to_string(d) +
                               " > bound " + std::to_string(bound));
  std::vector<int> shift_var(static_cast<size_t>(d), -1);
  for (size_t t = 0; t < spec.shifts.size(); ++t)
    shift_var[static_cast<size_t>(spec.shifts[t])] = static_cast<int>(t);

  IntPolynomial det(spec.lines()), per(spec.lines());
  std::vector<int> sigma(static_cast<size_t>(d));
  std::iota(sigma.begin(), sigma.end(), 0);
  ExponentVec exps(static_cast<size_t>(spec.lines()));
  do {
    bool ok = true;
    std::fill(exps.begin(), exps.end(), 0);
    for (int i = 0; i < d && ok; ++i) {
      int step = ((sigma[static_cast<size_t>(i)] - i) % d + d) % d;
      int t = shift_var[static_cast<size_t>(step)];
      if (t < 0)
        ok = false;
      else
        ++exps[static_cast<size_t>(t)];
    }
    if (!ok) continue;
    det.add_term(exps, Int(detail::permutation_sign(sigma)));
    per.add_term(exps, Int(1));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return {std::move(det), std::move(per)};
}

inline IntPolynomial leibniz_expand(const CirculantSpec& spec, ExpandMode mode, int bound = 9) {
  auto [det, per] = leibniz_expand_pair(spec, bound);
  return mode == ExpandMode::Det ? det : per;
}

namespace detail {

// Backtracking over rows: row i picks a shift whose target column is free.
// Column occupancy lives in a 64-bit mask, so d <= 64.
template <typename Leaf>
void step_search(const CirculantSpec& spec, const std::vector<long>* remaining_init,
                 Leaf&& leaf) {
  const int d = spec.d;
  if (d > 64) throw resource_limit_error("step enumeration supports d <= 64");
  const int r = spec.lines();
  std::vector<long> remaining =
      remaining_init ? *remaining_init : std::vector<long>(static_cast<size_t>(r), -1);
  std::vector<int> steps(static_cast<size_t>(d));
  std::uint64_t colmask = 0;

  std::function<void(int)> rec = [&](int row) {
    if (row == d) {
      leaf(steps);
      return;
    }
    for (int t = 0; t < r; ++t) {
      if (remaining[static_cast<size_t>(t)] == 0) continue;
      const int col = (row + spec.shifts[static_cast<size_t>(t)]) % d;
      const std::uint64_t bit = std::uint64_t(1) << col;
      if (colmask & bit) continue;
      colmask |= bit;
      if (remaining[static_cast<size_t>(t)] > 0) --remaining[static_cast<size_t>(t)];
      steps[static_cast<size_t>(row)] = spec.shifts[static_cast<size_t>(t)];
      rec(row + 1);
      if (remaining[static_cast<size_t>(t)] >= 0) ++remaining[static_cast<size_t>(t)];
      colmask &= ~bit;
    }
  };
  rec(0);
}

}  // namespace detail

/// Visits every permutation of {0..d-1} whose steps all lie in the shift
/// set, as a steps vector. Deterministic order.
inline void for_each_step_permutation(const CirculantSpec& spec,
                                      const std::function<void(const std::vector<int>&)>& fn) {
  spec.validate();
  detail::step_search(spec, nullptr, fn);
}

struct StepEnumResult {
  Int det_coeff{0};
  Int per_coeff{0};
  std::vector<StepPermutation> witnesses;
};

/// Signed and unsigned counts of the permutations using shift t exactly
/// target[t] times; these are the det and per coefficients of the monomial
/// with exponent vector `target`. Witness retention is opt-in.
inline StepEnumResult step_enumerate(const CirculantSpec& spec, const ExponentVec& target,
                                     bool keep_witnesses = false) {
  spec.validate();
  if (static_cast<int>(target.size()) != spec.lines())
    throw contract_error("target exponent vector must have one entry per shift");
  long sum = 0;
  for (int e : target) {
    if (e < 0) throw contract_error("negative exponent in target");
    sum += e;
  }
  if (sum != spec.d) throw contract_error("target exponents must sum to d");

  std::vector<long> remaining(target.begin(), target.end());
  StepEnumResult res;
  detail::step_search(spec, &remaining, [&](const std::vector<int>& steps) {
    std::vector<int> sigma(steps.size());
    for (int i = 0; i < spec.d; ++i)
      sigma[static_cast<size_t>(i)] = (i + steps[static_cast<size_t>(i)]) % spec.d;
    res.det_coeff += detail::permutation_sign(sigma);
    res.per_coeff += 1;
    if (keep_witnesses) res.witnesses.emplace_back(spec, steps);
  });
  return res;
}

/// det/per expansion through one step-permutation sweep instead of full S_d
/// iteration; reaches well beyond the Leibniz bound on sparse circulants.
inline std::pair<IntPolynomial, IntPolynomial> step_expand_pair(const CirculantSpec& spec) {
  spec.validate();
  IntPolynomial det(spec.lines()), per(spec.lines());
  std::vector<int> var_of_shift(static_cast<size_t>(spec.d), -1);
  for (size_t t = 0; t < spec.shifts.size(); ++t)
    var_of_shift[static_cast<size_t>(spec.shifts[t])] = static_cast<int>(t);
  ExponentVec exps(static_cast<size_t>(spec.lines()));
  for_each_step_permutation(spec, [&](const std::vector<int>& steps) {
    std::fill(exps.begin(), exps.end(), 0);
    std::vector<int> sigma(steps.size());
    for (int i = 0; i < spec.d; ++i) {
      ++exps[static_cast<size_t>(var_of_shift[static_cast<size_t>(steps[static_cast<size_t>(i)])])];
      sigma[static_cast<size_t>(i)] = (i + steps[static_cast<size_t>(i)]) % spec.d;
    }
    det.add_term(exps, Int(detail::permutation_sign(sigma)));
    per.add_term(exps, Int(1));
  });
  return {std::move(det), std::move(per)};
}

inline IntPolynomial step_expand(const CirculantSpec& spec, ExpandMode mode) {
  auto [det, per] = step_expand_pair(spec);
  return mode == ExpandMode::Det ? det : per;
}

enum class SupportMethod { Leibniz, Step };

/// Number of monomials with nonzero coefficient in det and per.
inline std::pair<long, long> support_counts(const CirculantSpec& spec, SupportMethod method,
                                            int leibniz_bound = 9) {
  auto [det, per] = method == SupportMethod::Leibniz ? leibniz_expand_pair(spec, leibniz_bound)
                                                     : step_expand_pair(spec);
  return {static_cast<long>(det.num_terms()), static_cast<long>(per.num_terms())};
}

/// Closed form for det of the two-line circulant (d; 0, a) with a | d, as a
/// polynomial in (x, y): sum over s of (-1)^((a-s)(d/a-1)) C(a,s) x^(ds/a) y^(d(a-s)/a).
inline IntPolynomial two_lines_det(int d, int a) {
  if (d < 2 || a < 1 || a >= d) throw contract_error("two-line circulant needs 1 <= a < d");
  if (d % a != 0) throw contract_error("two-line formula requires a | d");
  IntPolynomial p(2);
  for (int s = 0; s <= a; ++s) {
    Int binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(a),
                 static_cast<unsigned long>(s));
    const long par = static_cast<long>(a - s) * (d / a - 1);
    if (par % 2 != 0) binom = -binom;
    p.add_term(ExponentVec{d * s / a, d * (a - s) / a}, binom);
  }
  return p;
}

/// A full-circulant monomial whose determinant coefficient vanishes while
/// its permanent coefficient does not, built from primes p < q via a Bezout
/// relation lambda*q = 1 + mu*p (smallest valid lambda). All derived index
/// constraints are verified; violations raise contract_error.
struct VanishingMonomial {
  int d = 0;
  ExponentVec exps;
  int lambda = 0;
  int mu = 0;
};

inline VanishingMonomial construct_vanishing_monomial(int p, int q) {
  if (p < 2 || q < 2 || !is_prime_u64(static_cast<u64>(p)) || !is_prime_u64(static_cast<u64>(q)))
    throw contract_error("both arguments must be prime");
  if (p >= q) throw contract_error("requires p < q");
  const int d = p * q;

  int lambda = 0, mu = 0;
  for (int l = 1; l * q < d; ++l) {
    if ((l * q - 1) % p == 0 && (l * q - 1) / p >= 1) {
      lambda = l;
      mu = (l * q - 1) / p;
      break;
    }
  }
  if (lambda == 0) throw contract_error("no Bezout pair with lambda*q = 1 + mu*p below d");

  const int i1 = d - mu * p;
  const int i2 = mu * p - mu * lambda + 1;
  const int i3 = d - mu * p + lambda * mu;
  VanishingMonomial out;
  out.d = d;
  out.lambda = lambda;
  out.mu = mu;
  out.exps.assign(static_cast<size_t>(d), 0);
  const int a0 = d - mu * p - 2;
  const int a1 = mu * p - 1;
  if (a0 < 0 || a1 < 0) throw contract_error("degenerate Bezout solution: negative exponent");
  for (int idx : {i1, i2, i3})
    if (idx <= 1 || idx >= d) throw contract_error("degenerate Bezout solution: index collision");
  if (i1 == i2 || i1 == i3 || i2 == i3)
    throw contract_error("degenerate Bezout solution: index collision");
  out.exps[0] = a0;
  out.exps[1] = a1;
  out.exps[static_cast<size_t>(i1)] = 1;
  out.exps[static_cast<size_t>(i2)] = 1;
  out.exps[static_cast<size_t>(i3)] = 1;

  long sum = 0, weighted = 0;
  for (int j = 0; j < d; ++j) {
    sum += out.exps[static_cast<size_t>(j)];
    weighted += static_cast<long>(j) * out.exps[static_cast<size_t>(j)];
  }
  if (sum != d || weighted % d != 0)
    throw internal_error("vanishing-monomial invariants failed");
  return out;
}

/// The four-line witness: in (6; 0,2,4,5) the monomial with exponents
/// (1,2,1,2) has positive permanent coefficient and zero determinant
/// coefficient.
inline std::pair<CirculantSpec, ExponentVec> four_line_witness() {
  return {CirculantSpec(6, {0, 2, 4, 5}), ExponentVec{1, 2, 1, 2}};
}

}  // namespace circkit
