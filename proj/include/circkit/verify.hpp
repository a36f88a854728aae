#pragma once

#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "circkit/circulant.hpp"
#include "circkit/coeff_oracle.hpp"
#include "circkit/fast_permanent.hpp"
#include "circkit/gt_systems.hpp"
#include "circkit/poly.hpp"

namespace circkit {

/// One verification family: how many tuples were checked and which ones
/// failed. Sweeps are exhaustive over their stated ranges and deterministic
/// for a fixed seed.
struct PropertyResult {
  std::string name;
  long cases = 0;
  std::vector<std::string> violations;

  bool pass() const { return !violations.empty() ? false : cases > 0; }

  void fail(const std::string& what) {
    if (violations.size() < 50) violations.push_back(what);  // keep reports bounded
    else if (violations.size() == 50) violations.push_back("... further violations suppressed");
  }
};

namespace detail {

inline bool coprime3(int a, int b, int d) {
  return std::gcd(std::gcd(static_cast<long>(a), static_cast<long>(b)),
                  static_cast<long>(d)) == 1;
}

inline std::string tuple_str(int d, int a, int b) {
  std::ostringstream os;
  os << "(d=" << d << ",a=" << a << ",b=" << b << ")";
  return os.str();
}

}  // namespace detail

/// Oracle vs ground truth: over every (d,a,b) with 3 <= d <= max_d,
/// 1 <= a < b <= d-1, GCD(a,b,d) = 1, and every (A,B) with A+B <= d, the
/// closed-form oracle must reproduce the Leibniz determinant and permanent
/// coefficients and the step-enumeration counts exactly.
inline PropertyResult verify_oracle_vs_brute(int max_d) {
  PropertyResult res{"oracle-vs-brute-force coefficient equality"};
  for (int d = 3; d <= max_d; ++d) {
    for (int a = 1; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        if (!detail::coprime3(a, b, d)) continue;
        CirculantSpec spec(d, {0, a, b});
        const auto [det, per] = leibniz_expand_pair(spec, max_d);
        for (int A = 0; A <= d; ++A) {
          for (int B = 0; A + B <= d; ++B) {
            const ExponentVec target{d - A - B, A, B};
            const auto rep = full_coefficient(d, a, b, A, B);
            const Int want_det = det.coeff(target);
            const Int want_per = per.coeff(target);
            const auto step = step_enumerate(spec, target);
            ++res.cases;
            if (rep.value != want_det || rep.magnitude != want_per ||
                rep.nonzero != (want_det != 0) || step.det_coeff != want_det ||
                step.per_coeff != want_per) {
              std::ostringstream os;
              os << detail::tuple_str(d, a, b) << " A=" << A << " B=" << B
                 << ": oracle value=" << rep.value.get_str() << " magnitude="
                 << rep.magnitude.get_str() << " vs leibniz det=" << want_det.get_str()
                 << " per=" << want_per.get_str() << " step det="
                 << step.det_coeff.get_str() << " per=" << step.per_coeff.get_str();
              res.fail(os.str());
            }
            if (rep.nonzero) {
              const int expected_sign =
                  (rep.k * (A + B - 1)) % 2 == 0 ? +1 : -1;
              if (rep.sign != expected_sign)
                res.fail(detail::tuple_str(d, a, b) + " sign formula mismatch at A=" +
                         std::to_string(A) + " B=" + std::to_string(B));
            }
          }
        }
      }
    }
  }
  return res;
}

/// Cycle-structure laws: every step permutation of every coprime three-line
/// circulant decomposes into cycles with per-cycle GCD(A_i,B_i,l_i) = 1,
/// equal (A_i,B_i) across cycles, and cycle count k = GCD(A,B,l).
inline PropertyResult verify_structure_lemmas(int max_d) {
  PropertyResult res{"cycle structure of step permutations"};
  for (int d = 3; d <= max_d; ++d) {
    for (int a = 1; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        if (!detail::coprime3(a, b, d)) continue;
        CirculantSpec spec(d, {0, a, b});
        for_each_step_permutation(spec, [&](const std::vector<int>& steps) {
          ++res.cases;
          StepPermutation sp(spec, steps);
          const auto prof = cycle_profile(sp);
          long A = 0, B = 0, ell = 0;
          for (const auto& c : prof.cycles) {
            A += c.a_count;
            B += c.b_count;
            ell += c.winding;
            if (std::gcd(std::gcd(static_cast<long>(c.a_count), static_cast<long>(c.b_count)),
                         c.winding) != 1)
              res.fail(detail::tuple_str(d, a, b) + " per-cycle GCD != 1");
            if (c.a_count != prof.cycles[0].a_count || c.b_count != prof.cycles[0].b_count)
              res.fail(detail::tuple_str(d, a, b) + " unequal (A_i,B_i) across cycles");
          }
          const long k_expected = std::gcd(std::gcd(A, B), ell);
          if (prof.k != k_expected)
            res.fail(detail::tuple_str(d, a, b) + " cycle count k=" +
                     std::to_string(prof.k) + " != GCD(A,B,l)=" + std::to_string(k_expected));
        });
      }
    }
  }
  return res;
}

/// The two-line closed form against full Leibniz expansion, every a | d.
inline PropertyResult verify_two_line(int max_d) {
  PropertyResult res{"two-line closed form vs brute force"};
  for (int d = 2; d <= max_d; ++d) {
    for (int a = 1; a < d; ++a) {
      if (d % a != 0) continue;
      ++res.cases;
      const auto brute = leibniz_expand(CirculantSpec(d, {0, a}), ExpandMode::Det, max_d);
      if (two_lines_det(d, a) != brute)
        res.fail("(d=" + std::to_string(d) + ",a=" + std::to_string(a) + ") formula mismatch");
    }
  }
  return res;
}

/// The two vanishing-coefficient counterexample families: the four-line
/// witness and the Bezout construction for (p,q) = (2,3) and (3,5). Each
/// must have zero determinant coefficient but positive permanent
/// coefficient under step enumeration.
inline PropertyResult verify_counterexamples() {
  PropertyResult res{"vanishing det coefficients with nonzero per"};
  {
    const auto [spec, target] = four_line_witness();
    const auto r = step_enumerate(spec, target);
    ++res.cases;
    if (r.det_coeff != 0 || r.per_coeff <= 0)
      res.fail("four-line witness: det=" + r.det_coeff.get_str() + " per=" +
               r.per_coeff.get_str());
  }
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 5}}) {
    const auto vm = construct_vanishing_monomial(p, q);
    std::vector<int> shifts(static_cast<size_t>(vm.d));
    std::iota(shifts.begin(), shifts.end(), 0);
    const auto r = step_enumerate(CirculantSpec(vm.d, shifts), vm.exps);
    ++res.cases;
    if (r.det_coeff != 0 || r.per_coeff <= 0)
      res.fail("bezout (" + std::to_string(p) + "," + std::to_string(q) + "): det=" +
               r.det_coeff.get_str() + " per=" + r.per_coeff.get_str());
  }
  return res;
}

/// Interpolated determinant polynomial vs Leibniz, all (a,b) pairs
/// including GCD != 1, plus the unconditional divisibility law
/// d | (aA + bB) on every interpolated support monomial.
inline PropertyResult verify_interp_vs_leibniz(int max_d) {
  PropertyResult res{"interpolated det vs brute force"};
  for (int d = 3; d <= max_d; ++d) {
    for (int a = 1; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        ++res.cases;
        const auto interp = det_poly_interpolate(d, a, b);
        if (interp != leibniz_expand(CirculantSpec(d, {0, a, b}), ExpandMode::Det, max_d))
          res.fail(detail::tuple_str(d, a, b) + " polynomial mismatch");
        for (const auto& [e, c] : interp.terms())
          if ((static_cast<long>(a) * e[1] + static_cast<long>(b) * e[2]) % d != 0)
            res.fail(detail::tuple_str(d, a, b) + " support violates d | (aA+bB)");
      }
    }
  }
  return res;
}

/// Fast permanents against Ryser on random integer points, GCD(a,b,d) = 1.
inline PropertyResult verify_interp_vs_ryser(int max_d, int points_per_pair,
                                             std::uint64_t seed) {
  PropertyResult res{"per_eval interp vs ryser at random points"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-5, 5);
  for (int d = 3; d <= max_d; ++d) {
    for (int a = 1; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        if (!detail::coprime3(a, b, d)) continue;
        for (int s = 0; s < points_per_pair; ++s) {
          const std::array<Int, 3> pt = {Int(coord(rng)), Int(coord(rng)), Int(coord(rng))};
          ++res.cases;
          const Int fast = per_eval(d, a, b, pt, PermanentMethod::Interp);
          const Int slow = per_eval(d, a, b, pt, PermanentMethod::Ryser);
          if (fast != slow) {
            std::ostringstream os;
            os << detail::tuple_str(d, a, b) << " at (" << pt[0].get_str() << ","
               << pt[1].get_str() << "," << pt[2].get_str() << "): interp=" << fast.get_str()
               << " ryser=" << slow.get_str();
            res.fail(os.str());
          }
        }
      }
    }
  }
  return res;
}

/// D and P agree between expansion counting and the arithmetic oracle scan
/// whenever GCD(a,b,d) = 1, and D <= P always.
inline PropertyResult verify_support_counts(int max_d) {
  PropertyResult res{"support counts: expansion vs arithmetic scan"};
  for (int d = 3; d <= max_d; ++d) {
    for (int a = 1; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        ++res.cases;
        const auto [D, P] = support_counts(CirculantSpec(d, {0, a, b}), SupportMethod::Leibniz,
                                           max_d);
        if (D > P) res.fail(detail::tuple_str(d, a, b) + " D > P");
        if (!detail::coprime3(a, b, d)) continue;
        const auto [oD, oP] = oracle_support_count(d, a, b);
        if (oD != D || oP != P || D != P)
          res.fail(detail::tuple_str(d, a, b) + " oracle (" + std::to_string(oD) + "," +
                   std::to_string(oP) + ") vs expansion (" + std::to_string(D) + "," +
                   std::to_string(P) + ")");
      }
    }
  }
  return res;
}

/// The permanent support is exactly the invariant-monomial set.
inline PropertyResult verify_per_support_is_invariant(int max_d) {
  PropertyResult res{"permanent support = invariant monomials"};
  for (int d = 3; d <= max_d; ++d) {
    for (int a = 1; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        ++res.cases;
        const auto per = leibniz_expand(CirculantSpec(d, {0, a, b}), ExpandMode::Per, max_d);
        std::set<ExponentVec> support;
        for (const auto& [e, c] : per.terms()) support.insert(e);
        const auto inv = invariant_monomials(d, a, b);
        if (support != std::set<ExponentVec>(inv.begin(), inv.end()))
          res.fail(detail::tuple_str(d, a, b) + " support differs from invariant monomials");
      }
    }
  }
  return res;
}

/// Full GT-system sweep under GCD = 1: generator bound, kernel dimension
/// one, minimality with empty witness list.
inline PropertyResult verify_gt_systems(int max_d, int threads = 1) {
  PropertyResult res{"GT-systems: bound, kernel, minimality"};
  for (int d = 3; d <= max_d; ++d) {
    for (int a = 1; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        if (!detail::coprime3(a, b, d)) continue;
        ++res.cases;
        const auto rep = minimality_certificate(d, a, b, threads);
        if (!rep.togliatti_bound_ok)
          res.fail(detail::tuple_str(d, a, b) + " mu=" + std::to_string(rep.mu) + " > d+1");
        if (rep.kernel_dim != 1)
          res.fail(detail::tuple_str(d, a, b) + " kernel dim " +
                   std::to_string(rep.kernel_dim) + " != 1");
        if (!rep.minimal || !rep.missing_witnesses.empty())
          res.fail(detail::tuple_str(d, a, b) + " not reported minimal");
      }
    }
  }
  return res;
}

/// (x+y+z) divides the invariant form exactly and the product reconstructs
/// it, every (a,b) pair (the j = 0 factor exists regardless of GCD).
inline PropertyResult verify_exact_division(int max_d, int threads = 1) {
  PropertyResult res{"(x+y+z) divides the invariant form"};
  IntPolynomial ell(3);
  ell.add_term({1, 0, 0}, 1);
  ell.add_term({0, 1, 0}, 1);
  ell.add_term({0, 0, 1}, 1);
  for (int d = 3; d <= max_d; ++d) {
    for (int a = 1; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        ++res.cases;
        const auto form = reynolds_form(d, a, b, threads);
        try {
          const auto quotient = exact_divide(form, ell);
          if (quotient * ell != form)
            res.fail(detail::tuple_str(d, a, b) + " quotient does not multiply back");
          if (quotient.degree() != d - 1)
            res.fail(detail::tuple_str(d, a, b) + " quotient degree != d-1");
        } catch (const divisibility_error&) {
          res.fail(detail::tuple_str(d, a, b) + " (x+y+z) does not divide the form");
        }
      }
    }
  }
  return res;
}

}  // namespace circkit
