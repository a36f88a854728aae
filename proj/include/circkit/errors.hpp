#pragma once

#include <stdexcept>
#include <string>

namespace circkit {

// Precondition or argument violation (bad flag values, arity mismatch,
// exponent sums, non-divisor a for the two-line formula, ...).
class contract_error : public std::invalid_argument {
 public:
  explicit contract_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A theorem hypothesis does not hold (GCD(a,b,d) != 1). Distinct from
// contract_error so callers can tell "you called it wrong" from "the
// theorem does not apply here".
class hypothesis_error : public contract_error {
 public:
  explicit hypothesis_error(const std::string& msg) : contract_error(msg) {}
};

// Exact division requested but the divisor does not divide.
class divisibility_error : public std::domain_error {
 public:
  explicit divisibility_error(const std::string& msg) : std::domain_error(msg) {}
};

// Input size exceeds a configured brute-force bound.
class resource_limit_error : public std::runtime_error {
 public:
  explicit resource_limit_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency check failed (non-integer interpolation residue,
// inhomogeneous reconstruction, ...). Always a bug, never a caller error.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace circkit
