#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "circkit/circulant.hpp"
#include "circkit/coeff_oracle.hpp"
#include "circkit/errors.hpp"
#include "circkit/gt_systems.hpp"
#include "circkit/poly.hpp"

namespace circkit {

using json = nlohmann::json;

/// Canonical polynomial serialization: an array of term records in the
/// polynomial's term order, coefficients as decimal strings.
inline json poly_to_json(const IntPolynomial& p) {
  json arr = json::array();
  for (const auto& [e, c] : p.terms()) {
    json term;
    term["exps"] = e;
    term["coeff"] = c.get_str();
    arr.push_back(std::move(term));
  }
  return arr;
}

inline IntPolynomial poly_from_json(const json& arr, int nvars) {
  if (!arr.is_array()) throw contract_error("polynomial JSON must be an array of terms");
  IntPolynomial p(nvars);
  for (const auto& term : arr) {
    ExponentVec e = term.at("exps").get<ExponentVec>();
    p.add_term(e, Int(term.at("coeff").get<std::string>()));
  }
  return p;
}

inline json spec_to_json(const CirculantSpec& spec) {
  return json{{"d", spec.d}, {"shifts", spec.shifts}};
}

inline CirculantSpec spec_from_json(const json& j) {
  return CirculantSpec(j.at("d").get<int>(), j.at("shifts").get<std::vector<int>>());
}

inline json report_to_json(const CoefficientReport& r) {
  json j;
  j["d"] = r.d;
  j["a"] = r.a;
  j["b"] = r.b;
  j["A"] = r.A;
  j["B"] = r.B;
  j["nonzero"] = r.nonzero;
  j["sign"] = r.nonzero ? (r.sign > 0 ? "+" : "-") : nullptr;
  j["k"] = r.nonzero ? json(r.k) : json(nullptr);
  j["ell"] = r.nonzero ? json(r.ell) : json(nullptr);
  j["magnitude"] = r.magnitude.get_str();
  j["value"] = r.value.get_str();
  j["zero_pair_convention"] = r.zero_pair_convention;
  return j;
}

inline json report_to_json(const GTSystemReport& r) {
  json j;
  j["d"] = r.d;
  j["a"] = r.a;
  j["b"] = r.b;
  j["mode"] = r.mode;
  j["generators"] = r.generators;
  j["mu"] = r.mu;
  j["togliatti_bound_ok"] = r.togliatti_bound_ok;
  j["kernel_dim"] = r.kernel_dim;
  j["minimal"] = r.minimal;
  j["missing_witnesses"] = r.missing_witnesses;
  return j;
}

inline json error_to_json(const std::string& kind, const std::string& message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace circkit
