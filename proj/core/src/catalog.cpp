// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include <string_view>

#include "jfp/scenario.hpp"

namespace jfp {

namespace {

// The printed gauges sum to 5/4, so this entry fails the gauge check on
// purpose.
constexpr std::string_view kExample1AsPrinted = R"json({
  "schema_version": 1,
  "name": "example1_as_printed",
  "description": "Sx = x/16, Tx = x/2 on [0,1], psi = t^2, gauges as printed (alpha = beta = 1/2, gamma = 1/4)",
  "domain": "[0, 1]",
  "S": "x/16",
  "T": "x/2",
  "psi": "t^2",
  "alpha": "1/2",
  "beta": "1/2",
  "gamma": "1/4",
  "declared_facts": ["range_containment", "complete_range", "closed_range"],
  "expected": {"poc": "0", "cfp": "0", "cps": ["0"]}
})json";

constexpr std::string_view kExample1Corrected = R"json({
  "schema_version": 1,
  "name": "example1_corrected",
  "description": "Sx = x/16, Tx = x/2 on [0,1], psi = t^2, alpha = beta = gamma = 1/8",
  "domain": "[0, 1]",
  "S": "x/16",
  "T": "x/2",
  "psi": "t^2",
  "alpha": "1/8",
  "beta": "1/8",
  "gamma": "1/8",
  "declared_facts": ["range_containment", "complete_range", "closed_range"],
  "expected": {"poc": "0", "cfp": "0", "cps": ["0"]}
})json";

constexpr std::string_view kExample2 = R"json({
  "schema_version": 1,
  "name": "example2",
  "description": "S = 0 on [0,1/2], 1/16 on (1/2,1]; Tx = x/2; psi = t^2; alpha = 1/8, beta = gamma = 1/4",
  "domain": "[0, 1]",
  "S": [
    {"on": "[0, 1/2]", "expr": "0"},
    {"on": "(1/2, 1]", "expr": "1/16"}
  ],
  "T": "x/2",
  "psi": "t^2",
  "alpha": "1/8",
  "beta": "1/4",
  "gamma": "1/4",
  "declared_facts": ["range_containment", "complete_range", "closed_range"],
  "expected": {"poc": "0", "cfp": "0", "cps": ["0"]}
})json";

constexpr std::string_view kExample2Integral = R"json({
  "schema_version": 1,
  "name": "example2_integral",
  "description": "example2 under the integral-type inequality with phi(t) = 2t",
  "domain": "[0, 1]",
  "S": [
    {"on": "[0, 1/2]", "expr": "0"},
    {"on": "(1/2, 1]", "expr": "1/16"}
  ],
  "T": "x/2",
  "psi": "t^2",
  "alpha": "1/8",
  "beta": "1/4",
  "gamma": "1/4",
  "phi": "2*t",
  "integral_middle_term": "rewritten",
  "declared_facts": ["range_containment", "complete_range", "closed_range", "integrable_phi"],
  "expected": {"poc": "0", "cfp": "0", "cps": ["0"]}
})json";

// S(M) = [1/2, 2/3] is not inside T(M) = [2/3, 1]; existence goes through
// the (E.A.) sequence and closedness of T(M).
constexpr std::string_view kExample3 = R"json({
  "schema_version": 1,
  "name": "example3",
  "description": "Piecewise S, T on [1/2,1], psi = t^2, alpha = beta = 1/4, gamma = 1/8, (E.A.) along x_n = 2/3 + 1/n",
  "domain": "[1/2, 1]",
  "S": [
    {"on": "[1/2, 2/3)", "expr": "1/2"},
    {"on": "[2/3, 1]", "expr": "1 - x/2"}
  ],
  "T": [
    {"on": "[1/2, 2/3)", "expr": "1"},
    {"on": "[2/3, 1]", "expr": "x"}
  ],
  "psi": "t^2",
  "alpha": "1/4",
  "beta": "1/4",
  "gamma": "1/8",
  "declared_facts": ["complete_range", "closed_range"],
  "ea_sequence": {"term": "2/3 + 1/n", "n_from": 4, "n_to": 200},
  "expected": {"poc": "2/3", "cfp": "2/3", "cps": ["2/3"]}
})json";

}  // namespace

const std::vector<Scenario>& builtin_catalog() {
  static const std::vector<Scenario> catalog = [] {
    std::vector<Scenario> out;
    for (auto text : {kExample1AsPrinted, kExample1Corrected, kExample2, kExample2Integral,
                      kExample3}) {
      out.push_back(parse_scenario(text));
    }
    return out;
  }();
  return catalog;
}

std::optional<Scenario> find_builtin(std::string_view name) {
  for (const Scenario& sc : builtin_catalog()) {
    if (sc.name == name) return sc;
  }
  return std::nullopt;
}

}  // namespace jfp
