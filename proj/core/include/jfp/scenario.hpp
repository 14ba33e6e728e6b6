// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "jfp/contraction.hpp"
#include "jfp/expr.hpp"
#include "jfp/metric.hpp"

namespace jfp {

inline constexpr int kScenarioSchemaVersion = 1;

/// Interval with exact (expression) endpoints, e.g. "[1/2, 2/3)".
struct IntervalSpec {
  Expr lo = Expr::constant(0.0);
  Expr hi = Expr::constant(1.0);
  bool lo_closed = true;
  bool hi_closed = true;

  static IntervalSpec parse(std::string_view text);
  [[nodiscard]] Domain domain() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const IntervalSpec&, const IntervalSpec&) = default;
};

struct Piece {
  IntervalSpec on;
  Expr body = Expr::parse("x");

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Either one expression on the whole domain or a list of branches.
using MapSpec = std::variant<Expr, std::vector<Piece>>;

enum class DeclaredFact { range_containment, complete_range, closed_range, integrable_phi };

/// x_n = term(n) for n = n_from..n_to.
struct SequenceSpec {
  Expr term = Expr::parse("n", "n");
  long n_from = 1;
  long n_to = 100;

  [[nodiscard]] std::vector<double> terms() const;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

struct Expected {
  std::optional<Expr> poc;
  std::optional<Expr> cfp;
  std::optional<std::vector<Expr>> cps;

  friend bool operator==(const Expected&, const Expected&) = default;
};

/// A complete, validated problem instance.
struct Scenario {
  std::string name;
  std::string description;
  IntervalSpec domain;
  MapSpec s = Expr::parse("x");
  MapSpec t = Expr::parse("x");
  Expr psi = Expr::parse("t", "t");
  Expr alpha = Expr::constant(0.0);
  Expr beta = Expr::constant(0.0);
  Expr gamma = Expr::constant(0.0);
  std::optional<Expr> phi;
  MiddleTerm integral_middle_term = MiddleTerm::rewritten;
  std::set<DeclaredFact> declared_facts;
  std::optional<SequenceSpec> ea_sequence;
  Expected expected;

  [[nodiscard]] bool declares(DeclaredFact f) const { return declared_facts.contains(f); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Builds the evaluable pair. Gauge/ψ/φ expressions use variable `t`.
ContractionPair make_contraction_pair(const Scenario& scenario);

ScalarMap make_map(const MapSpec& spec, const Domain& domain, const std::string& label);

/// Checks breakpoints, totality, the selfmap property and gauge codomains.
/// Throws ScenarioError with the offending field and witness.
void validate(const Scenario& scenario);

/// Parses scenario JSON text; unknown fields are rejected. The result is
/// validated. Throws ScenarioError (with line/column for syntax errors).
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& j);
std::string dump_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

const char* to_string(DeclaredFact f) noexcept;
std::optional<DeclaredFact> declared_fact_from_string(std::string_view s);

/// Version stamped on the built-in catalog; bump when an entry changes.
inline constexpr int kCatalogVersion = 1;

/// The built-in scenarios: example1_as_printed, example1_corrected,
/// example2, example2_integral, example3.
const std::vector<Scenario>& builtin_catalog();

/// Catalog entry by name, or nullopt.
std::optional<Scenario> find_builtin(std::string_view name);

}  // namespace jfp
