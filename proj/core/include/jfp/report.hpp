// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jfp/contraction.hpp"
#include "jfp/gauges.hpp"
#include "jfp/jungck.hpp"
#include "jfp/scenario.hpp"

namespace jfp {

inline constexpr int kReportSchemaVersion = 1;

/// Every hypothesis that can be checked numerically for a scenario.
struct HypothesisChecks {
  AlteringDistanceReport psi;
  GaugeReport gauges;
  std::optional<PhiReport> phi;
  /// ψ0 built from φ, run through the same axiom checker as ψ.
  std::optional<AlteringDistanceReport> psi0;
  ContainmentReport containment;
  bool containment_declared = false;
  bool ok = false;

  friend bool operator==(const HypothesisChecks&, const HypothesisChecks&) = default;
};

struct CheckOptions {
  std::size_t psi_grid = 64;
  int refine_levels = 3;
  std::size_t gauge_grid = 257;
  double quadrature_tol = 1e-10;
  PreimageOptions preimage;
};

/// ψ axioms on [0, 2*width], gauge conditions on [0, width], φ checks and
/// ψ0 axioms when φ is present, and S(M) ⊆ T(M). `ok` ignores a failed
/// containment unless the scenario declares range_containment.
HypothesisChecks check_hypotheses(const Scenario& scenario, const CheckOptions& options = {});

struct TraceSummary {
  TraceStatus status = TraceStatus::max_iters;
  std::size_t iterations = 0;
  std::optional<std::size_t> converged_at;
  std::optional<std::size_t> failed_at;
  std::optional<double> x0;
  std::optional<double> limit;
  std::optional<double> last_step;
  /// Median of step_dist[k+1] / step_dist[k] over k where both are positive.
  std::optional<double> step_ratio;

  friend bool operator==(const TraceSummary&, const TraceSummary&) = default;
};

TraceSummary summarize(const JungckTrace& trace);

struct SolveSummary {
  SolveRoute route = SolveRoute::none;
  TraceSummary trace;
  PocResult poc;
  CoincidenceResult cps;
  OwcResult owc;
  std::optional<EaResult> ea;
  std::optional<double> common_fixed_point;
  double cfp_s_residual = 0.0;
  double cfp_t_residual = 0.0;
  bool uniqueness_all_agree = false;
  std::size_t uniqueness_starts = 0;
  std::size_t uniqueness_converged = 0;
  double uniqueness_spread = 0.0;
  std::vector<std::string> assumptions;
  std::optional<std::string> failed_stage;
  std::string message;
  std::optional<bool> matches_expected;

  friend bool operator==(const SolveSummary&, const SolveSummary&) = default;
};

SolveSummary summarize(const SolveReport& report);

/// Contents of a structured report file.
struct Report {
  std::string command;
  std::string scenario;
  std::vector<std::string> declared_facts;
  std::optional<HypothesisChecks> checks;
  std::optional<ContractionCertificate> certificate;
  std::optional<ContractionCertificate> integral_certificate;
  std::optional<SolveSummary> solve;
  bool passed = false;
  int exit_status = 0;

  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

/// Pretty JSON, keys in lexicographic order, doubles in shortest
/// round-trip form.
std::string dump_report(const Report& report);
void save_report(const Report& report, const std::filesystem::path& path);
Report load_report(const std::filesystem::path& path);

/// CSV with header "n,x_n,y_n,step_dist"; step_dist is empty on the last
/// row, which has no successor.
std::string trace_csv(const JungckTrace& trace);
void save_trace_csv(const JungckTrace& trace, const std::filesystem::path& path);

}  // namespace jfp
