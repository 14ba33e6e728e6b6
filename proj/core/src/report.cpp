// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include "jfp/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "jfp/error.hpp"

namespace jfp {

using nlohmann::json;

NLOHMANN_JSON_SERIALIZE_ENUM(PreimageStatus, {{PreimageStatus::found, "found"},
                                              {PreimageStatus::none, "none"},
                                              {PreimageStatus::undecided, "undecided"}})
NLOHMANN_JSON_SERIALIZE_ENUM(TraceStatus, {{TraceStatus::converged, "converged"},
                                           {TraceStatus::max_iters, "max_iters"},
                                           {TraceStatus::preimage_failed, "preimage_failed"}})
NLOHMANN_JSON_SERIALIZE_ENUM(OwcVerdict, {{OwcVerdict::holds, "holds"},
                                          {OwcVerdict::fails, "fails"},
                                          {OwcVerdict::no_cp_found, "no_cp_found"}})
NLOHMANN_JSON_SERIALIZE_ENUM(SolveRoute, {{SolveRoute::none, "none"},
                                          {SolveRoute::jungck_iteration, "jungck_iteration"},
                                          {SolveRoute::property_ea, "property_ea"}})
NLOHMANN_JSON_SERIALIZE_ENUM(CertificateVerdict, {{CertificateVerdict::certified, "certified"},
                                                  {CertificateVerdict::violated, "violated"}})
NLOHMANN_JSON_SERIALIZE_ENUM(ContractionForm, {{ContractionForm::plain, "plain"},
                                               {ContractionForm::integral, "integral"}})

namespace {

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const json& j, const char* key, T& out) {
  j.at(key).get_to(out);
}

template <class T>
void get(const json& j, const char* key, std::optional<T>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
  } else {
    out = it->get<T>();
  }
}

}  // namespace

// Serializers live in namespace jfp so nlohmann finds them by ADL.

void to_json(json& j, const AxiomFailure& a) {
  j = {{"t", a.t}, {"value", a.value}, {"detail", a.detail}};
}
void from_json(const json& j, AxiomFailure& a) {
  get(j, "t", a.t);
  get(j, "value", a.value);
  get(j, "detail", a.detail);
}

void to_json(json& j, const AlteringDistanceReport& r) {
  j = {{"psi1", r.psi1},           {"psi2", r.psi2},
       {"psi3", r.psi3},           {"witnesses", r.witnesses},
       {"oscillation", r.oscillation}, {"jump_estimate", r.jump_estimate}};
}
void from_json(const json& j, AlteringDistanceReport& r) {
  get(j, "psi1", r.psi1);
  get(j, "psi2", r.psi2);
  get(j, "psi3", r.psi3);
  get(j, "witnesses", r.witnesses);
  get(j, "oscillation", r.oscillation);
  get(j, "jump_estimate", r.jump_estimate);
}

void to_json(json& j, const GaugeReport& r) {
  j = {{"sum_ok", r.sum_ok},
       {"gamma0_ok", r.gamma0_ok},
       {"ratio_ok", r.ratio_ok},
       {"max_sum", r.max_sum},
       {"max_gamma0", r.max_gamma0},
       {"max_ratio", r.max_ratio},
       {"gamma0_margin", r.gamma0_margin},
       {"ratio_margin", r.ratio_margin},
       {"sum_failures", r.sum_failures},
       {"points_checked", r.points_checked},
       {"witnesses", r.witnesses}};
}
void from_json(const json& j, GaugeReport& r) {
  get(j, "sum_ok", r.sum_ok);
  get(j, "gamma0_ok", r.gamma0_ok);
  get(j, "ratio_ok", r.ratio_ok);
  get(j, "max_sum", r.max_sum);
  get(j, "max_gamma0", r.max_gamma0);
  get(j, "max_ratio", r.max_ratio);
  get(j, "gamma0_margin", r.gamma0_margin);
  get(j, "ratio_margin", r.ratio_margin);
  get(j, "sum_failures", r.sum_failures);
  get(j, "points_checked", r.points_checked);
  get(j, "witnesses", r.witnesses);
}

void to_json(json& j, const PhiReport& r) {
  j = {{"phi2", r.phi2}, {"phi3", r.phi3}, {"witnesses", r.witnesses}};
}
void from_json(const json& j, PhiReport& r) {
  get(j, "phi2", r.phi2);
  get(j, "phi3", r.phi3);
  get(j, "witnesses", r.witnesses);
}

void to_json(json& j, const ContainmentWitness& w) {
  j = {{"point", w.point}, {"s_value", w.s_value}, {"status", w.status}};
}
void from_json(const json& j, ContainmentWitness& w) {
  get(j, "point", w.point);
  get(j, "s_value", w.s_value);
  get(j, "status", w.status);
}

void to_json(json& j, const ContainmentReport& r) {
  j = {{"holds", r.holds},
       {"points_checked", r.points_checked},
       {"undecided", r.undecided},
       {"witnesses", r.witnesses}};
}
void from_json(const json& j, ContainmentReport& r) {
  get(j, "holds", r.holds);
  get(j, "points_checked", r.points_checked);
  get(j, "undecided", r.undecided);
  get(j, "witnesses", r.witnesses);
}

void to_json(json& j, const HypothesisChecks& c) {
  j = {{"psi", c.psi},
       {"gauges", c.gauges},
       {"containment", c.containment},
       {"containment_declared", c.containment_declared},
       {"ok", c.ok}};
  put(j, "phi", c.phi);
  put(j, "psi0", c.psi0);
}
void from_json(const json& j, HypothesisChecks& c) {
  get(j, "psi", c.psi);
  get(j, "gauges", c.gauges);
  get(j, "containment", c.containment);
  get(j, "containment_declared", c.containment_declared);
  get(j, "ok", c.ok);
  get(j, "phi", c.phi);
  get(j, "psi0", c.psi0);
}

void to_json(json& j, const InequalityTerms& t) {
  j = {{"lhs", t.lhs},
       {"alpha_term", t.alpha_term},
       {"beta_term", t.beta_term},
       {"gamma_term", t.gamma_term}};
}
void from_json(const json& j, InequalityTerms& t) {
  get(j, "lhs", t.lhs);
  get(j, "alpha_term", t.alpha_term);
  get(j, "beta_term", t.beta_term);
  get(j, "gamma_term", t.gamma_term);
}

void to_json(json& j, const ContractionCertificate& c) {
  j = {{"form", c.form},
       {"pairs_checked", c.pairs_checked},
       {"max_violation", c.max_violation},
       {"min_slack", c.min_slack},
       {"worst_pair", c.worst_pair},
       {"worst_terms", c.worst_terms},
       {"seed", c.seed},
       {"tolerance", c.tolerance},
       {"verdict", c.verdict}};
  put(j, "quadrature_tol", c.quadrature_tol);
  if (!c.slacks.empty()) j["slacks"] = c.slacks;
}
void from_json(const json& j, ContractionCertificate& c) {
  get(j, "form", c.form);
  get(j, "pairs_checked", c.pairs_checked);
  get(j, "max_violation", c.max_violation);
  get(j, "min_slack", c.min_slack);
  get(j, "worst_pair", c.worst_pair);
  get(j, "worst_terms", c.worst_terms);
  get(j, "seed", c.seed);
  get(j, "tolerance", c.tolerance);
  get(j, "verdict", c.verdict);
  get(j, "quadrature_tol", c.quadrature_tol);
  c.slacks.clear();
  if (auto it = j.find("slacks"); it != j.end()) it->get_to(c.slacks);
}

void to_json(json& j, const TraceSummary& t) {
  j = {{"status", t.status}, {"iterations", t.iterations}};
  put(j, "converged_at", t.converged_at);
  put(j, "failed_at", t.failed_at);
  put(j, "x0", t.x0);
  put(j, "limit", t.limit);
  put(j, "last_step", t.last_step);
  put(j, "step_ratio", t.step_ratio);
}
void from_json(const json& j, TraceSummary& t) {
  get(j, "status", t.status);
  get(j, "iterations", t.iterations);
  get(j, "converged_at", t.converged_at);
  get(j, "failed_at", t.failed_at);
  get(j, "x0", t.x0);
  get(j, "limit", t.limit);
  get(j, "last_step", t.last_step);
  get(j, "step_ratio", t.step_ratio);
}

void to_json(json& j, const PocResult& p) {
  j = {{"z", p.z},
       {"su_residual", p.su_residual},
       {"tu_residual", p.tu_residual},
       {"preimage", p.preimage}};
  put(j, "u", p.u);
  put(j, "poc", p.poc);
}
void from_json(const json& j, PocResult& p) {
  get(j, "z", p.z);
  get(j, "su_residual", p.su_residual);
  get(j, "tu_residual", p.tu_residual);
  get(j, "preimage", p.preimage);
  get(j, "u", p.u);
  get(j, "poc", p.poc);
}

void to_json(json& j, const CoincidenceResult& c) {
  j = {{"points", c.points}, {"identical_maps", c.identical_maps}};
}
void from_json(const json& j, CoincidenceResult& c) {
  get(j, "points", c.points);
  get(j, "identical_maps", c.identical_maps);
}

void to_json(json& j, const OwcResult& o) {
  j = {{"verdict", o.verdict}, {"commutator", o.commutator}};
  put(j, "witness", o.witness);
}
void from_json(const json& j, OwcResult& o) {
  get(j, "verdict", o.verdict);
  get(j, "commutator", o.commutator);
  get(j, "witness", o.witness);
}

void to_json(json& j, const EaResult& e) {
  j = {{"holds", e.holds},
       {"s_limit", e.s_limit},
       {"t_limit", e.t_limit},
       {"s_tail_gap", e.s_tail_gap},
       {"t_tail_gap", e.t_tail_gap}};
  put(j, "limit_estimate", e.limit_estimate);
}
void from_json(const json& j, EaResult& e) {
  get(j, "holds", e.holds);
  get(j, "s_limit", e.s_limit);
  get(j, "t_limit", e.t_limit);
  get(j, "s_tail_gap", e.s_tail_gap);
  get(j, "t_tail_gap", e.t_tail_gap);
  get(j, "limit_estimate", e.limit_estimate);
}

void to_json(json& j, const SolveSummary& s) {
  j = {{"route", s.route},
       {"trace", s.trace},
       {"poc", s.poc},
       {"coincidence_points", s.cps},
       {"owc", s.owc},
       {"cfp_s_residual", s.cfp_s_residual},
       {"cfp_t_residual", s.cfp_t_residual},
       {"uniqueness",
        {{"all_agree", s.uniqueness_all_agree},
         {"starts", s.uniqueness_starts},
         {"converged", s.uniqueness_converged},
         {"spread", s.uniqueness_spread}}},
       {"assumptions", s.assumptions},
       {"message", s.message}};
  put(j, "property_ea", s.ea);
  put(j, "common_fixed_point", s.common_fixed_point);
  put(j, "failed_stage", s.failed_stage);
  put(j, "matches_expected", s.matches_expected);
}
void from_json(const json& j, SolveSummary& s) {
  get(j, "route", s.route);
  get(j, "trace", s.trace);
  get(j, "poc", s.poc);
  get(j, "coincidence_points", s.cps);
  get(j, "owc", s.owc);
  get(j, "cfp_s_residual", s.cfp_s_residual);
  get(j, "cfp_t_residual", s.cfp_t_residual);
  const json& u = j.at("uniqueness");
  get(u, "all_agree", s.uniqueness_all_agree);
  get(u, "starts", s.uniqueness_starts);
  get(u, "converged", s.uniqueness_converged);
  get(u, "spread", s.uniqueness_spread);
  get(j, "assumptions", s.assumptions);
  get(j, "message", s.message);
  get(j, "property_ea", s.ea);
  get(j, "common_fixed_point", s.common_fixed_point);
  get(j, "failed_stage", s.failed_stage);
  get(j, "matches_expected", s.matches_expected);
}

// --------------------------------------------------------------------------

HypothesisChecks check_hypotheses(const Scenario& scenario, const CheckOptions& options) {
  const ContractionPair pair = make_contraction_pair(scenario);
  const Domain& dom = pair.domain();
  HypothesisChecks out;

  const SampleGrid psi_grid = sample_grid(Domain(0.0, 2.0 * dom.width()), options.psi_grid);
  out.psi = check_altering_distance(pair.psi(), psi_grid, options.refine_levels);

  const SampleGrid t_grid = sample_grid(Domain(0.0, dom.width()), options.gauge_grid);
  out.gauges = check_gauge_conditions(pair.gauges(), t_grid);

  if (pair.integral_phi()) {
    const std::vector<double> eps = {1e-3, 1e-1, dom.width()};
    out.phi = check_phi(*pair.integral_phi(), eps, options.quadrature_tol);
    if (out.phi->ok()) {
      const AlteringDistance psi0 = compose_integral(*pair.integral_phi(), options.quadrature_tol);
      out.psi0 = check_altering_distance(psi0, psi_grid, options.refine_levels);
    }
  }

  const SampleGrid grid =
      sample_grid(dom, options.preimage.scan_resolution).merged_with(pair.breakpoints());
  out.containment = check_range_containment(pair.s(), pair.t(), grid, options.preimage);
  out.containment_declared = scenario.declares(DeclaredFact::range_containment);

  out.ok = out.psi.ok() && out.gauges.ok() && (!out.phi || out.phi->ok()) &&
           (!out.psi0 || out.psi0->ok()) && (out.containment.holds || !out.containment_declared);
  return out;
}

TraceSummary summarize(const JungckTrace& trace) {
  TraceSummary s;
  s.status = trace.status;
  s.iterations = trace.iterations;
  s.converged_at = trace.converged_at;
  s.failed_at = trace.failed_at;
  if (!trace.x_seq.empty()) s.x0 = trace.x_seq.front();
  s.limit = trace.limit;
  if (!trace.step_dist.empty()) s.last_step = trace.step_dist.back();
  std::vector<double> ratios;
  for (std::size_t k = 1; k < trace.step_dist.size(); ++k) {
    if (trace.step_dist[k] > 0 && trace.step_dist[k - 1] > 0) {
      ratios.push_back(trace.step_dist[k] / trace.step_dist[k - 1]);
    }
  }
  if (!ratios.empty()) {
    auto mid = ratios.begin() + static_cast<std::ptrdiff_t>(ratios.size() / 2);
    std::nth_element(ratios.begin(), mid, ratios.end());
    s.step_ratio = *mid;
  }
  return s;
}

SolveSummary summarize(const SolveReport& r) {
  SolveSummary s;
  s.route = r.route;
  s.trace = summarize(r.trace);
  s.poc = r.poc;
  s.cps = r.cps;
  s.owc = r.owc;
  s.ea = r.ea;
  s.common_fixed_point = r.common_fixed_point;
  s.cfp_s_residual = r.cfp_s_residual;
  s.cfp_t_residual = r.cfp_t_residual;
  s.uniqueness_all_agree = r.uniqueness.all_agree;
  s.uniqueness_starts = r.uniqueness.runs.size();
  s.uniqueness_converged = r.uniqueness.converged;
  s.uniqueness_spread = r.uniqueness.spread;
  s.assumptions = r.assumptions;
  s.failed_stage = r.failed_stage;
  s.message = r.message;
  return s;
}

json to_json(const Report& r) {
  json j = {{"schema_version", kReportSchemaVersion},
            {"command", r.command},
            {"scenario", r.scenario},
            {"declared_facts", r.declared_facts},
            {"passed", r.passed},
            {"exit_status", r.exit_status}};
  put(j, "checks", r.checks);
  put(j, "certificate", r.certificate);
  put(j, "integral_certificate", r.integral_certificate);
  put(j, "solve", r.solve);
  return j;
}

Report report_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw Error("unsupported report schema_version " + j.at("schema_version").dump());
    }
    Report r;
    get(j, "command", r.command);
    get(j, "scenario", r.scenario);
    get(j, "declared_facts", r.declared_facts);
    get(j, "passed", r.passed);
    get(j, "exit_status", r.exit_status);
    get(j, "checks", r.checks);
    get(j, "certificate", r.certificate);
    get(j, "integral_certificate", r.integral_certificate);
    get(j, "solve", r.solve);
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

std::string dump_report(const Report& report) { return to_json(report).dump(2) + "\n"; }

void save_report(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write report " + path.string());
  out << dump_report(report);
  if (!out) throw Error("write failed for " + path.string());
}

Report load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open report " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("malformed report " + path.string() + ": " + e.what());
  }
  return report_from_json(j);
}

namespace {

void append_number(std::string& out, double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

}  // namespace

std::string trace_csv(const JungckTrace& trace) {
  std::string out = "n,x_n,y_n,step_dist\n";
  for (std::size_t n = 0; n < trace.y_seq.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    append_number(out, trace.x_seq[n]);
    out += ',';
    append_number(out, trace.y_seq[n]);
    out += ',';
    if (n < trace.step_dist.size()) append_number(out, trace.step_dist[n]);
    out += '\n';
  }
  return out;
}

void save_trace_csv(const JungckTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trace " + path.string());
  out << trace_csv(trace);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace jfp
