// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include "jfp_tools/cli.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

#include <CLI11.hpp>

#include "jfp/contraction.hpp"
#include "jfp/error.hpp"
#include "jfp/gauges.hpp"
#include "jfp/jungck.hpp"
#include "jfp/report.hpp"
#include "jfp/scenario.hpp"

namespace jfp::cli {
namespace {

constexpr double kDefaultSolveTol = 1e-10;
constexpr double kDefaultCertificateTol = 1e-12;
constexpr std::size_t kMaxWitnessLines = 5;

std::string num(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string num(std::optional<double> v) { return v ? num(*v) : std::string("-"); }

const char* pass_fail(bool ok) { return ok ? "ok" : "FAILED"; }

Scenario resolve_scenario(const std::string& ref) {
  if (ref.empty()) throw ScenarioError("no scenario given (name from `catalog` or a file path)");
  if (auto builtin = find_builtin(ref)) return *builtin;
  if (std::filesystem::exists(ref)) return load_scenario(ref);
  throw ScenarioError("unknown scenario '" + ref + "': not a catalog name or a readable file");
}

std::vector<std::string> declared_names(const Scenario& sc) {
  std::vector<std::string> out;
  for (DeclaredFact f : sc.declared_facts) out.emplace_back(to_string(f));
  return out;
}

CheckOptions check_options(const CliConfig& cfg) {
  CheckOptions opts;
  opts.preimage.rf_tol = cfg.rf_tol;
  return opts;
}

// ---- human rendering -------------------------------------------------------

void print_witnesses(std::ostream& out, const std::vector<AxiomFailure>& ws) {
  for (std::size_t i = 0; i < ws.size() && i < kMaxWitnessLines; ++i) {
    out << "    witness: " << ws[i].detail << " at t = " << num(ws[i].t)
        << " (value " << num(ws[i].value) << ")\n";
  }
  if (ws.size() > kMaxWitnessLines) {
    out << "    ... " << ws.size() - kMaxWitnessLines << " more\n";
  }
}

void print_checks(std::ostream& out, const HypothesisChecks& c) {
  out << "psi axioms: " << pass_fail(c.psi.ok()) << " (psi1 " << pass_fail(c.psi.psi1)
      << ", psi2 " << pass_fail(c.psi.psi2) << ", psi3 " << pass_fail(c.psi.psi3) << ")\n";
  print_witnesses(out, c.psi.witnesses);

  const GaugeReport& g = c.gauges;
  out << "gauges: " << pass_fail(g.ok()) << "\n"
      << "  max alpha+beta+gamma = " << num(g.max_sum) << " (" << g.sum_failures << " of "
      << g.points_checked << " sampled t at or above 1)\n"
      << "  limsup gamma at 0+ = " << num(g.max_gamma0) << "\n"
      << "  max ratio (alpha+beta)/(1-gamma) = " << num(g.max_ratio) << "\n";
  if (!g.sum_ok) {
    out << "  gauge sum " << num(g.max_sum) << " > 1";
    if (g.sum_failures == g.points_checked) out << " at every sampled t";
    out << "\n";
  }
  print_witnesses(out, g.witnesses);

  if (c.phi) {
    out << "phi: " << pass_fail(c.phi->ok()) << "\n";
    print_witnesses(out, c.phi->witnesses);
  }
  if (c.psi0) {
    out << "psi0 (integral of phi) axioms: " << pass_fail(c.psi0->ok()) << "\n";
    print_witnesses(out, c.psi0->witnesses);
  }

  const ContainmentReport& k = c.containment;
  out << "S(M) in T(M): " << (k.holds ? "holds" : "fails") << " on " << k.points_checked
      << " points" << (c.containment_declared ? "" : " (not declared; informational)") << "\n";
  for (std::size_t i = 0; i < k.witnesses.size() && i < kMaxWitnessLines; ++i) {
    out << "    witness: S(" << num(k.witnesses[i].point) << ") = " << num(k.witnesses[i].s_value)
        << " has no T-preimage (" << to_string(k.witnesses[i].status) << ")\n";
  }
  out << "hypotheses: " << (c.ok ? "all pass" : "FAILED") << "\n";
}

void print_certificate(std::ostream& out, const ContractionCertificate& c) {
  out << to_string(c.form) << " certificate: " << to_string(c.verdict) << "\n"
      << "  pairs checked = " << c.pairs_checked << ", seed = " << c.seed
      << ", tolerance = " << num(c.tolerance) << "\n"
      << "  min slack = " << num(c.min_slack) << ", max violation = " << num(c.max_violation)
      << "\n"
      << "  worst pair (x, y) = (" << num(c.worst_pair.first) << ", " << num(c.worst_pair.second)
      << ")\n"
      << "    lhs psi(d(Sx,Sy))        = " << num(c.worst_terms.lhs) << "\n"
      << "    alpha * psi(d(Tx,Ty))    = " << num(c.worst_terms.alpha_term) << "\n"
      << "    beta  * psi(d(Sx,Tx))    = " << num(c.worst_terms.beta_term) << "\n"
      << "    gamma * psi(d(Sy,Ty))    = " << num(c.worst_terms.gamma_term) << "\n";
}

void print_solve(std::ostream& out, const SolveSummary& s) {
  out << "route: " << to_string(s.route) << "\n";
  const TraceSummary& t = s.trace;
  out << "trace: " << to_string(t.status) << " after " << t.iterations << " iterations from x0 = "
      << num(t.x0) << ", limit = " << num(t.limit) << ", last step = " << num(t.last_step)
      << ", step ratio = " << num(t.step_ratio) << "\n";
  if (s.ea) {
    out << "property (E.A.): " << (s.ea->holds ? "holds" : "fails")
        << ", limit estimate = " << num(s.ea->limit_estimate) << " (S -> " << num(s.ea->s_limit)
        << ", T -> " << num(s.ea->t_limit) << ")\n";
  }
  out << "point of coincidence z = " << num(s.poc.z) << ", u = " << num(s.poc.u)
      << " (|Su - z| = " << num(s.poc.su_residual) << ", |Tu - z| = " << num(s.poc.tu_residual)
      << ")\n";
  out << "coincidence points:";
  if (s.cps.identical_maps) out << " S = T on the grid;";
  for (double p : s.cps.points) out << " " << num(p);
  out << "\n";
  out << "OWC: " << to_string(s.owc.verdict);
  if (s.owc.witness) {
    out << " at " << num(*s.owc.witness) << " (|STx - TSx| = " << num(s.owc.commutator) << ")";
  }
  out << "\n";
  out << "uniqueness probe: " << s.uniqueness_converged << " of " << s.uniqueness_starts
      << " starts converged, spread = " << num(s.uniqueness_spread) << "\n";
  if (!s.assumptions.empty()) {
    out << "assumed (declared):";
    for (const auto& a : s.assumptions) out << " " << a;
    out << "\n";
  }
  if (s.common_fixed_point) {
    out << "common fixed point w = " << num(*s.common_fixed_point)
        << " (|Sw - w| = " << num(s.cfp_s_residual) << ", |Tw - w| = " << num(s.cfp_t_residual)
        << ")\n";
  } else {
    out << "no common fixed point published";
    if (s.failed_stage) out << "; failed at stage '" << *s.failed_stage << "'";
    out << "\n";
  }
  if (!s.message.empty()) out << "note: " << s.message << "\n";
  if (s.matches_expected) {
    out << "expected value: " << (*s.matches_expected ? "matches" : "MISMATCH") << "\n";
  }
}

// ---- command bodies ---------------------------------------------------------

struct Outcome {
  Report report;
  std::optional<JungckTrace> trace;
};

void run_check(const Scenario& sc, const CliConfig& cfg, Report& r) {
  r.checks = check_hypotheses(sc, check_options(cfg));
}

bool run_certify(const Scenario& sc, const CliConfig& cfg, Report& r) {
  const ContractionPair pair = make_contraction_pair(sc);
  CertifyOptions opts;
  opts.n_pairs = cfg.n_pairs;
  opts.seed = cfg.seed;
  opts.tolerance = cfg.tol.value_or(kDefaultCertificateTol);
  r.certificate = certify(pair, opts);
  bool ok = r.certificate->verdict == CertificateVerdict::certified;
  if (pair.integral_phi()) {
    r.integral_certificate = certify_integral(pair, opts);
    ok = ok && r.integral_certificate->verdict == CertificateVerdict::certified;
  }
  return ok;
}

bool run_solve(const Scenario& sc, const CliConfig& cfg, Outcome& o) {
  const ContractionPair pair = make_contraction_pair(sc);
  const double tol = cfg.tol.value_or(kDefaultSolveTol);
  SolveOptions opts;
  opts.x0 = cfg.x0;
  opts.iterate.tol = tol;
  opts.iterate.max_iters = cfg.max_iters;
  opts.iterate.step.rf_tol = cfg.rf_tol;
  opts.complete_range = sc.declares(DeclaredFact::complete_range);
  opts.closed_range = sc.declares(DeclaredFact::closed_range);
  if (sc.ea_sequence) opts.ea_sequence = sc.ea_sequence->terms();

  const SolveReport rep = solve(pair, opts);
  SolveSummary summary = summarize(rep);
  bool ok = summary.common_fixed_point.has_value();
  if (sc.expected.cfp) {
    const double want = (*sc.expected.cfp)(0.0);
    summary.matches_expected =
        summary.common_fixed_point && std::abs(*summary.common_fixed_point - want) <= 10.0 * tol;
    ok = ok && *summary.matches_expected;
  }
  o.report.solve = std::move(summary);
  o.trace = rep.trace;
  return ok;
}

std::filesystem::path trace_path_for(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p.replace_extension();
  p += ".trace.csv";
  return p;
}

int emit(const CliConfig& cfg, const Outcome& o, std::ostream& out) {
  if (cfg.format == Format::structured) out << dump_report(o.report);
  if (cfg.output_path) {
    save_report(o.report, *cfg.output_path);
    if (o.trace) save_trace_csv(*o.trace, trace_path_for(*cfg.output_path));
  }
  return o.report.exit_status;
}

int list_catalog(const CliConfig& cfg, std::ostream& out) {
  if (!cfg.scenario.empty()) {
    const Scenario sc = resolve_scenario(cfg.scenario);
    out << dump_scenario(sc);
    if (cfg.output_path) save_scenario(sc, *cfg.output_path);
    return kExitOk;
  }
  if (cfg.format == Format::structured) {
    nlohmann::json j = nlohmann::json::array();
    for (const Scenario& sc : builtin_catalog()) {
      j.push_back({{"name", sc.name}, {"description", sc.description}});
    }
    out << nlohmann::json{{"schema_version", kCatalogVersion}, {"scenarios", j}}.dump(2) << "\n";
  } else {
    for (const Scenario& sc : builtin_catalog()) {
      out << sc.name << "\n    " << sc.description << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int execute(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == Command::catalog) return list_catalog(cfg, out);

    const Scenario sc = resolve_scenario(cfg.scenario);
    const bool human = cfg.format == Format::human;
    Outcome o;
    Report& r = o.report;
    r.scenario = sc.name;
    r.declared_facts = declared_names(sc);
    bool ok = true;

    if (human) out << "scenario: " << sc.name << "\n";

    switch (cfg.command) {
      case Command::check:
        r.command = "check";
        run_check(sc, cfg, r);
        if (human) print_checks(out, *r.checks);
        ok = r.checks->ok;
        break;

      case Command::certify:
        r.command = "certify";
        if (!cfg.force) {
          run_check(sc, cfg, r);
          if (!r.checks->ok) {
            if (human) {
              print_checks(out, *r.checks);
              out << "hypotheses failed; not certifying (use --force to override)\n";
            }
            ok = false;
            break;
          }
        }
        ok = run_certify(sc, cfg, r);
        if (human) {
          print_certificate(out, *r.certificate);
          if (r.integral_certificate) print_certificate(out, *r.integral_certificate);
        }
        break;

      case Command::solve:
        r.command = "solve";
        ok = run_solve(sc, cfg, o);
        if (human) print_solve(out, *r.solve);
        break;

      case Command::report:
        r.command = "report";
        run_check(sc, cfg, r);
        ok = r.checks->ok;
        ok = run_certify(sc, cfg, r) && ok;
        ok = run_solve(sc, cfg, o) && ok;
        if (human) {
          print_checks(out, *r.checks);
          print_certificate(out, *r.certificate);
          if (r.integral_certificate) print_certificate(out, *r.integral_certificate);
          print_solve(out, *r.solve);
        }
        break;

      case Command::catalog:
        break;
    }

    r.passed = ok;
    r.exit_status = ok ? kExitOk : kExitFailure;
    if (human) out << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    return emit(cfg, o, out);
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NonFiniteError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks and solvers for psi-(alpha,beta,gamma) contraction pairs",
               "jungck-fp"};
  app.require_subcommand(1);

  CliConfig cfg;
  if (const char* env = std::getenv("JUNGCK_FP_SEED")) {
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cfg.seed);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      err << "error: JUNGCK_FP_SEED must be a non-negative integer, got '" << env << "'\n";
      return kExitInputError;
    }
  }

  std::string format = "human";
  std::string positional;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("name", positional, "Catalog name or scenario file");
    sub->add_option("--scenario", cfg.scenario, "Catalog name or scenario file");
    sub->add_option("--output", cfg.output_path, "Write the structured report to this path");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"human", "structured"}));
  };
  auto add_numeric = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "Convergence / certificate tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rf-tol", cfg.rf_tol, "Root-finding tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Sampling seed (default 42 or $JUNGCK_FP_SEED)");
  };

  auto* check = app.add_subcommand("check", "Check the hypotheses of a scenario");
  add_common(check);
  add_numeric(check);

  auto* certify_cmd = app.add_subcommand("certify", "Sample the contractive inequality");
  add_common(certify_cmd);
  add_numeric(certify_cmd);
  certify_cmd->add_option("--n-pairs", cfg.n_pairs, "Number of sampled pairs")
      ->check(CLI::PositiveNumber);
  certify_cmd->add_flag("--force", cfg.force, "Certify even when the hypothesis check fails");

  auto* solve_cmd = app.add_subcommand("solve", "Find the common fixed point");
  add_common(solve_cmd);
  add_numeric(solve_cmd);
  solve_cmd->add_option("--max-iters", cfg.max_iters, "Iteration budget")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--x0", cfg.x0, "Starting point (default: domain midpoint)");

  auto* report = app.add_subcommand("report", "Run check, certify and solve together");
  add_common(report);
  add_numeric(report);
  report->add_option("--n-pairs", cfg.n_pairs, "Number of sampled pairs")
      ->check(CLI::PositiveNumber);
  report->add_option("--max-iters", cfg.max_iters, "Iteration budget")
      ->check(CLI::PositiveNumber);
  report->add_option("--x0", cfg.x0, "Starting point (default: domain midpoint)");

  auto* catalog = app.add_subcommand("catalog", "List built-in scenarios or dump one");
  add_common(catalog);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (!positional.empty() && !cfg.scenario.empty() && positional != cfg.scenario) {
    err << "error: scenario given both positionally and with --scenario\n";
    return kExitInputError;
  }
  if (!positional.empty()) cfg.scenario = positional;
  cfg.format = format == "structured" ? Format::structured : Format::human;

  if (app.got_subcommand(check)) cfg.command = Command::check;
  if (app.got_subcommand(certify_cmd)) cfg.command = Command::certify;
  if (app.got_subcommand(solve_cmd)) cfg.command = Command::solve;
  if (app.got_subcommand(report)) cfg.command = Command::report;
  if (app.got_subcommand(catalog)) cfg.command = Command::catalog;

  return execute(cfg, out, err);
}

}  // namespace jfp::cli
