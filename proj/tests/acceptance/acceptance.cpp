// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "jfp/contraction.hpp"
#include "jfp/gauges.hpp"
#include "jfp/jungck.hpp"
#include "jfp/report.hpp"
#include "jfp/scenario.hpp"
#include "jfp_tools/cli.hpp"
#include "properties.hpp"

namespace {

using namespace jfp;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct CliRun {
  int status;
  std::string out;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jungck-fp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str() + err.str()};
}

std::string g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Outcome example3_end_to_end() {
  Outcome o;
  const CliRun run = cli({"solve", "example3", "--format", "structured"});
  o.require(run.status == 0, "solve exit status " + std::to_string(run.status));
  const Report r = report_from_json(nlohmann::json::parse(run.out));
  const SolveSummary& s = *r.solve;
  o.require(s.common_fixed_point && std::abs(*s.common_fixed_point - 2.0 / 3) <= 1e-9,
            "common fixed point not within 1e-9 of 2/3");
  o.require(s.owc.verdict == OwcVerdict::holds && s.owc.witness &&
                std::abs(*s.owc.witness - 2.0 / 3) <= 1e-9,
            "OWC does not hold at 2/3");
  o.require(s.ea && s.ea->holds, "(E.A.) does not hold");
  o.require(s.ea && s.ea->limit_estimate && std::abs(*s.ea->limit_estimate - 2.0 / 3) <= 1e-3,
            "(E.A.) limit not within 1e-3 of 2/3");
  if (o.ok) {
    o.detail = "cfp = " + g(*s.common_fixed_point) + ", (E.A.) limit = " +
               g(*s.ea->limit_estimate) + ", OWC at " + g(*s.owc.witness);
  }
  return o;
}

Outcome example2_end_to_end() {
  Outcome o;
  const Scenario sc = *find_builtin("example2");
  const HypothesisChecks checks = check_hypotheses(sc);
  o.require(checks.gauges.ok(), "gauge check failed");
  o.require(std::abs(checks.gauges.max_ratio - 0.5) <= 1e-12,
            "max_ratio = " + g(checks.gauges.max_ratio));
  const ContractionPair pair = make_contraction_pair(sc);
  CertifyOptions co;
  co.n_pairs = 10000;
  const ContractionCertificate cert = certify(pair, co);
  o.require(cert.pairs_checked == 10000 && cert.verdict == CertificateVerdict::certified,
            "certificate violated by " + g(cert.max_violation));
  SolveOptions so;
  so.complete_range = sc.declares(DeclaredFact::complete_range);
  const SolveReport rep = solve(pair, so);
  o.require(rep.common_fixed_point && std::abs(*rep.common_fixed_point) <= 1e-10,
            "no common fixed point at 0");
  if (o.ok) {
    o.detail = "max_ratio = " + g(checks.gauges.max_ratio) + ", min slack = " +
               g(cert.min_slack) + ", cfp = " + g(*rep.common_fixed_point);
  }
  return o;
}

Outcome printed_gauges_rejected() {
  Outcome o;
  const CliRun run = cli({"check", "example1_as_printed"});
  o.require(run.status == 2, "exit status " + std::to_string(run.status));
  o.require(run.out.find("gauge sum 1.25 > 1 at every sampled t") != std::string::npos,
            "message lacks the gauge sum");
  const HypothesisChecks checks = check_hypotheses(*find_builtin("example1_as_printed"));
  o.require(checks.gauges.sum_failures == checks.gauges.points_checked,
            "sum < 1 at some sampled t");
  if (o.ok) {
    o.detail = "exit 2, sum 1.25 at " + std::to_string(checks.gauges.points_checked) + "/" +
               std::to_string(checks.gauges.points_checked) + " samples";
  }
  return o;
}

Outcome example1_corrected_iteration() {
  Outcome o;
  const ContractionPair pair = make_contraction_pair(*find_builtin("example1_corrected"));
  const JungckTrace tr = iterate(pair, 1.0);
  o.require(tr.x_seq.size() > 10, "trace shorter than 11 terms");
  double worst = 0.0;
  for (std::size_t n = 0; n <= 10 && n < tr.x_seq.size(); ++n) {
    worst = std::max(worst, std::abs(tr.x_seq[n] - std::pow(8.0, -static_cast<double>(n))));
  }
  o.require(worst <= 1e-12, "x_n deviates from 8^-n by " + g(worst));
  double worst_ratio = 0.0;
  for (std::size_t n = 1; n <= 10 && n < tr.step_dist.size(); ++n) {
    worst_ratio = std::max(worst_ratio, std::abs(tr.step_dist[n] / tr.step_dist[n - 1] - 0.125));
  }
  o.require(worst_ratio <= 1e-10, "step ratio deviates from 1/8 by " + g(worst_ratio));
  const SampleGrid starts = sample_grid(pair.domain(), 100);
  const UniquenessResult u = uniqueness_probe(pair, starts.points());
  o.require(u.converged == 100 && u.spread <= 1e-10, "uniqueness spread " + g(u.spread));
  if (o.ok) {
    o.detail = "max |x_n - 8^-n| = " + g(worst) + ", max |ratio - 1/8| = " + g(worst_ratio) +
               ", spread over 100 starts = " + g(u.spread);
  }
  return o;
}

Outcome integral_reduction() {
  Outcome o;
  Scenario sc = *find_builtin("example2");
  sc.phi = Expr::parse("1", "t");
  const ContractionPair pair = make_contraction_pair(sc);
  CertifyOptions co;
  co.keep_slacks = true;
  const ContractionCertificate plain = certify(pair, co);
  const ContractionCertificate integral = certify_integral(pair, co);
  o.require(plain.verdict == integral.verdict, "verdicts differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < plain.slacks.size(); ++i) {
    worst = std::max(worst, std::abs(plain.slacks[i] - integral.slacks[i]));
  }
  o.require(plain.slacks.size() == integral.slacks.size() && worst <= 1e-10,
            "per-pair slack differs by " + g(worst));

  const IntegrandPhi two_t{[](double t) { return 2 * t; }, "2t"};
  const AlteringDistance psi0 = compose_integral(two_t);
  double worst_psi0 = 0.0;
  for (double s : {0.1, 0.5, 1.0, 2.0}) worst_psi0 = std::max(worst_psi0, std::abs(psi0(s) - s * s));
  o.require(worst_psi0 <= 1e-10, "psi0(s) deviates from s^2 by " + g(worst_psi0));
  const SampleGrid grid = sample_grid(Domain(0, 2), 64);
  o.require(check_altering_distance(psi0, grid).ok(), "psi0 fails an axiom");
  const AlteringDistance composed = compose(psi0, {[](double t) { return t * t; }, "t^2"});
  o.require(check_altering_distance(composed, grid).ok(), "psi0 o psi fails an axiom");
  if (o.ok) {
    o.detail = "max slack gap = " + g(worst) + ", max |psi0(s) - s^2| = " + g(worst_psi0);
  }
  return o;
}

Outcome cauchy_witness_oracle() {
  Outcome o;
  std::vector<double> h(10000);
  double acc = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = acc += 1.0 / static_cast<double>(i + 1);
  const auto w = extract_cauchy_witness(h, 0.5, 20);
  o.require(w && w->size() >= 10, "fewer than 10 witnesses");
  if (w) {
    for (std::size_t i = 0; i < w->size(); ++i) {
      const auto [m, n] = w->indices[i];
      // Brute-force reference: smallest n > k with a far point, then smallest m.
      std::size_t rn = 0, rm = 0;
      for (std::size_t a = w->k[i] + 1; a < h.size() && rm == 0; ++a) {
        for (std::size_t b = a + 1; b < h.size(); ++b) {
          if (std::abs(h[b] - h[a]) >= 0.5) {
            rn = a;
            rm = b;
            break;
          }
        }
      }
      o.require(std::abs(h[m] - h[n]) >= 0.5 && std::abs(h[m - 1] - h[n]) < 0.5,
                "witness " + std::to_string(i) + " violates the gap conditions");
      o.require(m == rm && n == rn, "witness " + std::to_string(i) + " differs from brute force");
    }
  }
  const ContractionPair pair = make_contraction_pair(*find_builtin("example1_corrected"));
  const JungckTrace tr = iterate(pair, 1.0);
  o.require(!extract_cauchy_witness(tr.y_seq, 0.01, 5).has_value(),
            "witness found on a convergent trace");
  if (o.ok) o.detail = std::to_string(w->size()) + " harmonic witnesses, none on the trace";
  return o;
}

Outcome property_suite() {
  Outcome o;
  const props::Tally t = props::run_all(20261017);
  o.require(t.assertions >= 100000, "only " + std::to_string(t.assertions) + " assertions");
  o.require(t.failures == 0, std::to_string(t.failures) + " failures");
  for (const auto& f : t.first_failures) o.require(false, f);
  if (o.ok) o.detail = std::to_string(t.assertions) + " assertions, 0 failures";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double budget_s;  ///< 0 means no runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "example3 end-to-end", example3_end_to_end, 1.0},
      {2, "example2 end-to-end", example2_end_to_end, 5.0},
      {3, "printed example1 gauges rejected", printed_gauges_rejected, 0.0},
      {4, "example1 corrected iteration", example1_corrected_iteration, 0.0},
      {5, "integral reduction", integral_reduction, 0.0},
      {6, "Cauchy witness oracle", cauchy_witness_oracle, 0.0},
      {7, "property suite", property_suite, 0.0},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.ok = false;
      o.detail += "; runtime over " + g(c.budget_s) + " s";
    }
    failed += o.ok ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.3f s]\n", o.ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
