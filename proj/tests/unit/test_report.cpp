// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "jfp/error.hpp"
#include "jfp/report.hpp"
#include "fixtures.hpp"

namespace jfp {
namespace {

Report full_report() {
  const Scenario sc = *find_builtin("example2_integral");
  const ContractionPair pair = make_contraction_pair(sc);
  Report r;
  r.command = "report";
  r.scenario = sc.name;
  r.declared_facts = {"complete_range", "range_containment"};
  r.checks = check_hypotheses(sc);
  CertifyOptions o;
  o.n_pairs = 64;
  o.keep_slacks = true;
  r.certificate = certify(pair, o);
  r.integral_certificate = certify_integral(pair, o);
  SolveOptions so;
  so.complete_range = true;
  r.solve = summarize(solve(pair, so));
  r.solve->matches_expected = true;
  r.passed = true;
  return r;
}

TEST(HypothesisChecks, CatalogVerdicts) {
  EXPECT_TRUE(check_hypotheses(*find_builtin("example2")).ok);
  EXPECT_TRUE(check_hypotheses(*find_builtin("example2_integral")).psi0.has_value());
  const HypothesisChecks printed = check_hypotheses(*find_builtin("example1_as_printed"));
  EXPECT_FALSE(printed.ok);
  EXPECT_DOUBLE_EQ(printed.gauges.max_sum, 1.25);

  const HypothesisChecks ex3 = check_hypotheses(*find_builtin("example3"));
  EXPECT_FALSE(ex3.containment.holds);
  EXPECT_FALSE(ex3.containment_declared);
  EXPECT_TRUE(ex3.ok);
}

TEST(Report, JsonRoundTripIsExact) {
  const Report r = full_report();
  const Report again = report_from_json(to_json(r));
  EXPECT_EQ(again, r);
  EXPECT_EQ(dump_report(again), dump_report(r));
}

TEST(Report, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "jfp_report_roundtrip.json";
  const Report r = full_report();
  save_report(r, path);
  EXPECT_EQ(load_report(path), r);
  std::filesystem::remove(path);
}

TEST(Report, AbsentSectionsOmitted) {
  Report r;
  r.command = "check";
  r.scenario = "x";
  const nlohmann::json j = to_json(r);
  EXPECT_FALSE(j.contains("certificate"));
  EXPECT_FALSE(j.contains("solve"));
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(report_from_json(j), r);
}

TEST(Report, KeysAreSorted) {
  const std::string text = dump_report(full_report());
  const auto c = text.find("\"command\"");
  const auto d = text.find("\"declared_facts\"");
  const auto s = text.find("\"schema_version\"");
  EXPECT_LT(c, d);
  EXPECT_LT(d, s);
}

TEST(Report, WrongSchemaRejected) {
  nlohmann::json j = to_json(Report{});
  j["schema_version"] = 2;
  EXPECT_THROW((void)report_from_json(j), Error);
  j["schema_version"] = 1;
  j.erase("command");
  EXPECT_THROW((void)report_from_json(j), Error);
}

TEST(TraceCsv, HeaderAndRows) {
  const JungckTrace tr = iterate(testing::linear_pair(0.125, 0.125, 0.125), 1.0);
  const std::string csv = trace_csv(tr);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,x_n,y_n,step_dist");
  std::getline(in, line);
  EXPECT_EQ(line, "0,1,0.0625,0.0546875");
  std::size_t rows = 0;
  std::string last;
  do {
    ++rows;
    last = line;
  } while (std::getline(in, line));
  EXPECT_EQ(rows, tr.y_seq.size());
  EXPECT_EQ(last.back(), ',');
}

TEST(Summaries, TraceRatioIsMedian) {
  const JungckTrace tr = iterate(testing::linear_pair(0.125, 0.125, 0.125), 1.0);
  const TraceSummary s = summarize(tr);
  ASSERT_TRUE(s.step_ratio.has_value());
  EXPECT_NEAR(*s.step_ratio, 0.125, 1e-10);
  EXPECT_EQ(s.x0, 1.0);
  EXPECT_EQ(s.status, TraceStatus::converged);
}

}  // namespace
}  // namespace jfp
