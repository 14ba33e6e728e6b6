// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "jfp/report.hpp"
#include "jfp_tools/cli.hpp"

namespace jfp::cli {
namespace {

const std::filesystem::path kData = JFP_TEST_DATA_DIR;

struct Invocation {
  int status;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "jungck-fp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

TEST(Cli, CheckPrintedGaugesFails) {
  const Invocation r = invoke({"check", "example1_as_printed"});
  EXPECT_EQ(r.status, kExitFailure);
  EXPECT_TRUE(contains(r.out, "gauge sum 1.25 > 1 at every sampled t")) << r.out;
}

TEST(Cli, CheckExample2Passes) {
  EXPECT_EQ(invoke({"check", "example2"}).status, kExitOk);
  EXPECT_EQ(invoke({"check", "--scenario", "example2"}).status, kExitOk);
}

TEST(Cli, GammaOneIsInputError) {
  const Invocation r = invoke({"check", (kData / "gamma_one.json").string()});
  EXPECT_EQ(r.status, kExitInputError);
  EXPECT_TRUE(contains(r.err, "gamma"));
}

TEST(Cli, UnknownScenarioAndFlagsAreInputErrors) {
  EXPECT_EQ(invoke({"check", "no_such_scenario"}).status, kExitInputError);
  EXPECT_EQ(invoke({"check", "example2", "--bogus"}).status, kExitInputError);
  EXPECT_EQ(invoke({"certify", "example2", "--n-pairs", "0"}).status, kExitInputError);
  EXPECT_EQ(invoke({"solve", "example2", "--tol", "-1"}).status, kExitInputError);
  EXPECT_EQ(invoke({"check", "example2", "--format", "xml"}).status, kExitInputError);
  EXPECT_EQ(invoke({}).status, kExitInputError);
}

TEST(Cli, CertifyExample2) {
  const Invocation r = invoke({"certify", "example2", "--n-pairs", "10000", "--seed", "42"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_TRUE(contains(r.out, "min slack"));
  EXPECT_TRUE(contains(r.out, "alpha * psi(d(Tx,Ty))"));
}

TEST(Cli, CertifyExample3) { EXPECT_EQ(invoke({"certify", "example3"}).status, kExitOk); }

TEST(Cli, CertifyIdentityPairFails) {
  const auto path = (kData / "identity_pair.json").string();
  const Invocation r = invoke({"certify", path});
  EXPECT_EQ(r.status, kExitFailure);
  EXPECT_TRUE(contains(r.out, "worst pair (x, y) = (0, 1)")) << r.out;
}

TEST(Cli, CertifyRefusesFailedHypothesesWithoutForce) {
  const Invocation r = invoke({"certify", "example1_as_printed"});
  EXPECT_EQ(r.status, kExitFailure);
  EXPECT_TRUE(contains(r.out, "--force"));
  EXPECT_EQ(invoke({"certify", "example1_as_printed", "--force", "--n-pairs", "500"}).status,
            kExitOk);
}

TEST(Cli, SolveCatalogScenarios) {
  for (const char* name : {"example1_corrected", "example2", "example3", "example2_integral"}) {
    const Invocation r = invoke({"solve", name});
    EXPECT_EQ(r.status, kExitOk) << name << "\n" << r.out << r.err;
    EXPECT_TRUE(contains(r.out, "common fixed point w =")) << name;
  }
}

TEST(Cli, SolveWritesReportAndTrace) {
  const auto dir = std::filesystem::temp_directory_path() / "jfp_cli_solve";
  std::filesystem::create_directories(dir);
  const auto report = dir / "ex1.json";
  const Invocation r = invoke({"solve", "example1_corrected", "--x0", "1", "--output", report.string()});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const Report loaded = load_report(report);
  ASSERT_TRUE(loaded.solve.has_value());
  EXPECT_NEAR(*loaded.solve->trace.step_ratio, 0.125, 1e-10);
  std::ifstream csv(dir / "ex1.trace.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "n,x_n,y_n,step_dist");
  std::filesystem::remove_all(dir);
}

TEST(Cli, StructuredOutputParsesForEveryCommand) {
  for (const char* cmd : {"check", "certify", "solve", "report"}) {
    std::vector<std::string> args = {cmd, "example3", "--format", "structured"};
    if (std::string(cmd) == "certify" || std::string(cmd) == "report") {
      args.insert(args.end(), {"--n-pairs", "200"});
    }
    const Invocation r = invoke(args);
    EXPECT_EQ(r.status, kExitOk) << cmd << r.err;
    const Report rep = report_from_json(nlohmann::json::parse(r.out));
    EXPECT_EQ(rep.command, cmd);
    EXPECT_EQ(rep.exit_status, r.status);
  }
}

TEST(Cli, StructuredOutputIsDeterministic) {
  const std::vector<std::string> args = {"report", "example2", "--format", "structured",
                                         "--n-pairs", "1000", "--seed", "7"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("JUNGCK_FP_SEED", "9", 1);
  const Invocation env = invoke({"certify", "example2", "--format", "structured", "--n-pairs", "300"});
  ::setenv("JUNGCK_FP_SEED", "nine", 1);
  const Invocation bad = invoke({"check", "example2"});
  ::unsetenv("JUNGCK_FP_SEED");
  EXPECT_EQ(report_from_json(nlohmann::json::parse(env.out)).certificate->seed, 9u);
  EXPECT_EQ(bad.status, kExitInputError);
  const Invocation flag = invoke({"certify", "example2", "--format", "structured", "--n-pairs", "300",
                           "--seed", "11"});
  EXPECT_EQ(report_from_json(nlohmann::json::parse(flag.out)).certificate->seed, 11u);
}

TEST(Cli, CatalogListsAndDumps) {
  const Invocation list = invoke({"catalog"});
  EXPECT_EQ(list.status, kExitOk);
  EXPECT_TRUE(contains(list.out, "example3"));
  const Invocation dump = invoke({"catalog", "example3"});
  EXPECT_EQ(dump.status, kExitOk);
  EXPECT_TRUE(contains(dump.out, "\"ea_sequence\""));
}

TEST(Cli, HelpExitsCleanly) { EXPECT_EQ(invoke({"--help"}).status, kExitOk); }

}  // namespace
}  // namespace jfp::cli
