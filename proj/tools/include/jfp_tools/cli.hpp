// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace jfp::cli {

enum class Command { check, certify, solve, report, catalog };
enum class Format { human, structured };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitInputError = 3;

struct CliConfig {
  Command command = Command::check;
  std::string scenario;  ///< catalog name or path to a scenario file
  std::optional<double> tol;
  double rf_tol = 1e-12;
  std::size_t n_pairs = 10000;
  std::uint64_t seed = 42;
  std::size_t max_iters = 1000000;
  std::optional<double> x0;
  std::optional<std::string> output_path;
  Format format = Format::human;
  bool force = false;
};

/// Parses the command line and runs the selected command. Never throws;
/// returns 0 on success, 2 when a hypothesis or goal fails and 3 on input
/// errors (bad flags, unreadable or invalid scenario).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int execute(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace jfp::cli
