// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jfp/contraction.hpp"
#include "jfp/error.hpp"
#include "jfp/metric.hpp"

namespace jfp {

/// S(x_n) has no T-preimage on the scan grid.
class PreimageFailure : public Error {
 public:
  PreimageFailure(const std::string& what_arg, double value, PreimageStatus status)
      : Error(what_arg), value_(value), status_(status) {}
  [[nodiscard]] double value() const noexcept { return value_; }
  [[nodiscard]] PreimageStatus status() const noexcept { return status_; }

 private:
  double value_;
  PreimageStatus status_;
};

struct StepOptions {
  /// Closed-form T^{-1}; its output is still checked against rf_tol.
  std::optional<RealFn> inverse;
  double rf_tol = 1e-12;
  std::size_t scan_resolution = kDefaultScanResolution;
};

/// One Jungck step: x_{n+1} with T(x_{n+1}) = S(x_n), smallest preimage in
/// domain order. Throws PreimageFailure.
double jungck_step(const ContractionPair& pair, double x_n, const StepOptions& options = {});

enum class TraceStatus { converged, max_iters, preimage_failed };

/// y_n = S x_n = T x_{n+1}.
struct JungckTrace {
  std::vector<double> x_seq;
  std::vector<double> y_seq;
  std::vector<double> step_dist;  ///< d(y_n, y_{n+1})
  TraceStatus status = TraceStatus::max_iters;
  std::optional<double> limit;
  std::size_t iterations = 0;                ///< Jungck steps performed
  std::optional<std::size_t> converged_at;   ///< first index of the confirmation window
  std::optional<std::size_t> failed_at;      ///< index n whose S(x_n) had no preimage
};

struct IterateOptions {
  double tol = 1e-10;
  std::size_t max_iters = 1'000'000;
  /// Consecutive steps below tol required to declare convergence.
  std::size_t window = 3;
  StepOptions step;
};

/// Runs the Jungck iteration from x0 until `window` consecutive step
/// distances are below tol, or max_iters steps. A missing preimage ends the
/// trace with status preimage_failed instead of throwing.
JungckTrace iterate(const ContractionPair& pair, double x0, const IterateOptions& options = {});

struct PocResult {
  std::optional<double> u;    ///< T(u) = z
  std::optional<double> poc;  ///< z, published when S(u) = z within tol
  double z = 0.0;
  double su_residual = 0.0;   ///< |S(u) - z|
  double tu_residual = 0.0;   ///< |T(u) - z|
  PreimageStatus preimage = PreimageStatus::none;

  friend bool operator==(const PocResult&, const PocResult&) = default;
};

/// Solves T(u) = z for the trace limit z and tests S(u) = z.
PocResult extract_poc(const ContractionPair& pair, const JungckTrace& trace, double rf_tol = 1e-12,
                      double tol = 1e-10);

/// Same, for a limit z known only to `accept_tol` (e.g. from a probe
/// sequence): u is the nearest scan preimage and z is replaced by T(u).
PocResult extract_poc_near(const ContractionPair& pair, double z, double accept_tol,
                           double rf_tol = 1e-12, double tol = 1e-10);

struct CoincidenceResult {
  std::vector<double> points;  ///< approximations of C(S,T), sorted
  bool identical_maps = false; ///< |S - T| vanished on the whole grid

  friend bool operator==(const CoincidenceResult&, const CoincidenceResult&) = default;
};

/// Zeros of S - T: grid hits plus bisected sign changes; the pair's
/// breakpoints are merged into the grid.
CoincidenceResult find_coincidence_points(const ContractionPair& pair, const SampleGrid& grid,
                                          double rf_tol = 1e-12);

enum class OwcVerdict { holds, fails, no_cp_found };

struct OwcResult {
  OwcVerdict verdict = OwcVerdict::no_cp_found;
  std::optional<double> witness;  ///< the CP where S and T commute
  double commutator = 0.0;        ///< smallest |S(T(cp)) - T(S(cp))| seen

  friend bool operator==(const OwcResult&, const OwcResult&) = default;
};

OwcResult check_owc(const ContractionPair& pair, std::span<const double> cps, double tol);

struct EaResult {
  bool holds = false;
  std::optional<double> limit_estimate;
  double s_limit = 0.0;
  double t_limit = 0.0;
  double s_tail_gap = 0.0;  ///< largest successive gap in the last 5 S-values
  double t_tail_gap = 0.0;

  friend bool operator==(const EaResult&, const EaResult&) = default;
};

/// Tests lim S(x_n) = lim T(x_n) along a candidate sequence: both tails
/// must settle (gaps < tol) and their extrapolated limits agree within
/// 10*tol. Throws std::invalid_argument for fewer than 10 terms.
EaResult check_property_ea(const ContractionPair& pair, std::span<const double> seq, double tol);

/// Limit estimate from the tail of a sequence. Picks, by how well it
/// predicts the last term, between the last value, geometric (Aitken)
/// extrapolation and extrapolation for tails of the form L + c/(n+b).
double extrapolate_limit(std::span<const double> seq);

struct ProbeRun {
  double start = 0.0;
  TraceStatus status = TraceStatus::max_iters;
  std::optional<double> limit;
  std::size_t iterations = 0;

  friend bool operator==(const ProbeRun&, const ProbeRun&) = default;
};

struct UniquenessResult {
  bool all_agree = false;
  std::size_t converged = 0;
  double spread = 0.0;  ///< max pairwise distance between converged limits
  std::vector<ProbeRun> runs;

  friend bool operator==(const UniquenessResult&, const UniquenessResult&) = default;
};

/// Iterates from every start. all_agree requires at least one converged run
/// and every converged limit within 10*tol of the first.
UniquenessResult uniqueness_probe(const ContractionPair& pair, std::span<const double> starts,
                                  const IterateOptions& options = {});

/// Index pairs with m(k) > n(k) > k, d(x_m, x_n) >= eps0 and
/// d(x_{m-1}, x_n) < eps0.
struct CauchyWitness {
  double eps0 = 0.0;
  std::vector<std::size_t> k;
  std::vector<std::pair<std::size_t, std::size_t>> indices;  ///< (m(k), n(k))
  std::vector<double> gap_at_witness;  ///< d(x_m, x_n)
  std::vector<double> gap_before;      ///< d(x_{m-1}, x_n)
  std::vector<double> gap_shifted;     ///< d(x_{m-1}, x_{n+1})

  [[nodiscard]] std::size_t size() const noexcept { return k.size(); }
};

/// For k = 1..k_max takes the smallest n(k) > k admitting some m > n with
/// d(x_m, x_n) >= eps0, and the smallest such m. Returns nullopt when no k
/// has a witness in the prefix. Throws std::invalid_argument for eps0 <= 0
/// or a prefix shorter than k_max + 2.
std::optional<CauchyWitness> extract_cauchy_witness(std::span<const double> seq, double eps0,
                                                    std::size_t k_max);

// --------------------------------------------------------------------------
// Full pipeline

enum class SolveRoute { none, jungck_iteration, property_ea };

struct SolveOptions {
  std::optional<double> x0;  ///< defaults to the domain midpoint
  IterateOptions iterate;
  std::size_t n_starts = 16;
  std::size_t cp_grid = kDefaultScanResolution;
  /// Candidate sequence for the property (E.A.) probe.
  std::vector<double> ea_sequence;
  double ea_tol = 1e-4;
  /// Facts the caller vouches for; numerics cannot decide them.
  bool complete_range = false;
  bool closed_range = false;
};

struct SolveReport {
  SolveRoute route = SolveRoute::none;
  ContainmentReport containment;
  JungckTrace trace;
  PocResult poc;
  CoincidenceResult cps;
  OwcResult owc;
  std::optional<EaResult> ea;
  std::optional<double> common_fixed_point;
  double cfp_s_residual = 0.0;  ///< |S(w) - w|
  double cfp_t_residual = 0.0;  ///< |T(w) - w|
  UniquenessResult uniqueness;
  std::vector<std::string> assumptions;  ///< declared facts the route relied on
  std::optional<std::string> failed_stage;
  std::string message;
};

/// Runs the existence pipeline. With S(M) ⊆ T(M) on the sample grid and a
/// complete T(M), the Jungck iteration produces z; otherwise, with a closed
/// T(M) and an (E.A.) sequence, z is the common limit along that sequence.
/// Then u with Tu = z, C(S,T), the OWC probe and, when both succeed,
/// w = z is published as the common fixed point.
SolveReport solve(const ContractionPair& pair, const SolveOptions& options = {});

const char* to_string(TraceStatus s) noexcept;
const char* to_string(OwcVerdict v) noexcept;
const char* to_string(SolveRoute r) noexcept;

}  // namespace jfp
