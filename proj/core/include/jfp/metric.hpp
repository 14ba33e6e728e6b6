// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jfp {

/// Default number of scan cells used when searching for preimages.
inline constexpr std::size_t kDefaultScanResolution = 1024;

/// A real interval M = [lo, hi] (or with open ends) carrying the Euclidean
/// metric. Immutable after construction.
class Domain {
 public:
  Domain(double lo, double hi, bool lo_closed = true, bool hi_closed = true);

  [[nodiscard]] double lo() const noexcept { return lo_; }
  [[nodiscard]] double hi() const noexcept { return hi_; }
  [[nodiscard]] bool lo_closed() const noexcept { return lo_closed_; }
  [[nodiscard]] bool hi_closed() const noexcept { return hi_closed_; }
  [[nodiscard]] double width() const noexcept { return hi_ - lo_; }
  [[nodiscard]] double midpoint() const noexcept { return lo_ + (hi_ - lo_) / 2; }

  [[nodiscard]] bool contains(double p) const noexcept;

  /// "[a, b]", "(a, b]", ...
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  double lo_;
  double hi_;
  bool lo_closed_;
  bool hi_closed_;
};

/// d(a, b) = |a - b|.
[[nodiscard]] inline double distance(double a, double b) noexcept {
  return a < b ? b - a : a - b;
}

/// An evaluable selfmap of a Domain. `breakpoints` lists the points where a
/// piecewise definition switches branch; scan grids always include them.
class ScalarMap {
 public:
  using Fn = std::function<double(double)>;

  ScalarMap(Domain domain, Fn eval, std::string label,
            std::vector<double> breakpoints = {},
            std::optional<Domain> declared_range = std::nullopt);

  /// Evaluates the map. Throws DomainError when `p` is outside the domain
  /// and NonFiniteError on NaN/inf output.
  double operator()(double p) const;

  [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  [[nodiscard]] const std::optional<Domain>& declared_range() const noexcept {
    return declared_range_;
  }

  static ScalarMap identity(const Domain& domain);

 private:
  Domain domain_;
  Fn eval_;
  std::string label_;
  std::vector<double> breakpoints_;
  std::optional<Domain> declared_range_;
};

enum class GridStrategy { uniform, uniform_jitter, user_supplied };

/// Sorted, duplicate-free sample points inside a domain.
class SampleGrid {
 public:
  SampleGrid(Domain domain, std::vector<double> points, GridStrategy strategy,
             std::uint64_t seed);

  [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
  [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] GridStrategy strategy() const noexcept { return strategy_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  /// Returns a copy with `extra` merged in (points outside the domain are
  /// ignored).
  [[nodiscard]] SampleGrid merged_with(std::span<const double> extra) const;

 private:
  Domain domain_;
  std::vector<double> points_;
  GridStrategy strategy_;
  std::uint64_t seed_;
};

/// Builds an n-point grid. Closed endpoints are included; open ends are
/// stepped away from by one cell. uniform_jitter perturbs interior points
/// by at most a quarter cell, deterministically in `seed`.
/// Throws std::invalid_argument when n < 2.
SampleGrid sample_grid(const Domain& domain, std::size_t n,
                       GridStrategy strategy = GridStrategy::uniform,
                       std::uint64_t seed = 0);

/// Validates and sorts user points into a grid.
SampleGrid user_grid(const Domain& domain, std::vector<double> points);

/// Uniform double in [0, 1) from a 64-bit engine; stable across standard
/// libraries (unlike std::uniform_real_distribution).
template <class Engine>
double unit_uniform(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

enum class PreimageStatus { found, none, undecided };

const char* to_string(PreimageStatus s) noexcept;

struct PreimageResult {
  PreimageStatus status = PreimageStatus::none;
  double point = 0.0;     ///< valid when status == found
  double residual = 0.0;  ///< |T(point) - value|

  friend bool operator==(const PreimageResult&, const PreimageResult&) = default;
};

struct PreimageOptions {
  std::size_t scan_resolution = kDefaultScanResolution;
  double rf_tol = 1e-12;
};

/// Caches a scan of T over its domain (uniform grid plus breakpoints) so
/// repeated preimage queries only bisect. The map must outlive the solver.
class PreimageSolver {
 public:
  PreimageSolver(const ScalarMap& map, const PreimageOptions& options = {});

  [[nodiscard]] PreimageResult find(double value) const;
  [[nodiscard]] PreimageResult nearest(double value, double accept_tol) const;

  [[nodiscard]] const ScalarMap& map() const noexcept { return *map_; }

 private:
  const ScalarMap* map_;
  PreimageOptions options_;
  std::vector<double> points_;
  std::vector<double> values_;
};

/// Smallest q in domain order with |T(q) - value| <= rf_tol. Scans T on a
/// uniform grid plus its breakpoints, accepting exact grid hits and
/// bisecting sign changes. A sign change whose bisection limit misses the
/// tolerance (a jump in T) makes the result `undecided` unless a later
/// cell yields a root.
PreimageResult find_preimage(const ScalarMap& map, double value,
                             const PreimageOptions& options = {});

/// Like find_preimage, but when no exact preimage exists returns the scan
/// point minimising |T(q) - value| provided that distance is <= accept_tol.
PreimageResult nearest_preimage(const ScalarMap& map, double value, double accept_tol,
                                const PreimageOptions& options = {});

struct ContainmentWitness {
  double point;       ///< grid point p
  double s_value;     ///< S(p)
  PreimageStatus status;

  friend bool operator==(const ContainmentWitness&, const ContainmentWitness&) = default;
};

struct ContainmentReport {
  bool holds = true;
  std::size_t points_checked = 0;
  std::vector<ContainmentWitness> witnesses;  ///< failing or undecided points
  std::size_t undecided = 0;

  friend bool operator==(const ContainmentReport&, const ContainmentReport&) = default;
};

/// Checks S(M) ⊆ T(M) at every grid point: S(p) must have a T-preimage.
ContainmentReport check_range_containment(const ScalarMap& s, const ScalarMap& t,
                                          const SampleGrid& grid,
                                          const PreimageOptions& options = {});

/// Samples the map on `grid` and returns the first point whose value leaves
/// the declared range, if any.
std::optional<double> check_declared_range(const ScalarMap& map, const SampleGrid& grid);

}  // namespace jfp
