// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include "jfp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "jfp/error.hpp"

namespace jfp {

namespace {

constexpr double kDuplicateTol = 1e-15;
// Points this close outside the domain are rounding noise and get clamped.
constexpr double kBoundarySlack = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void sort_unique(std::vector<double>& points) {
  std::sort(points.begin(), points.end());
  auto last = std::unique(points.begin(), points.end(), [](double a, double b) {
    return std::abs(a - b) <= kDuplicateTol;
  });
  points.erase(last, points.end());
}

// Bisects a sign change of f on [a, b] to full double resolution.
template <class F>
double bisect_root(F&& f, double a, double b) {
  std::uintmax_t max_iter = 2200;
  auto never = [](double, double) { return false; };
  auto [lo, hi] = boost::math::tools::bisect(f, a, b, never, max_iter);
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

}  // namespace

Domain::Domain(double lo, double hi, bool lo_closed, bool hi_closed)
    : lo_(lo), hi_(hi), lo_closed_(lo_closed), hi_closed_(hi_closed) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument("Domain requires finite lo < hi, got [" + fmt(lo) + ", " +
                                fmt(hi) + "]");
  }
}

bool Domain::contains(double p) const noexcept {
  const bool above = lo_closed_ ? p >= lo_ : p > lo_;
  const bool below = hi_closed_ ? p <= hi_ : p < hi_;
  return above && below;
}

std::string Domain::to_string() const {
  return std::string(lo_closed_ ? "[" : "(") + fmt(lo_) + ", " + fmt(hi_) +
         (hi_closed_ ? "]" : ")");
}

ScalarMap::ScalarMap(Domain domain, Fn eval, std::string label, std::vector<double> breakpoints,
                     std::optional<Domain> declared_range)
    : domain_(domain),
      eval_(std::move(eval)),
      label_(std::move(label)),
      breakpoints_(std::move(breakpoints)),
      declared_range_(declared_range) {
  if (!eval_) throw std::invalid_argument("ScalarMap '" + label_ + "' has no evaluator");
  std::erase_if(breakpoints_, [&](double b) { return !domain_.contains(b); });
  sort_unique(breakpoints_);
}

double ScalarMap::operator()(double p) const {
  if (!domain_.contains(p)) {
    const double slack = kBoundarySlack * std::max(1.0, std::abs(p));
    if (p < domain_.lo() && domain_.lo() - p <= slack) {
      p = domain_.lo();
    } else if (p > domain_.hi() && p - domain_.hi() <= slack) {
      p = domain_.hi();
    } else if (!(p >= domain_.lo() && p <= domain_.hi())) {
      throw DomainError(label_ + ": point " + fmt(p) + " outside domain " + domain_.to_string());
    }
  }
  const double v = eval_(p);
  if (!std::isfinite(v)) {
    throw NonFiniteError(label_ + ": non-finite value at x=" + fmt(p), p);
  }
  return v;
}

ScalarMap ScalarMap::identity(const Domain& domain) {
  return ScalarMap(domain, [](double x) { return x; }, "identity");
}

SampleGrid::SampleGrid(Domain domain, std::vector<double> points, GridStrategy strategy,
                       std::uint64_t seed)
    : domain_(domain), points_(std::move(points)), strategy_(strategy), seed_(seed) {
  for (double p : points_) {
    if (!domain_.contains(p)) {
      throw std::invalid_argument("grid point " + fmt(p) + " outside " + domain_.to_string());
    }
  }
  sort_unique(points_);
}

SampleGrid SampleGrid::merged_with(std::span<const double> extra) const {
  std::vector<double> pts = points_;
  for (double p : extra) {
    if (domain_.contains(p)) pts.push_back(p);
  }
  return SampleGrid(domain_, std::move(pts), strategy_, seed_);
}

SampleGrid sample_grid(const Domain& domain, std::size_t n, GridStrategy strategy,
                       std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_grid needs n >= 2");
  if (strategy == GridStrategy::user_supplied) {
    throw std::invalid_argument("use user_grid() for user-supplied points");
  }
  // Open ends are not sampled; the grid steps one cell inside instead.
  const std::size_t lead = domain.lo_closed() ? 0 : 1;
  const std::size_t cells = (n - 1) + lead + (domain.hi_closed() ? 0 : 1);
  const double h = domain.width() / static_cast<double>(cells);

  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = i + lead;
    pts[i] = k == cells ? domain.hi() : domain.lo() + static_cast<double>(k) * h;
  }
  if (strategy == GridStrategy::uniform_jitter) {
    std::mt19937_64 engine(seed);
    for (std::size_t i = 0; i < n; ++i) {
      const bool pinned = (i == 0 && domain.lo_closed()) || (i + 1 == n && domain.hi_closed());
      const double shift = (unit_uniform(engine) - 0.5) * 0.5 * h;
      if (!pinned) pts[i] += shift;
    }
  }
  return SampleGrid(domain, std::move(pts), strategy, seed);
}

SampleGrid user_grid(const Domain& domain, std::vector<double> points) {
  if (points.empty()) throw std::invalid_argument("user grid is empty");
  return SampleGrid(domain, std::move(points), GridStrategy::user_supplied, 0);
}

PreimageSolver::PreimageSolver(const ScalarMap& map, const PreimageOptions& options)
    : map_(&map), options_(options) {
  SampleGrid grid = sample_grid(map.domain(), std::max<std::size_t>(options.scan_resolution, 2))
                        .merged_with(map.breakpoints());
  points_.assign(grid.points().begin(), grid.points().end());
  values_.reserve(points_.size());
  for (double p : points_) values_.push_back(map(p));
}

PreimageResult PreimageSolver::find(double value) const {
  const double tol = options_.rf_tol;
  bool saw_jump = false;
  const std::size_t n = points_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double gi = values_[i] - value;
    if (std::abs(gi) <= tol) return {PreimageStatus::found, points_[i], std::abs(gi)};
    if (i + 1 == n) break;
    const double gj = values_[i + 1] - value;
    if ((gi < 0 && gj > 0) || (gi > 0 && gj < 0)) {
      auto g = [&](double q) { return (*map_)(q) - value; };
      const double root = bisect_root(g, points_[i], points_[i + 1]);
      const double residual = std::abs(g(root));
      if (residual <= tol) return {PreimageStatus::found, root, residual};
      saw_jump = true;
    }
  }
  return {saw_jump ? PreimageStatus::undecided : PreimageStatus::none, 0.0, 0.0};
}

PreimageResult PreimageSolver::nearest(double value, double accept_tol) const {
  PreimageResult exact = find(value);
  if (exact.status == PreimageStatus::found) return exact;
  std::size_t best = 0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (std::abs(values_[i] - value) < std::abs(values_[best] - value)) best = i;
  }
  const double gap = std::abs(values_[best] - value);
  if (gap <= accept_tol) return {PreimageStatus::found, points_[best], gap};
  return exact;
}

PreimageResult find_preimage(const ScalarMap& map, double value, const PreimageOptions& options) {
  return PreimageSolver(map, options).find(value);
}

PreimageResult nearest_preimage(const ScalarMap& map, double value, double accept_tol,
                                const PreimageOptions& options) {
  return PreimageSolver(map, options).nearest(value, accept_tol);
}

ContainmentReport check_range_containment(const ScalarMap& s, const ScalarMap& t,
                                          const SampleGrid& grid,
                                          const PreimageOptions& options) {
  if (!(s.domain() == t.domain())) {
    throw std::invalid_argument("S and T must share one domain");
  }
  const PreimageSolver solver(t, options);
  ContainmentReport report;
  for (double p : grid.points()) {
    const double sv = s(p);
    const PreimageResult r = solver.find(sv);
    ++report.points_checked;
    if (r.status == PreimageStatus::found) continue;
    if (r.status == PreimageStatus::undecided) ++report.undecided;
    report.witnesses.push_back({p, sv, r.status});
  }
  report.holds = report.witnesses.empty();
  return report;
}

std::optional<double> check_declared_range(const ScalarMap& map, const SampleGrid& grid) {
  if (!map.declared_range()) return std::nullopt;
  for (double p : grid.points()) {
    if (!map.declared_range()->contains(map(p))) return p;
  }
  return std::nullopt;
}

const char* to_string(PreimageStatus s) noexcept {
  switch (s) {
    case PreimageStatus::found: return "found";
    case PreimageStatus::none: return "none";
    case PreimageStatus::undecided: return "undecided";
  }
  return "unknown";
}

}  // namespace jfp
