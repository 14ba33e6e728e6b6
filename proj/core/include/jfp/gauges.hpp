// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jfp/metric.hpp"

namespace jfp {

/// Margin used for every strict "< 1" and "> 0" comparison.
inline constexpr double kStrictMargin = 1e-12;

using RealFn = std::function<double(double)>;

/// ψ: R+ -> R+, continuous, non-decreasing, vanishing only at 0.
struct AlteringDistance {
  RealFn psi;
  std::string label;

  double operator()(double t) const { return psi(t); }
};

/// φ: R+ -> R+ with positive integral over every [0, ε].
struct IntegrandPhi {
  RealFn phi;
  std::string label;

  double operator()(double t) const { return phi(t); }
};

/// Contractive parameters α, β, γ: R+ -> [0, 1).
struct GaugeTriple {
  RealFn alpha;
  RealFn beta;
  RealFn gamma;
  std::string label;
};

struct AxiomFailure {
  double t;       ///< where the axiom failed
  double value;   ///< offending value
  std::string detail;

  friend bool operator==(const AxiomFailure&, const AxiomFailure&) = default;
};

struct AlteringDistanceReport {
  bool psi1 = true;  ///< ψ(t) = 0 iff t = 0
  bool psi2 = true;  ///< non-decreasing
  bool psi3 = true;  ///< continuous (sampled)
  std::vector<AxiomFailure> witnesses;
  /// Largest step |ψ(t_{i+1}) - ψ(t_i)| at each dyadic refinement level.
  std::vector<double> oscillation;
  /// Oscillation extrapolated to zero spacing; a jump shows up here.
  double jump_estimate = 0.0;

  [[nodiscard]] bool ok() const noexcept { return psi1 && psi2 && psi3; }

  friend bool operator==(const AlteringDistanceReport&, const AlteringDistanceReport&) = default;
};

/// Checks (Ψ1)-(Ψ3) on a grid in [0, t_max]. Continuity is judged from the
/// largest grid step over `refine_levels` halvings of the spacing: the
/// sequence is extrapolated to zero spacing and must not settle at a
/// positive value. Throws NonFiniteError on a non-finite ψ value.
AlteringDistanceReport check_altering_distance(const AlteringDistance& ad, const SampleGrid& grid,
                                               int refine_levels = 3);

/// Decreasing offsets 1e-1, 1e-2, ..., 1e-8 used to probe right limits.
std::vector<double> default_approach_offsets();

struct GaugeReport {
  bool sum_ok = true;
  bool gamma0_ok = true;
  bool ratio_ok = true;
  double max_sum = 0.0;        ///< sup of α+β+γ over grid points
  double max_gamma0 = 0.0;     ///< sup of γ(h) over the offsets
  double max_ratio = 0.0;      ///< sup of (α+β)/(1-γ) observed
  double gamma0_margin = 0.0;  ///< 1 - max_gamma0
  double ratio_margin = 0.0;   ///< 1 - max_ratio
  std::size_t sum_failures = 0;
  std::size_t points_checked = 0;
  std::vector<AxiomFailure> witnesses;

  [[nodiscard]] bool ok() const noexcept { return sum_ok && gamma0_ok && ratio_ok; }

  friend bool operator==(const GaugeReport&, const GaugeReport&) = default;
};

/// Checks α+β+γ < 1 on the grid and samples both right-limsup side
/// conditions at t+h for the offsets h. Throws std::domain_error if γ >= 1
/// anywhere it is evaluated.
GaugeReport check_gauge_conditions(const GaugeTriple& gauges, const SampleGrid& t_grid,
                                   std::span<const double> approach_offsets);
GaugeReport check_gauge_conditions(const GaugeTriple& gauges, const SampleGrid& t_grid);

/// (α+β)/(1-γ) at t.
double gauge_ratio(const GaugeTriple& gauges, double t);

struct PhiReport {
  bool phi2 = true;  ///< φ >= 0 on the sampled range
  bool phi3 = true;  ///< ∫_0^ε φ > 0 for every listed ε
  std::vector<AxiomFailure> witnesses;

  [[nodiscard]] bool ok() const noexcept { return phi2 && phi3; }

  friend bool operator==(const PhiReport&, const PhiReport&) = default;
};

/// Integrable-positivity checks for φ. (Φ1) summability is not checked.
PhiReport check_phi(const IntegrandPhi& phi, std::span<const double> eps_list,
                    double quadrature_tol = 1e-10);

/// ∫_a^b φ by adaptive Gauss-Kronrod with absolute error <= abs_tol.
/// Throws QuadratureError when the estimate misses the tolerance.
double integrate(const RealFn& f, double a, double b, double abs_tol);

/// ψ0(s) = ∫_0^s φ(t) dt as an altering distance. ψ0(0) is exactly 0.
AlteringDistance compose_integral(const IntegrandPhi& phi, double quadrature_tol = 1e-10);

/// ψ0 ∘ ψ.
AlteringDistance compose(const AlteringDistance& outer, const AlteringDistance& inner);

}  // namespace jfp
