// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

// Hand-built pairs used as independent references for the catalog entries.

#pragma once

#include <cmath>
#include <string>

#include "jfp/contraction.hpp"
#include "jfp/gauges.hpp"
#include "jfp/metric.hpp"

namespace jfp::testing {

inline AlteringDistance square_psi() {
  return {[](double t) { return t * t; }, "t^2"};
}

inline GaugeTriple constant_gauges(double a, double b, double c) {
  return {[a](double) { return a; }, [b](double) { return b; }, [c](double) { return c; },
          "constant"};
}

/// Sx = x/16, Tx = x/2 on [0,1], psi = t^2.
inline ContractionPair linear_pair(double a, double b, double c) {
  const Domain m(0.0, 1.0);
  return ContractionPair(ScalarMap(m, [](double x) { return x / 16; }, "x/16"),
                         ScalarMap(m, [](double x) { return x / 2; }, "x/2"), square_psi(),
                         constant_gauges(a, b, c));
}

/// S = 0 on [0,1/2], 1/16 on (1/2,1]; Tx = x/2.
inline ContractionPair step_pair(std::optional<IntegrandPhi> phi = std::nullopt) {
  const Domain m(0.0, 1.0);
  ScalarMap s(m, [](double x) { return x <= 0.5 ? 0.0 : 1.0 / 16; }, "step", {0.5});
  ScalarMap t(m, [](double x) { return x / 2; }, "x/2");
  return ContractionPair(std::move(s), std::move(t), square_psi(),
                         constant_gauges(1.0 / 8, 1.0 / 4, 1.0 / 4), std::move(phi));
}

/// Piecewise pair on [1/2,1] whose coincidence point is 2/3.
inline ContractionPair two_thirds_pair() {
  const Domain m(0.5, 1.0);
  const double b = 2.0 / 3;
  ScalarMap s(m, [b](double x) { return x < b ? 0.5 : 1 - x / 2; }, "S3", {b});
  ScalarMap t(m, [b](double x) { return x < b ? 1.0 : x; }, "T3", {b});
  return ContractionPair(std::move(s), std::move(t), square_psi(),
                         constant_gauges(0.25, 0.25, 0.125));
}

inline ContractionPair identity_pair() {
  const Domain m(0.0, 1.0);
  return ContractionPair(ScalarMap::identity(m), ScalarMap::identity(m),
                         {[](double t) { return t; }, "t"}, constant_gauges(0.25, 0.25, 0.25));
}

}  // namespace jfp::testing
