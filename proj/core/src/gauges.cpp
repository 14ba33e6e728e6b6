// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include "jfp/gauges.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "jfp/error.hpp"

namespace jfp {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double finite_or_throw(double v, double t, const std::string& what) {
  if (!std::isfinite(v)) throw NonFiniteError(what + ": non-finite value at t=" + fmt(t), t);
  return v;
}

// Extrapolates the last three oscillation levels to zero spacing.
double extrapolate_jump(std::span<const double> osc, double floor) {
  const std::size_t n = osc.size();
  const double last = osc[n - 1];
  if (last <= floor) return 0.0;
  if (n < 3) {
    return last > 0.9 * osc.front() ? last : 0.0;
  }
  const double d1 = osc[n - 2] - osc[n - 3];
  const double d2 = last - osc[n - 2];
  if (d2 >= 0) return last;
  if (d1 < 0 && d2 > d1) {
    return std::clamp(last - d2 * d2 / (d2 - d1), 0.0, last);
  }
  return 0.0;
}

}  // namespace

AlteringDistanceReport check_altering_distance(const AlteringDistance& ad, const SampleGrid& grid,
                                               int refine_levels) {
  if (refine_levels < 1) throw std::invalid_argument("refine_levels must be >= 1");
  std::vector<double> ts(grid.points().begin(), grid.points().end());
  if (ts.front() < 0) throw std::invalid_argument("altering distance grid must lie in [0, t_max]");

  AlteringDistanceReport rep;
  auto eval = [&](double t) { return finite_or_throw(ad(t), t, ad.label); };

  const double at_zero = eval(0.0);
  if (std::abs(at_zero) > kStrictMargin) {
    rep.psi1 = false;
    rep.witnesses.push_back({0.0, at_zero, "psi1: psi(0) != 0"});
  }

  std::vector<double> vs;
  vs.reserve(ts.size());
  for (double t : ts) vs.push_back(eval(t));

  double scale = 1.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    scale = std::max(scale, std::abs(vs[i]));
    if (ts[i] > 0 && vs[i] <= 0 && rep.psi1) {
      rep.psi1 = false;
      rep.witnesses.push_back({ts[i], vs[i], "psi1: psi(t) <= 0 for t > 0"});
    }
  }
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (vs[i + 1] < vs[i] - kStrictMargin * std::max(1.0, std::abs(vs[i]))) {
      rep.psi2 = false;
      rep.witnesses.push_back({ts[i + 1], vs[i + 1],
                               "psi2: decrease from psi(" + fmt(ts[i]) + ")=" + fmt(vs[i])});
      break;
    }
  }

  auto max_step = [](const std::vector<double>& v) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) m = std::max(m, std::abs(v[i + 1] - v[i]));
    return m;
  };
  rep.oscillation.push_back(max_step(vs));
  for (int level = 0; level < refine_levels; ++level) {
    std::vector<double> rt;
    std::vector<double> rv;
    rt.reserve(2 * ts.size());
    rv.reserve(2 * ts.size());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const double mid = ts[i] + (ts[i + 1] - ts[i]) / 2;
      rt.push_back(ts[i]);
      rv.push_back(vs[i]);
      rt.push_back(mid);
      rv.push_back(eval(mid));
    }
    rt.push_back(ts.back());
    rv.push_back(vs.back());
    ts = std::move(rt);
    vs = std::move(rv);
    rep.oscillation.push_back(max_step(vs));
  }
  const double floor = kStrictMargin * scale;
  rep.jump_estimate = extrapolate_jump(rep.oscillation, floor);
  const double finest = rep.oscillation.back();
  if (finest > floor && rep.jump_estimate > 0.5 * finest) {
    rep.psi3 = false;
    // Locate the widest remaining step for the witness.
    std::size_t at = 0;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      if (std::abs(vs[i + 1] - vs[i]) > std::abs(vs[at + 1] - vs[at])) at = i;
    }
    rep.witnesses.push_back({ts[at], rep.jump_estimate, "psi3: oscillation does not vanish"});
  }
  return rep;
}

std::vector<double> default_approach_offsets() {
  return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
}

double gauge_ratio(const GaugeTriple& g, double t) {
  const double c = g.gamma(t);
  if (!(c < 1.0)) {
    throw std::domain_error(g.label + ": gamma(" + fmt(t) + ") = " + fmt(c) + " is not < 1");
  }
  return (g.alpha(t) + g.beta(t)) / (1.0 - c);
}

GaugeReport check_gauge_conditions(const GaugeTriple& g, const SampleGrid& t_grid,
                                   std::span<const double> offsets) {
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (!(offsets[i] > 0) || (i > 0 && !(offsets[i] < offsets[i - 1]))) {
      throw std::invalid_argument("approach offsets must be positive and decreasing");
    }
  }
  GaugeReport rep;
  auto gauge = [&](const RealFn& f, double t, const char* name) {
    return finite_or_throw(f(t), t, g.label + "." + name);
  };
  auto ratio_at = [&](double t) {
    const double c = gauge(g.gamma, t, "gamma");
    if (!(c < 1.0)) {
      throw std::domain_error(g.label + ": gamma(" + fmt(t) + ") = " + fmt(c) + " is not < 1");
    }
    return (gauge(g.alpha, t, "alpha") + gauge(g.beta, t, "beta")) / (1.0 - c);
  };
  const double bound = 1.0 - kStrictMargin;

  bool first_sum = true;
  for (double t : t_grid.points()) {
    ++rep.points_checked;
    const double a = gauge(g.alpha, t, "alpha");
    const double b = gauge(g.beta, t, "beta");
    const double c = gauge(g.gamma, t, "gamma");
    if (!(c < 1.0)) {
      throw std::domain_error(g.label + ": gamma(" + fmt(t) + ") = " + fmt(c) + " is not < 1");
    }
    const double sum = a + b + c;
    rep.max_sum = std::max(rep.max_sum, sum);
    const bool codomain = a >= 0 && a < 1 && b >= 0 && b < 1 && c >= 0;
    if (!(sum < bound) || !codomain) {
      rep.sum_ok = false;
      ++rep.sum_failures;
      if (first_sum) {
        rep.witnesses.push_back({t, sum, codomain ? "sum: alpha+beta+gamma >= 1"
                                                  : "codomain: a gauge leaves [0,1)"});
        first_sum = false;
      }
    }
    rep.max_ratio = std::max(rep.max_ratio, ratio_at(t));
  }

  for (double h : offsets) {
    const double c = gauge(g.gamma, h, "gamma");
    rep.max_gamma0 = std::max(rep.max_gamma0, c);
  }
  rep.gamma0_margin = 1.0 - rep.max_gamma0;
  if (!(rep.max_gamma0 < bound)) {
    rep.gamma0_ok = false;
    rep.witnesses.push_back({0.0, rep.max_gamma0, "gamma0: limsup gamma(s), s->0+, is not < 1"});
  }

  for (double t : t_grid.points()) {
    if (!(t > 0)) continue;
    double local = 0.0;
    for (double h : offsets) local = std::max(local, ratio_at(t + h));
    rep.max_ratio = std::max(rep.max_ratio, local);
    if (!(local < bound) && rep.ratio_ok) {
      rep.ratio_ok = false;
      rep.witnesses.push_back({t, local, "ratio: limsup (alpha+beta)/(1-gamma) is not < 1"});
    }
  }
  rep.ratio_margin = 1.0 - rep.max_ratio;
  return rep;
}

GaugeReport check_gauge_conditions(const GaugeTriple& gauges, const SampleGrid& t_grid) {
  const auto offsets = default_approach_offsets();
  return check_gauge_conditions(gauges, t_grid, offsets);
}

double integrate(const RealFn& f, double a, double b, double abs_tol) {
  if (!(abs_tol > 0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (a == b) return 0.0;
  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  auto g = [&](double t) { return finite_or_throw(f(t), t, "integrand"); };
  double err = 0.0;
  double l1 = 0.0;
  double value = Quad::integrate(g, a, b, 10, 1e-6, &err, &l1);
  if (err > abs_tol) {
    const double rel = std::max(abs_tol / std::max(l1, abs_tol), 1e-15);
    value = Quad::integrate(g, a, b, 18, rel, &err, &l1);
  }
  if (!(err <= abs_tol)) {
    throw QuadratureError("quadrature over [" + fmt(a) + ", " + fmt(b) + "] reached error " +
                              fmt(err) + " > " + fmt(abs_tol),
                          b);
  }
  return value;
}

PhiReport check_phi(const IntegrandPhi& phi, std::span<const double> eps_list,
                    double quadrature_tol) {
  if (eps_list.empty()) throw std::invalid_argument("check_phi needs at least one epsilon");
  double top = 0.0;
  for (double e : eps_list) {
    if (!(e > 0)) throw std::invalid_argument("check_phi epsilons must be positive");
    top = std::max(top, e);
  }
  PhiReport rep;
  SampleGrid grid = sample_grid(Domain(0.0, top), 1025).merged_with(eps_list);
  for (double t : grid.points()) {
    const double v = finite_or_throw(phi(t), t, phi.label);
    if (v < 0) {
      rep.phi2 = false;
      rep.witnesses.push_back({t, v, "phi2: phi(t) < 0"});
      break;
    }
  }
  for (double e : eps_list) {
    const double area = integrate(phi.phi, 0.0, e, quadrature_tol);
    if (!(area > 1e-14)) {
      rep.phi3 = false;
      rep.witnesses.push_back({e, area, "phi3: integral over [0, eps] is not positive"});
      break;
    }
  }
  return rep;
}

AlteringDistance compose_integral(const IntegrandPhi& phi, double quadrature_tol) {
  if (!(quadrature_tol > 0)) throw std::invalid_argument("quadrature tolerance must be positive");
  auto f = phi.phi;
  auto psi0 = [f, quadrature_tol](double s) {
    if (s == 0.0) return 0.0;
    if (s < 0) throw std::domain_error("psi0 is defined on [0, inf), got " + fmt(s));
    try {
      return integrate(f, 0.0, s, quadrature_tol);
    } catch (const QuadratureError& e) {
      throw QuadratureError(std::string("psi0(") + fmt(s) + "): " + e.what(), s);
    }
  };
  return {psi0, "int_0^s " + phi.label};
}

AlteringDistance compose(const AlteringDistance& outer, const AlteringDistance& inner) {
  auto o = outer.psi;
  auto i = inner.psi;
  return {[o, i](double t) { return o(i(t)); }, outer.label + " o " + inner.label};
}

}  // namespace jfp
