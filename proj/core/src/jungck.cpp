// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include "jfp/jungck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

namespace jfp {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Computes x_{n+1} from S(x_n), reusing one scan of T.
class Stepper {
 public:
  Stepper(const ContractionPair& pair, const StepOptions& options)
      : pair_(pair),
        options_(options),
        solver_(pair.t(), PreimageOptions{options.scan_resolution, options.rf_tol}) {}

  double next(double sx) const {
    if (options_.inverse) {
      const double q = (*options_.inverse)(sx);
      const double residual = pair_.domain().contains(q) ? distance(pair_.t()(q), sx) : INFINITY;
      if (!(residual <= options_.rf_tol)) {
        throw PreimageFailure("supplied inverse of T missed S(x_n) = " + fmt(sx) + " (residual " +
                                  fmt(residual) + ")",
                              sx, PreimageStatus::undecided);
      }
      return q;
    }
    const PreimageResult r = solver_.find(sx);
    if (r.status != PreimageStatus::found) {
      throw PreimageFailure("no T-preimage for S(x_n) = " + fmt(sx) + " (" + to_string(r.status) +
                                ")",
                            sx, r.status);
    }
    return r.point;
  }

 private:
  const ContractionPair& pair_;
  StepOptions options_;
  PreimageSolver solver_;
};

double aitken(double a0, double a1, double a2) {
  const double d1 = a1 - a0;
  const double d2 = a2 - a1;
  const double denom = d2 - d1;
  if (d2 == 0.0 || denom == 0.0) return a2;
  return a2 - d2 * d2 / denom;
}

// Tail model a_j = L + C/(j + b): returns {L, predicted next term}.
std::optional<std::pair<double, double>> reciprocal_fit(double a0, double a1, double a2) {
  const double d1 = a1 - a0;
  const double d2 = a2 - a1;
  if (d1 == 0.0 || d2 == 0.0 || (d1 > 0) != (d2 > 0) || !(std::abs(d2) < std::abs(d1))) {
    return std::nullopt;
  }
  const double j = 2.0 * d2 / (d1 - d2);
  const double limit = a0 + d1 * (j + 1.0);
  const double c = -d1 * j * (j + 1.0);
  if (!std::isfinite(limit) || !std::isfinite(c)) return std::nullopt;
  return std::pair{limit, limit + c / (j + 3.0)};
}

double geometric_next(double a0, double a1, double a2) {
  const double d1 = a1 - a0;
  const double d2 = a2 - a1;
  if (d1 == 0.0) return a2;
  return a2 + d2 * (d2 / d1);
}

}  // namespace

double jungck_step(const ContractionPair& pair, double x_n, const StepOptions& options) {
  return Stepper(pair, options).next(pair.s()(x_n));
}

JungckTrace iterate(const ContractionPair& pair, double x0, const IterateOptions& options) {
  if (!pair.domain().contains(x0)) {
    throw std::invalid_argument("x0 = " + fmt(x0) + " is outside " + pair.domain().to_string());
  }
  if (!(options.tol > 0) || options.window < 1) {
    throw std::invalid_argument("iterate needs tol > 0 and window >= 1");
  }
  const Stepper stepper(pair, options.step);
  JungckTrace trace;
  trace.x_seq.push_back(x0);
  trace.y_seq.push_back(pair.s()(x0));

  std::size_t below = 0;
  while (trace.iterations < options.max_iters) {
    const std::size_t n = trace.iterations;
    double next = 0.0;
    try {
      next = stepper.next(trace.y_seq[n]);
    } catch (const PreimageFailure&) {
      trace.status = TraceStatus::preimage_failed;
      trace.failed_at = n;
      return trace;
    }
    trace.x_seq.push_back(next);
    trace.y_seq.push_back(pair.s()(next));
    const double step = distance(trace.y_seq[n], trace.y_seq[n + 1]);
    trace.step_dist.push_back(step);
    ++trace.iterations;

    below = step < options.tol ? below + 1 : 0;
    if (below == options.window) {
      trace.status = TraceStatus::converged;
      trace.converged_at = trace.iterations - options.window;
      trace.limit = trace.y_seq.back();
      return trace;
    }
  }
  trace.status = TraceStatus::max_iters;
  return trace;
}

PocResult extract_poc(const ContractionPair& pair, const JungckTrace& trace, double rf_tol,
                      double tol) {
  if (trace.status != TraceStatus::converged || !trace.limit) {
    throw std::invalid_argument("extract_poc needs a converged trace");
  }
  PocResult out;
  out.z = *trace.limit;
  const PreimageResult r = find_preimage(pair.t(), out.z, {kDefaultScanResolution, rf_tol});
  out.preimage = r.status;
  if (r.status != PreimageStatus::found) return out;
  out.u = r.point;
  out.su_residual = distance(pair.s()(r.point), out.z);
  out.tu_residual = distance(pair.t()(r.point), out.z);
  if (out.su_residual <= tol && out.tu_residual <= tol) out.poc = out.z;
  return out;
}

PocResult extract_poc_near(const ContractionPair& pair, double z, double accept_tol, double rf_tol,
                           double tol) {
  PocResult out;
  out.z = z;
  const PreimageResult r = nearest_preimage(pair.t(), z, accept_tol, {kDefaultScanResolution, rf_tol});
  out.preimage = r.status;
  if (r.status != PreimageStatus::found) return out;
  out.u = r.point;
  out.z = pair.t()(r.point);
  out.su_residual = distance(pair.s()(r.point), out.z);
  out.tu_residual = 0.0;
  if (out.su_residual <= tol) out.poc = out.z;
  return out;
}

CoincidenceResult find_coincidence_points(const ContractionPair& pair, const SampleGrid& grid,
                                          double rf_tol) {
  const SampleGrid full = grid.merged_with(pair.breakpoints());
  const auto pts = full.points();
  auto g = [&](double x) { return pair.s()(x) - pair.t()(x); };
  std::vector<double> gs;
  gs.reserve(pts.size());
  for (double p : pts) gs.push_back(g(p));

  CoincidenceResult out;
  if (std::all_of(gs.begin(), gs.end(), [&](double v) { return std::abs(v) <= rf_tol; })) {
    out.identical_maps = true;
    return out;
  }
  std::vector<double> found;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(gs[i]) <= rf_tol) {
      found.push_back(pts[i]);
      continue;
    }
    if (i + 1 < pts.size() && std::abs(gs[i + 1]) > rf_tol &&
        ((gs[i] < 0 && gs[i + 1] > 0) || (gs[i] > 0 && gs[i + 1] < 0))) {
      std::uintmax_t max_iter = 2200;
      auto [lo, hi] = boost::math::tools::bisect(g, pts[i], pts[i + 1],
                                                 [](double, double) { return false; }, max_iter);
      const double root = std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
      if (std::abs(g(root)) <= rf_tol) found.push_back(root);
    }
  }
  std::sort(found.begin(), found.end());
  for (double p : found) {
    if (out.points.empty() || p - out.points.back() > 1e-9) out.points.push_back(p);
  }
  return out;
}

OwcResult check_owc(const ContractionPair& pair, std::span<const double> cps, double tol) {
  OwcResult out;
  if (cps.empty()) return out;
  out.verdict = OwcVerdict::fails;
  out.commutator = INFINITY;
  for (double cp : cps) {
    const double st = pair.s()(pair.t()(cp));
    const double ts = pair.t()(pair.s()(cp));
    const double c = distance(st, ts);
    if (c < out.commutator) out.commutator = c;
    if (c <= tol) {
      out.verdict = OwcVerdict::holds;
      out.witness = cp;
      out.commutator = c;
      return out;
    }
  }
  return out;
}

double extrapolate_limit(std::span<const double> seq) {
  if (seq.empty()) throw std::invalid_argument("extrapolate_limit needs a nonempty sequence");
  const std::size_t n = seq.size();
  if (n < 4) return seq.back();
  const double a0 = seq[n - 4];
  const double a1 = seq[n - 3];
  const double a2 = seq[n - 2];
  const double a3 = seq[n - 1];
  if (a3 == a2) return a3;

  // Score each tail model by how well it predicts a3 from (a0, a1, a2).
  const double err_const = std::abs(a3 - a2);
  const double err_geom = std::abs(a3 - geometric_next(a0, a1, a2));
  const auto recip = reciprocal_fit(a0, a1, a2);
  const double err_recip = recip ? std::abs(a3 - recip->second) : INFINITY;

  if (err_recip < err_geom && err_recip < err_const) {
    if (const auto fit = reciprocal_fit(a1, a2, a3)) return fit->first;
  }
  if (err_geom < err_const) return aitken(a1, a2, a3);
  return a3;
}

EaResult check_property_ea(const ContractionPair& pair, std::span<const double> seq, double tol) {
  if (seq.size() < 10) throw std::invalid_argument("property (E.A.) probe needs >= 10 terms");
  if (!(tol > 0)) throw std::invalid_argument("property (E.A.) tolerance must be positive");
  std::vector<double> sv;
  std::vector<double> tv;
  sv.reserve(seq.size());
  tv.reserve(seq.size());
  for (double x : seq) {
    if (!pair.domain().contains(x)) {
      throw std::invalid_argument("sequence term " + fmt(x) + " outside " +
                                  pair.domain().to_string());
    }
    sv.push_back(pair.s()(x));
    tv.push_back(pair.t()(x));
  }
  auto tail_gap = [](const std::vector<double>& v) {
    double m = 0.0;
    for (std::size_t i = v.size() - 5; i < v.size(); ++i) m = std::max(m, distance(v[i - 1], v[i]));
    return m;
  };
  EaResult out;
  out.s_tail_gap = tail_gap(sv);
  out.t_tail_gap = tail_gap(tv);
  out.s_limit = extrapolate_limit(sv);
  out.t_limit = extrapolate_limit(tv);
  const bool settled = out.s_tail_gap < tol && out.t_tail_gap < tol;
  out.holds = settled && distance(out.s_limit, out.t_limit) <= 10 * tol;
  if (out.holds) out.limit_estimate = (out.s_limit + out.t_limit) / 2;
  return out;
}

UniquenessResult uniqueness_probe(const ContractionPair& pair, std::span<const double> starts,
                                  const IterateOptions& options) {
  if (starts.size() < 2) throw std::invalid_argument("uniqueness_probe needs >= 2 starts");
  UniquenessResult out;
  std::optional<double> first;
  double lo = INFINITY;
  double hi = -INFINITY;
  out.all_agree = true;
  for (double x0 : starts) {
    const JungckTrace trace = iterate(pair, x0, options);
    out.runs.push_back({x0, trace.status, trace.limit, trace.iterations});
    if (trace.status != TraceStatus::converged) continue;
    const double z = *trace.limit;
    ++out.converged;
    lo = std::min(lo, z);
    hi = std::max(hi, z);
    if (!first) {
      first = z;
    } else if (distance(z, *first) > 10 * options.tol) {
      out.all_agree = false;
    }
  }
  if (out.converged == 0) {
    out.all_agree = false;
  } else {
    out.spread = hi - lo;
  }
  return out;
}

std::optional<CauchyWitness> extract_cauchy_witness(std::span<const double> seq, double eps0,
                                                    std::size_t k_max) {
  if (!(eps0 > 0)) throw std::invalid_argument("eps0 must be positive");
  if (seq.size() < k_max + 2) {
    throw std::invalid_argument("prefix must hold at least k_max + 2 terms");
  }
  const std::size_t len = seq.size();
  // has[n]: some m > n has |x_m - x_n| >= eps0, via suffix extrema.
  std::vector<char> has(len, 0);
  double smax = -INFINITY;
  double smin = INFINITY;
  for (std::size_t i = len; i-- > 0;) {
    has[i] = (smax - seq[i] >= eps0 || seq[i] - smin >= eps0) ? 1 : 0;
    smax = std::max(smax, seq[i]);
    smin = std::min(smin, seq[i]);
  }
  // next_has[i]: smallest n >= i with has[n], or len.
  std::vector<std::size_t> next_has(len + 1, len);
  for (std::size_t i = len; i-- > 0;) next_has[i] = has[i] ? i : next_has[i + 1];

  CauchyWitness w;
  w.eps0 = eps0;
  std::size_t cached_n = len;
  std::size_t cached_m = len;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const std::size_t n = next_has[k + 1];
    if (n >= len) break;
    if (n != cached_n) {
      std::size_t m = n + 1;
      while (distance(seq[m], seq[n]) < eps0) ++m;
      cached_n = n;
      cached_m = m;
    }
    const std::size_t m = cached_m;
    w.k.push_back(k);
    w.indices.emplace_back(m, n);
    w.gap_at_witness.push_back(distance(seq[m], seq[n]));
    w.gap_before.push_back(distance(seq[m - 1], seq[n]));
    w.gap_shifted.push_back(distance(seq[m - 1], seq[n + 1]));
  }
  if (w.k.empty()) return std::nullopt;
  return w;
}

SolveReport solve(const ContractionPair& pair, const SolveOptions& options) {
  SolveReport rep;
  const IterateOptions& it = options.iterate;
  const double rf_tol = it.step.rf_tol;
  auto fail = [&](std::string stage, std::string message) {
    if (!rep.failed_stage) {
      rep.failed_stage = std::move(stage);
      rep.message = std::move(message);
    }
  };

  const SampleGrid grid =
      sample_grid(pair.domain(), std::max<std::size_t>(options.cp_grid, 2))
          .merged_with(pair.breakpoints());
  rep.containment = check_range_containment(
      pair.s(), pair.t(), grid, PreimageOptions{it.step.scan_resolution, rf_tol});

  if (!options.ea_sequence.empty()) {
    rep.ea = check_property_ea(pair, options.ea_sequence, options.ea_tol);
  }

  // The iteration also runs off-route: its trace shows where it breaks down.
  rep.trace = iterate(pair, options.x0.value_or(pair.domain().midpoint()), it);

  if (rep.containment.holds) {
    rep.route = SolveRoute::jungck_iteration;
    rep.assumptions.emplace_back("complete_range");
    if (!options.complete_range) {
      fail("hypotheses", "completeness of T(M) is not declared");
    }
    if (rep.trace.status != TraceStatus::converged) {
      fail("iterate", std::string("Jungck iteration ended with status ") +
                          to_string(rep.trace.status));
    } else {
      rep.poc = extract_poc(pair, rep.trace, rf_tol, it.tol);
      if (!rep.poc.poc) {
        fail("extract_poc", rep.poc.u ? "S(u) != z: residual " + fmt(rep.poc.su_residual)
                                      : "limit z has no T-preimage; T(M) may not be complete");
      }
    }
  } else if (rep.ea) {
    rep.route = SolveRoute::property_ea;
    rep.assumptions.emplace_back("closed_range");
    if (!options.closed_range) {
      fail("hypotheses", "closedness of T(M) is not declared");
    }
    if (!rep.ea->holds) {
      fail("property_ea", "S and T do not share a limit along the candidate sequence");
    } else {
      rep.poc = extract_poc_near(pair, *rep.ea->limit_estimate, 10 * options.ea_tol, rf_tol, it.tol);
      if (!rep.poc.poc) {
        fail("extract_poc", rep.poc.u ? "S(u) != T(u): residual " + fmt(rep.poc.su_residual)
                                      : "common limit has no T-preimage; T(M) may not be closed");
      }
    }
  } else {
    fail("range_containment", "S(M) is not inside T(M) on the sample grid and no (E.A.) "
                              "sequence is available");
  }

  rep.cps = find_coincidence_points(pair, grid, rf_tol);
  rep.owc = check_owc(pair, rep.cps.points, 10 * rf_tol);

  std::vector<double> starts;
  if (options.n_starts >= 2) {
    const SampleGrid sg = sample_grid(pair.domain(), options.n_starts);
    starts.assign(sg.points().begin(), sg.points().end());
    rep.uniqueness = uniqueness_probe(pair, starts, it);
  }

  // A route whose hypotheses were not all granted never publishes w.
  if (rep.poc.poc && !rep.failed_stage) {
    if (rep.owc.verdict != OwcVerdict::holds) {
      fail("owc", rep.owc.verdict == OwcVerdict::no_cp_found
                      ? "no coincidence point found"
                      : "S and T do not commute at any coincidence point");
    } else {
      const double w = *rep.poc.poc;
      rep.cfp_s_residual = distance(pair.s()(w), w);
      rep.cfp_t_residual = distance(pair.t()(w), w);
      if (rep.cfp_s_residual <= 10 * it.tol && rep.cfp_t_residual <= 10 * it.tol) {
        rep.common_fixed_point = w;
      } else {
        fail("fixed_point_closure", "w = " + fmt(w) + " is not fixed by S and T");
      }
    }
  }
  return rep;
}

const char* to_string(TraceStatus s) noexcept {
  switch (s) {
    case TraceStatus::converged: return "converged";
    case TraceStatus::max_iters: return "max_iters";
    case TraceStatus::preimage_failed: return "preimage_failed";
  }
  return "unknown";
}

const char* to_string(OwcVerdict v) noexcept {
  switch (v) {
    case OwcVerdict::holds: return "holds";
    case OwcVerdict::fails: return "fails";
    case OwcVerdict::no_cp_found: return "no_cp_found";
  }
  return "unknown";
}

const char* to_string(SolveRoute r) noexcept {
  switch (r) {
    case SolveRoute::none: return "none";
    case SolveRoute::jungck_iteration: return "jungck_iteration";
    case SolveRoute::property_ea: return "property_ea";
  }
  return "unknown";
}


}  // namespace jfp
