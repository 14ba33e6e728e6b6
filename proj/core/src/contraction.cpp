// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include "jfp/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "jfp/error.hpp"

namespace jfp {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double checked(double v, const char* term, double x, double y) {
  if (!std::isfinite(v)) {
    throw NonFiniteError(std::string("non-finite ") + term + " at (x, y) = (" + fmt(x) + ", " +
                             fmt(y) + ")",
                         x);
  }
  return v;
}

// Evaluates the inequality with an already-built effective Ψ (and the
// Ψ used for the β-term, which differs only in the literal integral form).
InequalityTerms evaluate(const ContractionPair& pair, const RealFn& big_psi,
                         const RealFn& middle_psi, double x, double y) {
  const ScalarMap& s = pair.s();
  const ScalarMap& t = pair.t();
  const GaugeTriple& g = pair.gauges();
  const double sx = s(x);
  const double sy = s(y);
  const double tx = t(x);
  const double ty = t(y);
  const double dt = distance(tx, ty);

  InequalityTerms out;
  out.lhs = checked(big_psi(distance(sx, sy)), "lhs", x, y);
  const double a = checked(g.alpha(dt), "alpha", x, y);
  const double b = checked(g.beta(dt), "beta", x, y);
  const double c = checked(g.gamma(dt), "gamma", x, y);
  out.alpha_term = checked(a * big_psi(dt), "alpha term", x, y);
  out.beta_term = checked(b * middle_psi(distance(sx, tx)), "beta term", x, y);
  out.gamma_term = checked(c * big_psi(distance(sy, ty)), "gamma term", x, y);
  return out;
}

struct Effective {
  RealFn big_psi;
  RealFn middle_psi;
};

Effective effective_psi(const ContractionPair& pair, ContractionForm form, double quadrature_tol) {
  if (form == ContractionForm::plain) return {pair.psi().psi, pair.psi().psi};
  if (!pair.integral_phi()) {
    throw std::invalid_argument("integral form needs an integrand phi");
  }
  const AlteringDistance psi0 = compose_integral(*pair.integral_phi(), quadrature_tol);
  const AlteringDistance outer = compose(psi0, pair.psi());
  if (pair.middle_term() == MiddleTerm::literal) return {outer.psi, psi0.psi};
  return {outer.psi, outer.psi};
}

ContractionCertificate run_certificate(const ContractionPair& pair, ContractionForm form,
                                       const CertifyOptions& opt) {
  if (opt.n_pairs < 1) throw std::invalid_argument("certify needs n_pairs >= 1");
  if (!(opt.tolerance >= 0)) throw std::invalid_argument("tolerance must be nonnegative");
  const Effective eff = effective_psi(pair, form, opt.quadrature_tol);
  const auto pairs = sample_pairs(pair.domain(), opt.n_pairs, opt.seed);

  ContractionCertificate cert;
  cert.form = form;
  cert.seed = opt.seed;
  cert.tolerance = opt.tolerance;
  if (form == ContractionForm::integral) cert.quadrature_tol = opt.quadrature_tol;
  if (opt.keep_slacks) cert.slacks.reserve(pairs.size());

  bool first = true;
  for (const auto& [x, y] : pairs) {
    InequalityTerms terms;
    try {
      terms = evaluate(pair, eff.big_psi, eff.middle_psi, x, y);
    } catch (const NonFiniteError&) {
      throw;
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " at (x, y) = (" + fmt(x) + ", " + fmt(y) + ")");
    }
    const double slack = terms.slack();
    if (opt.keep_slacks) cert.slacks.push_back(slack);
    const bool worse = first || slack < cert.min_slack ||
                       (slack == cert.min_slack && std::pair{x, y} < cert.worst_pair);
    if (worse) {
      cert.min_slack = slack;
      cert.worst_pair = {x, y};
      cert.worst_terms = terms;
      first = false;
    }
    ++cert.pairs_checked;
  }
  cert.max_violation = -cert.min_slack;
  cert.verdict = cert.max_violation > opt.tolerance ? CertificateVerdict::violated
                                                    : CertificateVerdict::certified;
  return cert;
}

}  // namespace

ContractionPair::ContractionPair(ScalarMap s, ScalarMap t, AlteringDistance psi,
                                 GaugeTriple gauges, std::optional<IntegrandPhi> integral_phi,
                                 MiddleTerm middle_term)
    : s_(std::move(s)),
      t_(std::move(t)),
      psi_(std::move(psi)),
      gauges_(std::move(gauges)),
      integral_phi_(std::move(integral_phi)),
      middle_term_(middle_term) {
  if (!(s_.domain() == t_.domain())) {
    throw std::invalid_argument("S and T must share one domain: " + s_.domain().to_string() +
                                " vs " + t_.domain().to_string());
  }
  if (!psi_.psi || !gauges_.alpha || !gauges_.beta || !gauges_.gamma) {
    throw std::invalid_argument("contraction pair needs psi, alpha, beta and gamma");
  }
}

std::vector<double> ContractionPair::breakpoints() const {
  std::vector<double> out(s_.breakpoints().begin(), s_.breakpoints().end());
  out.insert(out.end(), t_.breakpoints().begin(), t_.breakpoints().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

InequalityTerms lhs_rhs(const ContractionPair& pair, double x, double y, ContractionForm form,
                        double quadrature_tol) {
  const Effective eff = effective_psi(pair, form, quadrature_tol);
  return evaluate(pair, eff.big_psi, eff.middle_psi, x, y);
}

std::vector<std::pair<double, double>> sample_pairs(const Domain& domain, std::size_t n_pairs,
                                                    std::uint64_t seed) {
  std::vector<std::pair<double, double>> out;
  if (n_pairs == 0) return out;
  out.reserve(n_pairs);

  auto side = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_pairs) / 2.0));
  side = std::max<std::size_t>(side, 1);
  if (side == 1) {
    out.emplace_back(domain.midpoint(), domain.midpoint());
  } else {
    const SampleGrid grid = sample_grid(domain, side);
    for (double x : grid.points()) {
      for (double y : grid.points()) out.emplace_back(x, y);
    }
  }

  std::mt19937_64 engine(seed);
  auto draw = [&](double lo, double hi) {
    double v = lo + unit_uniform(engine) * (hi - lo);
    if (!domain.contains(v)) v = domain.midpoint();
    return v;
  };
  const std::size_t rest = n_pairs - out.size();
  const std::size_t near = rest / 2;
  for (std::size_t k = 0; k < near; ++k) {
    const double delta = k % 2 == 0 ? 1e-3 : 1e-6;
    const double x = draw(domain.lo(), domain.hi() - delta);
    if ((k / 2) % 2 == 0) {
      out.emplace_back(x, x + delta);
    } else {
      out.emplace_back(x + delta, x);
    }
  }
  while (out.size() < n_pairs) {
    const double x = draw(domain.lo(), domain.hi());
    const double y = draw(domain.lo(), domain.hi());
    out.emplace_back(x, y);
  }
  return out;
}

ContractionCertificate certify(const ContractionPair& pair, const CertifyOptions& options) {
  return run_certificate(pair, ContractionForm::plain, options);
}

ContractionCertificate certify_integral(const ContractionPair& pair,
                                        const CertifyOptions& options) {
  if (!pair.integral_phi()) {
    throw std::invalid_argument("certify_integral needs a pair with an integrand phi");
  }
  return run_certificate(pair, ContractionForm::integral, options);
}

const char* to_string(CertificateVerdict v) noexcept {
  return v == CertificateVerdict::certified ? "certified" : "violated";
}

const char* to_string(ContractionForm f) noexcept {
  return f == ContractionForm::plain ? "plain" : "integral";
}

const char* to_string(MiddleTerm m) noexcept {
  return m == MiddleTerm::rewritten ? "rewritten" : "literal";
}

}  // namespace jfp
