// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "jfp/contraction.hpp"
#include "jfp/jungck.hpp"
#include "jfp/scenario.hpp"

namespace jfp::props {

namespace {

constexpr std::size_t kKeptFailures = 8;

const std::vector<std::string> kIterable = {"example1_corrected", "example2",
                                            "example2_integral"};
const std::vector<std::string> kCertified = {"example1_corrected", "example2", "example3"};

ContractionPair pair_named(const std::string& name) {
  return make_contraction_pair(*find_builtin(name));
}

double draw(std::mt19937_64& rng, const Domain& d) {
  return d.lo() + unit_uniform(rng) * d.width();
}

}  // namespace

void Tally::check(bool ok, const std::string& what) {
  ++assertions;
  if (ok) return;
  ++failures;
  if (first_failures.size() < kKeptFailures) first_failures.push_back(what);
}

Tally& Tally::operator+=(const Tally& other) {
  assertions += other.assertions;
  failures += other.failures;
  for (const auto& f : other.first_failures) {
    if (first_failures.size() < kKeptFailures) first_failures.push_back(f);
  }
  return *this;
}

Tally trace_consistency(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (const auto& name : kIterable) {
    const ContractionPair p = pair_named(name);
    const Domain& d = p.domain();
    for (int run = 0; run < 1000; ++run) {
      const double x0 = draw(rng, d);
      const JungckTrace tr = iterate(p, x0);
      const std::string where = name + " from " + std::to_string(x0);
      t.check(tr.status == TraceStatus::converged, where + ": not converged");
      t.check(tr.x_seq.size() == tr.y_seq.size(), where + ": sequence lengths");
      for (std::size_t n = 0; n + 1 < tr.x_seq.size(); ++n) {
        t.check(d.contains(tr.x_seq[n + 1]), where + ": iterate left the domain");
        t.check(tr.y_seq[n] == p.s()(tr.x_seq[n]), where + ": y_n != S(x_n)");
        t.check(std::abs(p.t()(tr.x_seq[n + 1]) - tr.y_seq[n]) <= 1e-12,
                where + ": |T(x_{n+1}) - S(x_n)| > rf_tol at n = " + std::to_string(n));
      }
    }
  }
  return t;
}

Tally psi_strict_descent(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (const auto& name : kIterable) {
    const ContractionPair p = pair_named(name);
    for (int run = 0; run < 1000; ++run) {
      const JungckTrace tr = iterate(p, draw(rng, p.domain()));
      for (std::size_t n = 1; n < tr.step_dist.size(); ++n) {
        // Below 1e-9 a step is at the root finder's resolution.
        if (!(tr.step_dist[n - 1] > 1e-9)) continue;
        t.check(p.psi()(tr.step_dist[n]) < p.psi()(tr.step_dist[n - 1]),
                name + ": psi step did not shrink at n = " + std::to_string(n));
      }
    }
  }
  return t;
}

Tally inequality_on_random_pairs(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (const auto& name : kCertified) {
    const ContractionPair p = pair_named(name);
    for (int i = 0; i < 10000; ++i) {
      const double x = draw(rng, p.domain());
      const double y = draw(rng, p.domain());
      const InequalityTerms terms = lhs_rhs(p, x, y);
      t.check(terms.lhs <= terms.rhs() + 1e-12,
              name + ": inequality fails at (" + std::to_string(x) + ", " + std::to_string(y) +
                  ")");
    }
  }
  return t;
}

Tally metric_axioms(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 6000; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    t.check(distance(a, b) >= 0.0, "non-negativity");
    t.check(distance(a, a) == 0.0, "d(a, a) = 0");
    t.check(distance(a, b) == distance(b, a), "symmetry");
    t.check((distance(a, b) == 0.0) == (a == b), "identity of indiscernibles");
    t.check(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-13, "triangle inequality");
  }
  return t;
}

Tally determinism(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  const Domain d(0.5, 1.0);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t s = rng();
    const std::size_t n = 2 + rng() % 300;
    t.check(sample_pairs(d, n, s) == sample_pairs(d, n, s), "sample_pairs repeatable");
    const SampleGrid a = sample_grid(d, n, GridStrategy::uniform_jitter, s);
    const SampleGrid b = sample_grid(d, n, GridStrategy::uniform_jitter, s);
    t.check(std::ranges::equal(a.points(), b.points()), "jittered grid repeatable");
  }
  const ContractionPair p = pair_named("example2");
  for (std::uint64_t s = 0; s < 20; ++s) {
    CertifyOptions o;
    o.n_pairs = 500;
    o.seed = s;
    t.check(certify(p, o) == certify(p, o), "certificate repeatable");
  }
  for (int i = 0; i < 50; ++i) {
    const double x0 = unit_uniform(rng);
    const JungckTrace a = iterate(p, x0);
    const JungckTrace b = iterate(p, x0);
    t.check(a.x_seq == b.x_seq && a.y_seq == b.y_seq && a.status == b.status,
            "trace repeatable");
  }
  return t;
}

Tally run_all(std::uint64_t seed) {
  Tally t;
  t += trace_consistency(seed);
  t += psi_strict_descent(seed + 1);
  t += inequality_on_random_pairs(seed + 2);
  t += metric_axioms(seed + 3);
  t += determinism(seed + 4);
  return t;
}

}  // namespace jfp::props
