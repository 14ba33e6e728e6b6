// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "jfp/contraction.hpp"
#include "jfp/gauges.hpp"
#include "jfp/jungck.hpp"
#include "jfp/scenario.hpp"

namespace {

using namespace jfp;

ContractionPair catalog_pair(const char* name) {
  return make_contraction_pair(*find_builtin(name));
}

void BM_CertifyExample2(benchmark::State& state) {
  const ContractionPair pair = catalog_pair("example2");
  CertifyOptions o;
  o.n_pairs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(certify(pair, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CertifyExample2)->Arg(1000)->Arg(10000);

void BM_CertifyIntegralExample2(benchmark::State& state) {
  const ContractionPair pair = catalog_pair("example2_integral");
  CertifyOptions o;
  o.n_pairs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(certify_integral(pair, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CertifyIntegralExample2)->Arg(1000);

void BM_IterateExample1(benchmark::State& state) {
  const ContractionPair pair = catalog_pair("example1_corrected");
  for (auto _ : state) benchmark::DoNotOptimize(iterate(pair, 1.0));
}
BENCHMARK(BM_IterateExample1);

void BM_FindPreimage(benchmark::State& state) {
  const ContractionPair pair = catalog_pair("example3");
  PreimageOptions o;
  o.scan_resolution = static_cast<std::size_t>(state.range(0));
  double v = 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_preimage(pair.t(), v, o));
    v = v < 0.99 ? v + 1e-3 : 0.7;
  }
}
BENCHMARK(BM_FindPreimage)->Arg(256)->Arg(1024)->Arg(4096);

void BM_ComposeIntegral(benchmark::State& state) {
  const AlteringDistance psi0 = compose_integral({[](double t) { return 2 * t; }, "2t"});
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi0(s));
    s = s < 2.0 ? s + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_ComposeIntegral);

void BM_SolveExample3(benchmark::State& state) {
  const Scenario sc = *find_builtin("example3");
  const ContractionPair pair = make_contraction_pair(sc);
  SolveOptions o;
  o.closed_range = true;
  o.ea_sequence = sc.ea_sequence->terms();
  for (auto _ : state) benchmark::DoNotOptimize(solve(pair, o));
}
BENCHMARK(BM_SolveExample3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
