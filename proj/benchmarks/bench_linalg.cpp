// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "wsim/entanglement.hpp"
#include "wsim/state.hpp"
#include "wsim/states.hpp"

using namespace wsim;

static void BM_PartialTrace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DensityMatrix rho = DensityMatrix::from_state(states::w_state(n));
  std::vector<int> keep = {0, 1};
  for (auto _ : state) {
    DensityMatrix out = partial_trace(rho, keep);
    benchmark::DoNotOptimize(out.entries().data());
  }
}
BENCHMARK(BM_PartialTrace)->DenseRange(4, 10, 2);

static void BM_HermitianEig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix jsq = states::angular_ops(n).jsq;
  for (auto _ : state) {
    auto spec = hermitian_eig(jsq);
    benchmark::DoNotOptimize(spec.eigenvalues.data());
  }
}
BENCHMARK(BM_HermitianEig)->DenseRange(3, 7, 1);

static void BM_Persistency(benchmark::State& state) {
  StateVector w = states::w_state(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    int m = entanglement::persistency(w);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_Persistency)->DenseRange(3, 5, 1);

BENCHMARK_MAIN();
