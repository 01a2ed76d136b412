// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "wsim/optics.hpp"

using namespace wsim::optics;

static void BM_TritterScheme(benchmark::State& state) {
  OpticalScheme scheme = scheme_tritter_w3v();
  for (auto _ : state) {
    SchemeReport rep = run_scheme(scheme);
    benchmark::DoNotOptimize(rep.probability);
  }
}
BENCHMARK(BM_TritterScheme);

static void BM_FourPhotonSplit(benchmark::State& state) {
  OpticalScheme scheme = scheme_psi4_w3v('V');
  for (auto _ : state) {
    SchemeReport rep = run_scheme(scheme);
    benchmark::DoNotOptimize(rep.probability);
  }
}
BENCHMARK(BM_FourPhotonSplit);

static void BM_ModeStatistics(benchmark::State& state) {
  FockVector w = photonic_w1(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ModeStatistics st = mode_statistics(w);
    benchmark::DoNotOptimize(st.coherence.data());
  }
}
BENCHMARK(BM_ModeStatistics)->DenseRange(2, 8, 2);
