// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "wsim/protocols.hpp"

using namespace wsim::protocols;

static void BM_QkdRounds(benchmark::State& state) {
  const int rounds = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ProtocolTranscript t = qkd_simulate(rounds, 0);
    benchmark::DoNotOptimize(t.accepted);
  }
  state.SetItemsProcessed(state.iterations() * rounds);
}
BENCHMARK(BM_QkdRounds)->Arg(1000)->Arg(10000);

static void BM_Teleport(benchmark::State& state) {
  wsim::Vector v = wsim::Vector::Zero(4);
  v(1) = std::sqrt(0.3);
  v(2) = std::sqrt(0.7);
  wsim::StateVector phi(v, {2, 2});
  for (auto _ : state) {
    TeleportReport rep = teleport(phi, "w");
    benchmark::DoNotOptimize(rep.min_fidelity);
  }
}
BENCHMARK(BM_Teleport);
