// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <numbers>

#include "knapqaoa/copula.hpp"
#include "knapqaoa/knapsack.hpp"
#include "knapqaoa/knapsack_solvers.hpp"
#include "knapqaoa/statevector.hpp"
#include "knapqaoa/train.hpp"
#include "knapqaoa/uc.hpp"

using namespace knapqaoa;

namespace {

void BM_LazyGreedy(benchmark::State& state) {
  const auto inst = knap::gen_inverse_strongly_correlated(state.range(0), 1);
  for (auto _ : state) {
    auto result = knap::lazy_greedy(inst);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_LazyGreedy)->Arg(100)->Arg(1000);

void BM_SolveDp(benchmark::State& state) {
  const auto inst = knap::gen_inverse_strongly_correlated(state.range(0), 2);
  for (auto _ : state) {
    auto result = knap::solve_dp(inst);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_SolveDp)->Arg(50)->Arg(150);

void BM_SolveBranchBound(benchmark::State& state) {
  const auto inst = knap::gen_inverse_strongly_correlated(state.range(0), 3);
  for (auto _ : state) {
    auto result = knap::solve_branch_bound(inst);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_SolveBranchBound)->Arg(30)->Arg(60);

void BM_GateRy(benchmark::State& state) {
  const std::size_t n = state.range(0);
  std::vector<double> probs(n, 0.3);
  auto sv = sim::init_product_state(probs);
  std::size_t q = 0;
  for (auto _ : state) {
    sim::apply_ry(sv, q, 0.37);
    q = (q + 1) % n;
  }
  state.SetItemsProcessed(state.iterations() * (std::size_t{1} << n));
}
BENCHMARK(BM_GateRy)->Arg(12)->Arg(16)->Arg(20);

void BM_MixerLayer(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto inst = knap::gen_inverse_strongly_correlated(n, 4);
  cop::CopulaSpec spec;
  spec.probs = knap::smoothed_probabilities(inst, 8.0);
  const auto pairing = cop::PairingScheme::ring(n);
  auto sv = sim::init_product_state(spec.probs);
  for (auto _ : state) {
    cop::apply_copula_mixer(sv, 0.4, spec, pairing);
  }
  state.SetItemsProcessed(state.iterations() * (std::size_t{1} << n));
}
BENCHMARK(BM_MixerLayer)->Arg(12)->Arg(16);

void BM_GridCell(benchmark::State& state) {
  const auto inst = knap::gen_inverse_strongly_correlated(14, 5);
  cop::CopulaSpec spec;
  spec.probs = knap::smoothed_probabilities(inst, 10.0);
  const auto pairing = cop::PairingScheme::ring(14);
  const auto table = cop::InstanceTable::build(inst);
  cop::QaoaParams params;
  params.gammas = {0.001};
  params.betas = {0.8};
  for (auto _ : state) {
    const auto sv = cop::run_circuit(inst, spec, pairing, params);
    benchmark::DoNotOptimize(cop::exact_metrics(table, sv, 1e-5));
  }
}
BENCHMARK(BM_GridCell);

void BM_UcScanPoint(benchmark::State& state) {
  const auto inst = uc::random_uc_instance(100, 6, 0.5);
  const auto grid = uc::default_marginal_grid(inst, 200);
  std::size_t idx = 40;
  for (auto _ : state) {
    const auto kn = uc::build_knapsack(inst, grid[idx]);
    auto result = knap::solve_branch_bound(kn.instance, std::chrono::duration<double>(0.25));
    benchmark::DoNotOptimize(result);
    idx = 40 + (idx + 1) % 120;
  }
}
BENCHMARK(BM_UcScanPoint);

}  // namespace

BENCHMARK_MAIN();
