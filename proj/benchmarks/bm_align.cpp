/* Copyright 2026 The AAS Kernels Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include <random>

#include "aas/align.hpp"
#include "aas/losses.hpp"
#include "aas/testing/oracles.hpp"

namespace {

// Args: t_src, t_trg.
void BM_MonotonicAlignmentSearch(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const aas::Matrix lp = aas::testing::RandomLogAlignment(
      rng, static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(aas::MonotonicAlignmentSearch(lp).score);
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_MonotonicAlignmentSearch)
    ->Args({100, 400})
    ->Args({1000, 4000})
    ->Unit(benchmark::kMillisecond);

void BM_ForwardSum(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const aas::Matrix lp = aas::testing::RandomLogAlignment(
      rng, static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const bool with_gradient = state.range(2) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(aas::ForwardSumLoss(lp, with_gradient).value);
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_ForwardSum)
    ->Args({100, 400, 0})
    ->Args({100, 400, 1})
    ->Args({1000, 4000, 0})
    ->Args({1000, 4000, 1})
    ->Unit(benchmark::kMillisecond);

// Args: t_src, t_trg, dim, threads.
void BM_DistanceMatrix(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const aas::Matrix src = aas::testing::RandomMatrix(rng, state.range(0), state.range(2));
  const aas::Matrix trg = aas::testing::RandomMatrix(rng, state.range(1), state.range(2));
  const auto threads = static_cast<unsigned>(state.range(3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(aas::ComputeDistanceMatrix(src, trg, threads).values.data().data());
  }
}
BENCHMARK(BM_DistanceMatrix)
    ->Args({250, 1000, 80, 1})
    ->Args({250, 1000, 80, 4})
    ->Unit(benchmark::kMillisecond);

void BM_AlignSequences(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const aas::Matrix src = aas::testing::RandomMatrix(rng, state.range(0), 80);
  const aas::Matrix trg = aas::testing::RandomMatrix(rng, state.range(1), 80);
  const aas::AASConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(aas::AlignSequences(src, trg, config).durations);
}
BENCHMARK(BM_AlignSequences)->Args({100, 400})->Args({250, 1000})->Unit(benchmark::kMillisecond);

}  // namespace
