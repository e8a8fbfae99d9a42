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

#include "aas/metrics.hpp"
#include "aas/testing/oracles.hpp"

namespace {

void BM_Dtw(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const aas::Matrix cost = aas::testing::RandomMatrix(rng, state.range(0), state.range(1), 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(aas::Dtw(cost).total_cost);
}
BENCHMARK(BM_Dtw)->Args({400, 500})->Args({1000, 1200})->Unit(benchmark::kMillisecond);

void BM_MelCepstralDistortion(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const aas::Matrix x = aas::testing::RandomMatrix(rng, state.range(0), 25);
  const aas::Matrix y = aas::testing::RandomMatrix(rng, state.range(0) * 5 / 4, 25);
  for (auto _ : state) benchmark::DoNotOptimize(aas::MelCepstralDistortion(x, y));
}
BENCHMARK(BM_MelCepstralDistortion)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
