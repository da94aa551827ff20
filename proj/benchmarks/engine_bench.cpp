// Copyright 2026 The qal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qal/engine.hpp"

static void BM_RunEpisode(benchmark::State& state) {
  const auto lattice = qal::generate_lattice(21);
  qal::EpisodeConfig cfg;
  cfg.strategy = static_cast<qal::Strategy>(state.range(0));
  cfg.seed = 9;
  for (auto _ : state) {
    auto res = qal::run_episode(lattice, cfg);
    benchmark::DoNotOptimize(res.final_accuracy());
  }
}
BENCHMARK(BM_RunEpisode)
    ->Arg(static_cast<int>(qal::Strategy::kRandom))
    ->Arg(static_cast<int>(qal::Strategy::kUsampLeastConfidence))
    ->Arg(static_cast<int>(qal::Strategy::kQbcVoteEntropy))
    ->Unit(benchmark::kMillisecond);
