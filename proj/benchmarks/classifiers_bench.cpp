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

#include <vector>

#include "qal/classifiers.hpp"
#include "qal/lattice.hpp"
#include "qal/rng.hpp"

namespace {

std::vector<qal::LabeledPoint> sample_points(std::size_t count) {
  const auto lattice = qal::generate_lattice(11);
  qal::Rng rng(5);
  std::vector<qal::LabeledPoint> pts;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& s = lattice.sites[rng.below(lattice.sites.size())];
    pts.push_back({s.features(), s.true_class});
  }
  return pts;
}

}  // namespace

static void BM_Train(benchmark::State& state) {
  const auto kind = static_cast<qal::ModelKind>(state.range(0));
  const auto pts = sample_points(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto m = qal::train(kind, pts);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_Train)->ArgsProduct({{0, 1, 2, 3}, {5, 27, 441}});

static void BM_PredictLattice(benchmark::State& state) {
  const auto kind = static_cast<qal::ModelKind>(state.range(0));
  const auto model = qal::train(kind, sample_points(27));
  const auto lattice = qal::generate_lattice(11);
  for (auto _ : state) {
    int ones = 0;
    for (const auto& s : lattice.sites) ones += qal::to_int(qal::predict(model, s.features()));
    benchmark::DoNotOptimize(ones);
  }
}
BENCHMARK(BM_PredictLattice)->DenseRange(0, 3);
