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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "qal/engine.hpp"
#include "qal/errors.hpp"

namespace qal {
namespace {

EpisodeConfig config_for(Strategy s, int budget, std::uint64_t seed) {
  EpisodeConfig c;
  c.strategy = s;
  c.label_budget = budget;
  c.seed = seed;
  return c;
}

EpisodeResult with_accuracies(std::initializer_list<double> acc) {
  EpisodeResult r;
  int x = 0;
  for (double a : acc) r.trajectory.push_back({x++, a, 1.0});
  return r;
}

constexpr Strategy kAll[] = {Strategy::kRandom,       Strategy::kUsampLeastConfidence, Strategy::kUsampMargin,
                             Strategy::kUsampEntropy, Strategy::kQbcVoteEntropy,      Strategy::kQbcKl};

TEST(Episode, ZeroBudgetKeepsOnlySeedPoint) {
  const auto lat = generate_lattice(3);
  for (auto s : kAll) {
    const auto r = run_episode(lat, config_for(s, 0, 1));
    ASSERT_EQ(r.trajectory.size(), 1u);
    EXPECT_EQ(r.trajectory[0].labels_used, 0);
    EXPECT_EQ(r.final_fidelity(), 1.0);
    EXPECT_TRUE(r.queries.empty());
    EXPECT_EQ(r.oracle_sites.size(), static_cast<std::size_t>(is_qbc(s) ? kQbcSeedOracles : kUsampSeedOracles));
  }
}

TEST(Episode, DeterministicForFixedSeed) {
  const auto lat = generate_lattice(4);
  for (auto s : kAll) {
    const auto a = run_episode(lat, config_for(s, 8, 99));
    const auto b = run_episode(lat, config_for(s, 8, 99));
    ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
    for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
      EXPECT_EQ(a.trajectory[i].accuracy, b.trajectory[i].accuracy);
      EXPECT_EQ(a.trajectory[i].system_fidelity, b.trajectory[i].system_fidelity);
    }
    EXPECT_EQ(a.oracle_sites, b.oracle_sites);
    EXPECT_EQ(a.final_model, b.final_model);
    EXPECT_EQ(a.mislabel_count, b.mislabel_count);
    for (std::size_t i = 0; i < a.queries.size(); ++i) EXPECT_EQ(a.queries[i].site_id, b.queries[i].site_id);
  }
}

TEST(EpisodeProperty, TrajectoryInvariants) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto lat = generate_lattice(seed + 100);
    for (auto s : kAll) {
      auto cfg = config_for(s, 10, seed);
      cfg.measurement.n_copies = 5 + static_cast<int>(seed) * 40;
      const auto r = run_episode(lat, cfg);
      ASSERT_EQ(r.labels_used(), 10);
      for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
        EXPECT_EQ(r.trajectory[i].labels_used, static_cast<int>(i));
        EXPECT_GE(r.trajectory[i].accuracy, 0.0);
        EXPECT_LE(r.trajectory[i].accuracy, 1.0);
        if (i > 0) EXPECT_LE(r.trajectory[i].system_fidelity, r.trajectory[i - 1].system_fidelity);
      }
      std::set<std::size_t> seen(r.oracle_sites.begin(), r.oracle_sites.end());
      ASSERT_EQ(seen.size(), r.oracle_sites.size());
      bool c0 = false, c1 = false;
      for (auto id : r.oracle_sites) (lat.sites[id].true_class == Label::kZero ? c0 : c1) = true;
      EXPECT_TRUE(c0 && c1);
      int wrong = 0;
      double fid = 1.0;
      for (const auto& q : r.queries) {
        EXPECT_TRUE(seen.insert(q.site_id).second) << "site queried twice";
        EXPECT_EQ(q.truth, lat.sites[q.site_id].true_class);
        wrong += q.estimated != q.truth;
        fid *= q.min_fidelity;
      }
      EXPECT_EQ(wrong, r.mislabel_count);
      EXPECT_DOUBLE_EQ(fid, r.final_fidelity());
    }
  }
}

TEST(Episode, VacuousThresholdRunsFullBudget) {
  const auto lat = generate_lattice(5);
  auto cfg = config_for(Strategy::kUsampLeastConfidence, 12, 2);
  cfg.fidelity_threshold = 1e-300;
  const auto r = run_episode(lat, cfg);
  EXPECT_EQ(r.labels_used(), 12);
  EXPECT_FALSE(r.stopped_by_threshold);
}

TEST(Episode, NearUnitThresholdStopsAfterOneLabel) {
  const auto lat = generate_lattice(6);
  for (auto kind : {MeasurementKind::kWeak, MeasurementKind::kStrong}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto cfg = config_for(Strategy::kUsampLeastConfidence, 22, seed);
      cfg.measurement.kind = kind;
      cfg.fidelity_threshold = 0.999999;
      const auto r = run_episode(lat, cfg);
      EXPECT_EQ(r.labels_used(), 1);
      EXPECT_TRUE(r.stopped_by_threshold);
      EXPECT_LT(r.final_fidelity(), 0.999999);
    }
  }
}

TEST(Episode, StrongStopsOnceBothOutcomesSeen) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto lat = generate_lattice(seed);
    auto cfg = config_for(Strategy::kUsampLeastConfidence, 22, seed);
    cfg.measurement.kind = MeasurementKind::kStrong;
    cfg.fidelity_threshold = 0.9;
    const auto r = run_episode(lat, cfg);
    ASSERT_FALSE(r.queries.empty());
    if (r.queries[0].min_fidelity <= 0.5) EXPECT_EQ(r.labels_used(), 1);
  }
}

TEST(Episode, PoolExhaustion) {
  const auto lat = generate_lattice(7);
  auto cfg = config_for(Strategy::kUsampMargin, 5, 1);
  cfg.seed_oracles = 439;
  const auto r = run_episode(lat, cfg);
  EXPECT_EQ(r.labels_used(), 2);
  EXPECT_TRUE(r.pool_exhausted);
}

TEST(Episode, ConfigValidation) {
  const auto lat = generate_lattice(1);
  auto cfg = config_for(Strategy::kRandom, 3, 0);
  cfg.seed_oracles = 1;
  EXPECT_THROW(run_episode(lat, cfg), ParameterError);
  cfg = config_for(Strategy::kRandom, -1, 0);
  EXPECT_THROW(run_episode(lat, cfg), ParameterError);
  cfg = config_for(Strategy::kRandom, 3, 0);
  cfg.fidelity_threshold = 0.0;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg.fidelity_threshold = 1.5;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg.fidelity_threshold = 1.0;
  EXPECT_NO_THROW(cfg.validate());
  cfg.measurement.sigma = -1;
  EXPECT_THROW(cfg.validate(), ParameterError);
}

TEST(Aggregate, TwoReplicationExample) {
  const std::vector<EpisodeResult> reps{with_accuracies({0.8}), with_accuracies({0.9})};
  const auto curve = aggregate(reps);
  ASSERT_EQ(curve.points.size(), 1u);
  EXPECT_NEAR(curve.points[0].mean_accuracy, 0.85, 1e-15);
  // t(0.975, 1 dof) = 12.7062047 from standard tables; s = 0.1 / sqrt(2)
  const double s = 0.1 / std::sqrt(2.0);
  EXPECT_NEAR(*curve.points[0].half_width, 12.7062047 * s / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(*curve.points[0].half_width, 0.635, 1e-3);
  EXPECT_NEAR(*curve.points[0].ci_low(), 0.85 - 0.6353, 1e-3);
}

TEST(Aggregate, IdenticalReplicationsHaveZeroWidth) {
  std::vector<EpisodeResult> reps(100, with_accuracies({0.5, 0.5, 0.5}));
  const auto curve = aggregate(reps);
  for (const auto& p : curve.points) {
    EXPECT_EQ(p.mean_accuracy, 0.5);
    EXPECT_LT(*p.half_width, 1e-12);
  }
  std::vector<EpisodeResult> real(5, with_accuracies({0.7, 0.72}));
  for (const auto& p : aggregate(real).points) EXPECT_EQ(*p.half_width, 0.0);
}

TEST(Aggregate, CommonPrefixAndSingleReplication) {
  const std::vector<EpisodeResult> reps{with_accuracies({0.1, 0.2, 0.3}), with_accuracies({0.1, 0.4})};
  const auto curve = aggregate(reps);
  EXPECT_EQ(curve.points.size(), 2u);
  EXPECT_TRUE(curve.truncated);
  const std::vector<EpisodeResult> one{with_accuracies({0.3})};
  EXPECT_FALSE(aggregate(one).points[0].half_width.has_value());
  EXPECT_THROW(aggregate(std::span<const EpisodeResult>{}), ParameterError);
}

TEST(MeanCi, AgreesWithTableQuantiles) {
  // t(0.975, 9 dof) = 2.262157
  std::vector<double> v;
  for (int i = 0; i < 10; ++i) v.push_back(i);
  const auto m = mean_ci95(v);
  EXPECT_DOUBLE_EQ(m.mean, 4.5);
  EXPECT_NEAR(*m.half_width, 2.262157 * std::sqrt(55.0 / 6.0) / std::sqrt(10.0), 1e-5);
}

TEST(ParallelFor, RunsEveryIndexOnceAndPropagatesErrors) {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Sweep, ZeroBudgetStrategiesMatchPairwise) {
  StrategySweepConfig cfg;
  cfg.strategies = {Strategy::kRandom, Strategy::kUsampLeastConfidence};
  cfg.n_values = {50};
  cfg.budget = 0;
  cfg.replications = 6;
  const auto cells = experiment_strategy_sweep(cfg);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].final_accuracies, cells[1].final_accuracies);
}

TEST(Sweep, DeterministicAndShaped) {
  StrategySweepConfig cfg;
  cfg.strategies = {Strategy::kUsampLeastConfidence, Strategy::kQbcVoteEntropy};
  cfg.n_values = {5, 50};
  cfg.budget = 4;
  cfg.replications = 3;
  cfg.master_seed = 11;
  const auto a = experiment_strategy_sweep(cfg);
  const auto b = experiment_strategy_sweep(cfg);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t c = 0; c < a.size(); ++c) {
    EXPECT_EQ(a[c].final_accuracies, b[c].final_accuracies);
    EXPECT_EQ(a[c].curve.points.size(), 5u);
    EXPECT_EQ(a[c].curve.replications, 3u);
  }
  cfg.replications = 1;
  EXPECT_THROW(experiment_strategy_sweep(cfg), ParameterError);
}

TEST(ThresholdSweep, OneCellPerThresholdAndKind) {
  ThresholdSweepConfig cfg;
  cfg.thresholds = {0.99, 0.9};
  cfg.replications = 3;
  cfg.budget = 5;
  const auto cells = experiment_threshold_sweep(cfg);
  ASSERT_EQ(cells.size(), 4u);
  for (const auto& c : cells) {
    EXPECT_EQ(c.episodes.size(), 3u);
    EXPECT_EQ(c.first_query_cos_alpha.size(), 3u);
    EXPECT_GE(c.labels.mean, 1.0);
    EXPECT_LE(c.labels.mean, 5.0);
  }
}

TEST(Seeds, DistinctStreams) {
  std::set<std::uint64_t> s;
  for (std::size_t i = 0; i < 100; ++i) {
    s.insert(replication_lattice_seed(0, i));
    s.insert(replication_episode_seed(0, i));
  }
  EXPECT_EQ(s.size(), 200u);
  EXPECT_EQ(replication_lattice_seed(3, 4), replication_lattice_seed(3, 4));
}

}  // namespace
}  // namespace qal
