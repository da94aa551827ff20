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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qal/classifiers.hpp"
#include "qal/lattice.hpp"
#include "qal/measurement.hpp"
#include "qal/strategies.hpp"

namespace qal {

/// Oracle counts used when EpisodeConfig::seed_oracles is unset.
inline constexpr int kUsampSeedOracles = 3;
inline constexpr int kQbcSeedOracles = 5;
inline constexpr int kDefaultLabelBudget = 22;  // 5% of the 441 sites
inline constexpr int kDefaultReplications = 100;

struct EpisodeConfig {
  Strategy strategy = Strategy::kUsampLeastConfidence;
  MeasurementConfig measurement;
  std::optional<int> seed_oracles;  // default depends on the strategy
  int label_budget = kDefaultLabelBudget;
  std::optional<double> fidelity_threshold;  // in (0, 1]
  std::uint64_t seed = 0;

  int oracle_count() const;
  /// Throws ParameterError on an out-of-range field.
  void validate() const;
};

struct TrajectoryPoint {
  int labels_used = 0;
  double accuracy = 0.0;
  double system_fidelity = 1.0;
};

struct QueryEvent {
  std::size_t site_id = 0;
  Label estimated = Label::kZero;
  Label truth = Label::kZero;
  double min_fidelity = 1.0;
};

struct EpisodeResult {
  std::vector<TrajectoryPoint> trajectory;  // labels_used = 0, 1, 2, ...
  std::vector<std::size_t> oracle_sites;
  std::vector<QueryEvent> queries;
  std::string final_model;  // describe() of the model used for accuracy
  int mislabel_count = 0;
  bool stopped_by_threshold = false;
  bool pool_exhausted = false;

  int labels_used() const { return trajectory.empty() ? 0 : trajectory.back().labels_used; }
  double final_accuracy() const { return trajectory.empty() ? 0.0 : trajectory.back().accuracy; }
  double final_fidelity() const { return trajectory.empty() ? 1.0 : trajectory.back().system_fidelity; }
};

/// One seeded active-learning run on a fixed lattice. Deterministic in
/// (lattice, config).
EpisodeResult run_episode(const LatticeState& lattice, const EpisodeConfig& config);

/// Fraction of all lattice sites whose true class the model predicts.
double lattice_accuracy(const TrainedModel& model, const LatticeState& lattice);

struct CurvePoint {
  int labels = 0;
  double mean_accuracy = 0.0;
  std::optional<double> half_width;  // two-sided 95% Student t; absent for one replication

  std::optional<double> ci_low() const;
  std::optional<double> ci_high() const;
};

struct AggregateCurve {
  std::vector<CurvePoint> points;
  std::size_t replications = 0;
  bool truncated = false;  // replications stopped at different label counts
};

/// Mean and 95% confidence half-width of `values` (absent for fewer than two).
struct MeanCi {
  double mean = 0.0;
  std::optional<double> half_width;
};
MeanCi mean_ci95(std::span<const double> values);

/// Per label count mean accuracy with confidence intervals, over the common
/// prefix of the trajectories.
AggregateCurve aggregate(std::span<const EpisodeResult> replications);

/// Seeds for replication `index` of a sweep with master seed `master`.
std::uint64_t replication_lattice_seed(std::uint64_t master, std::size_t index);
std::uint64_t replication_episode_seed(std::uint64_t master, std::size_t index);

/// Runs `count` independent jobs, possibly concurrently. Results are stored
/// by index so the output does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job);

struct StrategySweepConfig {
  std::vector<Strategy> strategies{Strategy::kRandom, Strategy::kUsampLeastConfidence, Strategy::kQbcVoteEntropy};
  std::vector<int> n_values{5, 50, 100, 500};
  double sigma = 10.0;
  MeasurementKind kind = MeasurementKind::kWeak;
  int budget = kDefaultLabelBudget;
  std::optional<double> fidelity_threshold;
  std::size_t replications = kDefaultReplications;
  std::uint64_t master_seed = 0;
};

struct StrategySweepCell {
  Strategy strategy = Strategy::kRandom;
  int n = 0;
  AggregateCurve curve;
  double mean_mislabels = 0.0;
  std::vector<double> final_accuracies;  // per replication, index order
};

/// One curve per (strategy, n). Replication r uses the same lattice and
/// episode seed for every cell so strategies are compared on paired draws.
std::vector<StrategySweepCell> experiment_strategy_sweep(const StrategySweepConfig& config);

struct ThresholdSweepConfig {
  std::vector<double> thresholds{0.98, 0.95, 0.9, 0.85, 0.8, 0.75, 0.7};
  std::vector<MeasurementKind> kinds{MeasurementKind::kWeak, MeasurementKind::kStrong};
  Strategy strategy = Strategy::kUsampLeastConfidence;
  double sigma = 10.0;
  int n = 500;
  int budget = kDefaultLabelBudget;
  std::size_t replications = kDefaultReplications;
  std::uint64_t master_seed = 0;
};

struct ThresholdSweepCell {
  double threshold = 0.0;
  MeasurementKind kind = MeasurementKind::kWeak;
  MeanCi labels;
  MeanCi accuracy;
  std::size_t replications = 0;
  std::vector<EpisodeResult> episodes;  // index order
  std::vector<double> first_query_cos_alpha;  // NaN when nothing was queried
};

std::vector<ThresholdSweepCell> experiment_threshold_sweep(const ThresholdSweepConfig& config);

}  // namespace qal
