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

#include "qal/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "qal/errors.hpp"
#include "qal/rng.hpp"

namespace qal {

namespace {

constexpr std::uint64_t kLatticeStream = 0x4c41545449434531ULL;
constexpr std::uint64_t kEpisodeStream = 0x455049534f444531ULL;
constexpr std::uint64_t kMeasureStream = 0x4d45415355524531ULL;

std::vector<std::size_t> draw_oracles(const LatticeState& lattice, int count, Rng& rng) {
  const bool has0 = lattice.count(Label::kZero) > 0;
  const bool has1 = lattice.count(Label::kOne) > 0;
  if (!has0 || !has1) throw ParameterError("run_episode: lattice must contain both classes");

  std::vector<std::size_t> ids(lattice.sites.size());
  const auto k = static_cast<std::size_t>(count);
  while (true) {
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    // Partial Fisher-Yates: the first k entries are a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) std::swap(ids[i], ids[i + rng.below(ids.size() - i)]);
    bool seen0 = false;
    bool seen1 = false;
    for (std::size_t i = 0; i < k; ++i) {
      (lattice.sites[ids[i]].true_class == Label::kZero ? seen0 : seen1) = true;
    }
    if (seen0 && seen1) return {ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k)};
  }
}

Committee fit_models(Strategy strategy, std::span<const LabeledPoint> labeled) {
  if (is_qbc(strategy)) return train_committee(labeled);
  Committee c;
  c.members.push_back(train(ModelKind::kLinearSvm, labeled));
  return c;
}

}  // namespace

int EpisodeConfig::oracle_count() const {
  if (seed_oracles) return *seed_oracles;
  return is_qbc(strategy) ? kQbcSeedOracles : kUsampSeedOracles;
}

void EpisodeConfig::validate() const {
  measurement.validate();
  const int oracles = oracle_count();
  if (oracles < 2 || oracles > static_cast<int>(kLatticeSites)) {
    throw ParameterError("EpisodeConfig: seed_oracles must lie in [2, 441], got " + std::to_string(oracles));
  }
  if (label_budget < 0) throw ParameterError("EpisodeConfig: label_budget must be >= 0");
  if (fidelity_threshold && !(*fidelity_threshold > 0.0 && *fidelity_threshold <= 1.0)) {
    throw ParameterError("EpisodeConfig: fidelity_threshold must lie in (0, 1]");
  }
}

double lattice_accuracy(const TrainedModel& model, const LatticeState& lattice) {
  std::size_t correct = 0;
  for (const auto& s : lattice.sites) correct += predict(model, s.features()) == s.true_class ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(lattice.sites.size());
}

EpisodeResult run_episode(const LatticeState& lattice, const EpisodeConfig& config) {
  config.validate();
  if (lattice.sites.size() != kLatticeSites) throw ParameterError("run_episode: lattice must have 441 sites");

  Rng rng(config.seed);
  EpisodeResult result;
  result.oracle_sites = draw_oracles(lattice, config.oracle_count(), rng);

  std::vector<bool> used(lattice.sites.size(), false);
  std::vector<LabeledPoint> labeled;
  for (auto id : result.oracle_sites) {
    used[id] = true;
    labeled.push_back({lattice.sites[id].features(), lattice.sites[id].true_class});
  }

  Committee models = fit_models(config.strategy, labeled);
  double fidelity = 1.0;
  result.trajectory.push_back({0, lattice_accuracy(models.svm(), lattice), fidelity});

  std::vector<Candidate> candidates;
  candidates.reserve(lattice.sites.size());
  int labels = 0;
  while (labels < config.label_budget) {
    candidates.clear();
    for (std::size_t id = 0; id < lattice.sites.size(); ++id) {
      if (!used[id]) candidates.push_back({id, lattice.sites[id].features()});
    }
    if (candidates.empty()) {
      result.pool_exhausted = true;
      break;
    }

    const QueryDecision decision = select_candidate(config.strategy, models, candidates, rng);
    const QubitSite& site = lattice.sites[decision.site_id];
    Rng site_rng = Rng::derive(config.seed ^ kMeasureStream, decision.site_id);
    const MeasurementRecord rec = measure_ensemble(site, decision.site_id, config.measurement, site_rng);

    used[decision.site_id] = true;
    labeled.push_back({site.features(), rec.estimated_label});
    fidelity *= rec.min_fidelity;
    ++labels;
    if (rec.estimated_label != site.true_class) ++result.mislabel_count;
    result.queries.push_back({decision.site_id, rec.estimated_label, site.true_class, rec.min_fidelity});

    models = fit_models(config.strategy, labeled);
    result.trajectory.push_back({labels, lattice_accuracy(models.svm(), lattice), fidelity});

    if (config.fidelity_threshold && fidelity < *config.fidelity_threshold) {
      result.stopped_by_threshold = true;
      break;
    }
  }
  result.final_model = describe(models.svm());
  return result;
}

std::optional<double> CurvePoint::ci_low() const {
  if (!half_width) return std::nullopt;
  return mean_accuracy - *half_width;
}

std::optional<double> CurvePoint::ci_high() const {
  if (!half_width) return std::nullopt;
  return mean_accuracy + *half_width;
}

MeanCi mean_ci95(std::span<const double> values) {
  MeanCi out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    out.mean = values.front();
    out.half_width = 0.0;
    return out;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  const double s = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  out.half_width = boost::math::quantile(dist, 0.975) * s / std::sqrt(n);
  return out;
}

AggregateCurve aggregate(std::span<const EpisodeResult> replications) {
  if (replications.empty()) throw ParameterError("aggregate: need at least one replication");
  AggregateCurve curve;
  curve.replications = replications.size();
  std::size_t common = std::numeric_limits<std::size_t>::max();
  std::size_t longest = 0;
  for (const auto& r : replications) {
    common = std::min(common, r.trajectory.size());
    longest = std::max(longest, r.trajectory.size());
  }
  curve.truncated = common != longest;

  std::vector<double> acc(replications.size());
  for (std::size_t x = 0; x < common; ++x) {
    for (std::size_t r = 0; r < replications.size(); ++r) acc[r] = replications[r].trajectory[x].accuracy;
    const MeanCi m = mean_ci95(acc);
    curve.points.push_back({replications.front().trajectory[x].labels_used, m.mean, m.half_width});
  }
  return curve;
}

std::uint64_t replication_lattice_seed(std::uint64_t master, std::size_t index) {
  return Rng::derive(master ^ kLatticeStream, index).next_u64();
}

std::uint64_t replication_episode_seed(std::uint64_t master, std::size_t index) {
  return Rng::derive(master ^ kEpisodeStream, index).next_u64();
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<StrategySweepCell> experiment_strategy_sweep(const StrategySweepConfig& config) {
  if (config.replications < 2) throw ParameterError("experiment_strategy_sweep: replications must be >= 2");
  if (config.strategies.empty() || config.n_values.empty()) {
    throw ParameterError("experiment_strategy_sweep: need at least one strategy and one n");
  }

  std::vector<StrategySweepCell> cells;
  for (int n : config.n_values) {
    for (Strategy s : config.strategies) {
      StrategySweepCell cell;
      cell.strategy = s;
      cell.n = n;
      cells.push_back(cell);
    }
  }
  // Validate every cell up front so a bad value fails before any work.
  std::vector<EpisodeConfig> episode_configs;
  for (const auto& cell : cells) {
    EpisodeConfig ec;
    ec.strategy = cell.strategy;
    ec.measurement = {config.sigma, cell.n, config.kind};
    ec.label_budget = config.budget;
    ec.fidelity_threshold = config.fidelity_threshold;
    ec.validate();
    episode_configs.push_back(ec);
  }

  const std::size_t reps = config.replications;
  std::vector<std::vector<EpisodeResult>> results(cells.size(), std::vector<EpisodeResult>(reps));
  parallel_for(reps, [&](std::size_t r) {
    const LatticeState lattice = generate_lattice(replication_lattice_seed(config.master_seed, r));
    const std::uint64_t seed = replication_episode_seed(config.master_seed, r);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      EpisodeConfig ec = episode_configs[c];
      ec.seed = seed;
      results[c][r] = run_episode(lattice, ec);
    }
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    cells[c].curve = aggregate(results[c]);
    double mislabels = 0.0;
    for (const auto& res : results[c]) {
      mislabels += res.mislabel_count;
      cells[c].final_accuracies.push_back(res.final_accuracy());
    }
    cells[c].mean_mislabels = mislabels / static_cast<double>(reps);
  }
  return cells;
}

std::vector<ThresholdSweepCell> experiment_threshold_sweep(const ThresholdSweepConfig& config) {
  if (config.replications < 2) throw ParameterError("experiment_threshold_sweep: replications must be >= 2");
  for (double t : config.thresholds) {
    if (!(t > 0.0 && t < 1.0)) {
      throw ParameterError("experiment_threshold_sweep: thresholds must lie in (0, 1), got " + std::to_string(t));
    }
  }

  std::vector<ThresholdSweepCell> cells;
  std::vector<EpisodeConfig> episode_configs;
  for (double t : config.thresholds) {
    for (MeasurementKind k : config.kinds) {
      ThresholdSweepCell cell;
      cell.threshold = t;
      cell.kind = k;
      cell.replications = config.replications;
      cell.episodes.resize(config.replications);
      cell.first_query_cos_alpha.assign(config.replications, std::numeric_limits<double>::quiet_NaN());
      cells.push_back(std::move(cell));

      EpisodeConfig ec;
      ec.strategy = config.strategy;
      ec.measurement = {config.sigma, config.n, k};
      ec.label_budget = config.budget;
      ec.fidelity_threshold = t;
      ec.validate();
      episode_configs.push_back(ec);
    }
  }

  parallel_for(config.replications, [&](std::size_t r) {
    const LatticeState lattice = generate_lattice(replication_lattice_seed(config.master_seed, r));
    const std::uint64_t seed = replication_episode_seed(config.master_seed, r);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      EpisodeConfig ec = episode_configs[c];
      ec.seed = seed;
      cells[c].episodes[r] = run_episode(lattice, ec);
      if (!cells[c].episodes[r].queries.empty()) {
        cells[c].first_query_cos_alpha[r] = lattice.sites[cells[c].episodes[r].queries.front().site_id].cos_alpha();
      }
    }
  });

  for (auto& cell : cells) {
    std::vector<double> labels;
    std::vector<double> accuracy;
    for (const auto& e : cell.episodes) {
      labels.push_back(e.labels_used());
      accuracy.push_back(e.final_accuracy());
    }
    cell.labels = mean_ci95(labels);
    cell.accuracy = mean_ci95(accuracy);
  }
  return cells;
}

}  // namespace qal
