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

#include "qal/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "qal/csv.hpp"
#include "qal/engine.hpp"
#include "qal/errors.hpp"
#include "qal/plot.hpp"
#include "qal/rng.hpp"

namespace qal {

namespace {

constexpr std::uint64_t kWeakValueStream = 0x5745414b56414c31ULL;

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string interval(const std::optional<double>& lo, const std::optional<double>& hi) {
  if (!lo || !hi) return "[n/a]";
  return "[" + fixed(*lo) + ", " + fixed(*hi) + "]";
}

void run_figure1(const RunConfig& cfg, std::ostream& out) {
  const LatticeState lattice = generate_lattice(replication_lattice_seed(cfg.seed, 0));

  std::vector<csv::LatticeRow> lattice_rows;
  std::vector<csv::WeakValueRow> weak_rows;
  for (std::size_t id = 0; id < lattice.sites.size(); ++id) {
    const QubitSite& s = lattice.sites[id];
    lattice_rows.push_back({s.row, s.col, s.cos_alpha(), to_int(s.true_class)});
    Rng rng = Rng::derive(cfg.seed ^ kWeakValueStream, id);
    weak_rows.push_back({s.row, s.col, sample_weak(s.alpha, cfg.sigma, rng).q0});
  }
  const auto lattice_path = csv::emit_csv<csv::LatticeRow>(cfg.out_dir, lattice_rows);
  const auto weak_path = csv::emit_csv<csv::WeakValueRow>(cfg.out_dir, weak_rows);

  std::vector<Strategy> strategies = cfg.strategies;
  if (strategies.empty()) strategies = {Strategy::kUsampLeastConfidence, Strategy::kQbcVoteEntropy};

  std::vector<csv::QueryRow> query_rows;
  for (Strategy s : strategies) {
    EpisodeConfig ec;
    ec.strategy = s;
    ec.measurement = {cfg.sigma, cfg.n.value_or(500), cfg.measurement.value_or(MeasurementKind::kWeak)};
    ec.label_budget = cfg.budget;
    if (!cfg.thresholds.empty()) ec.fidelity_threshold = cfg.thresholds.front();
    ec.seed = replication_episode_seed(cfg.seed, 0);
    const EpisodeResult res = run_episode(lattice, ec);
    for (std::size_t k = 0; k < res.queries.size(); ++k) {
      const auto& q = res.queries[k];
      const auto& site = lattice.sites[q.site_id];
      const auto& point = res.trajectory[k + 1];
      query_rows.push_back({std::string(to_string(s)), point.labels_used, site.row, site.col, to_int(q.estimated),
                            to_int(q.truth), q.min_fidelity, point.system_fidelity, point.accuracy});
    }
    out << "figure1 " << to_string(s) << ": labels=" << res.labels_used()
        << " accuracy=" << fixed(res.final_accuracy()) << " fidelity=" << fixed(res.final_fidelity())
        << " mislabels=" << res.mislabel_count << '\n';
  }
  csv::emit_csv<csv::QueryRow>(cfg.out_dir, query_rows);

  if (cfg.plot) {
    plot::emit_plot(lattice_path, plot::PlotKind::kHeatmap);
    plot::emit_plot(weak_path, plot::PlotKind::kHeatmap);
  }
}

void run_figure2(const RunConfig& cfg, std::ostream& out) {
  StrategySweepConfig sc;
  if (!cfg.strategies.empty()) sc.strategies = cfg.strategies;
  if (cfg.n) sc.n_values = {*cfg.n};
  sc.sigma = cfg.sigma;
  sc.kind = cfg.measurement.value_or(MeasurementKind::kWeak);
  sc.budget = cfg.budget;
  if (!cfg.thresholds.empty()) sc.fidelity_threshold = cfg.thresholds.front();
  sc.replications = cfg.replications;
  sc.master_seed = cfg.seed;

  std::vector<csv::StrategySweepRow> rows;
  for (const auto& cell : experiment_strategy_sweep(sc)) {
    for (const auto& p : cell.curve.points) {
      rows.push_back({std::string(to_string(cell.strategy)), cell.n, sc.sigma, p.labels, p.mean_accuracy, p.ci_low(),
                      p.ci_high(), cell.curve.replications});
    }
    const auto& last = cell.curve.points.back();
    out << "figure2 " << to_string(cell.strategy) << " n=" << cell.n << ": accuracy@" << last.labels << '='
        << fixed(last.mean_accuracy) << ' ' << interval(last.ci_low(), last.ci_high())
        << " mislabels/episode=" << fixed(cell.mean_mislabels, 2) << (cell.curve.truncated ? " (truncated)" : "")
        << '\n';
  }
  const auto path = csv::emit_csv<csv::StrategySweepRow>(cfg.out_dir, rows);
  if (cfg.plot) plot::emit_plot(path, plot::PlotKind::kCurves);
}

void run_figure3(const RunConfig& cfg, std::ostream& out) {
  ThresholdSweepConfig tc;
  if (!cfg.thresholds.empty()) tc.thresholds = cfg.thresholds;
  if (cfg.measurement) tc.kinds = {*cfg.measurement};
  if (!cfg.strategies.empty()) tc.strategy = cfg.strategies.front();
  tc.sigma = cfg.sigma;
  tc.n = cfg.n.value_or(500);
  tc.budget = cfg.budget;
  tc.replications = cfg.replications;
  tc.master_seed = cfg.seed;

  std::vector<csv::ThresholdSweepRow> rows;
  for (const auto& cell : experiment_threshold_sweep(tc)) {
    std::optional<double> lo, hi;
    if (cell.accuracy.half_width) {
      lo = cell.accuracy.mean - *cell.accuracy.half_width;
      hi = cell.accuracy.mean + *cell.accuracy.half_width;
    }
    rows.push_back({cell.threshold, to_string(cell.kind), cell.labels.mean, cell.accuracy.mean, lo, hi,
                    cell.replications});
    out << "figure3 threshold=" << csv::format_number(cell.threshold) << ' ' << to_string(cell.kind)
        << ": labels=" << fixed(cell.labels.mean, 2) << " accuracy=" << fixed(cell.accuracy.mean) << ' '
        << interval(lo, hi) << '\n';
  }
  const auto path = csv::emit_csv<csv::ThresholdSweepRow>(cfg.out_dir, rows);
  if (cfg.plot) plot::emit_plot(path, plot::PlotKind::kCurves);
}

}  // namespace

int run_cli(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.sigma < kWeakRegimeSigma) {
    err << "qal: warning: sigma = " << config.sigma << " is outside the weak-measurement regime (sigma >= "
        << kWeakRegimeSigma << ")\n";
  }
  try {
    std::filesystem::create_directories(config.out_dir);
    switch (config.experiment) {
      case Experiment::kFigure1:
        run_figure1(config, out);
        break;
      case Experiment::kFigure2:
        run_figure2(config, out);
        break;
      case Experiment::kFigure3:
        run_figure3(config, out);
        break;
    }
  } catch (const ParameterError& e) {
    err << "qal: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "qal: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qal: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "qal: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  return run_cli(config, out, err);
}

}  // namespace qal
