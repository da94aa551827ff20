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

#include "qal/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "CLI11.hpp"
#include "qal/errors.hpp"

namespace qal {

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::kFigure1:
      return "figure1";
    case Experiment::kFigure2:
      return "figure2";
    case Experiment::kFigure3:
      return "figure3";
  }
  return "?";
}

RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::filesystem::path>& config_file) {
  RunConfig cfg;
  std::string experiment = to_string(cfg.experiment);
  std::vector<std::string> strategies;
  std::string measurement;
  int n = 0;
  std::string out_dir = kDefaultOutDir;

  CLI::App app{"Active-learning retrieval of qubit-lattice labels under weak and strong measurement", "qal"};
  app.add_option("--experiment", experiment, "figure1 | figure2 | figure3")
      ->check(CLI::IsMember({"figure1", "figure2", "figure3"}))
      ->capture_default_str();
  app.add_option("--strategy", strategies,
                 "Comma-separated: random, usamp_lc, usamp_margin, usamp_entropy, qbc_ve, qbc_kl")
      ->delimiter(',');
  app.add_option("--measurement", measurement, "weak | strong")->check(CLI::IsMember({"weak", "strong"}));
  app.add_option("--sigma", cfg.sigma, "Ancilla spread sigma")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--n", n, "Copies per qubit (figure2 sweeps 5,50,100,500 unless set)")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()));
  app.add_option("--budget", cfg.budget, "Queried-label budget per episode")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--threshold", cfg.thresholds, "Comma-separated fidelity thresholds in (0,1)")->delimiter(',');
  app.add_option("--replications", cfg.replications, "Replications per curve")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->envname(kOutDirEnv)->capture_default_str();
  app.add_flag("--plot", cfg.plot, "Also render SVG plots");
  std::string default_config;
  if (config_file) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(*config_file, ec)) {
      throw UsageError("cannot read config file " + config_file->string());
    }
    default_config = config_file->string();
  }
  app.set_config("--config", default_config, "key = value config file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  // CLI11 wants argv order reversed when given a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.experiment = experiment == "figure1" ? Experiment::kFigure1
                   : experiment == "figure3" ? Experiment::kFigure3
                                             : Experiment::kFigure2;
  try {
    for (const auto& s : strategies) cfg.strategies.push_back(parse_strategy(s));
    if (!measurement.empty()) cfg.measurement = parse_measurement_kind(measurement);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  if (app.count("--n") > 0 || n > 0) cfg.n = n;
  cfg.out_dir = out_dir;

  if (!std::isfinite(cfg.sigma)) throw UsageError("--sigma must be finite");
  for (double t : cfg.thresholds) {
    if (!(t > 0.0 && t < 1.0)) throw UsageError("--threshold values must lie in (0, 1)");
  }
  if (cfg.experiment != Experiment::kFigure1 && cfg.replications < 2) {
    throw UsageError("--replications must be >= 2 for confidence intervals");
  }
  if (cfg.replications < 1) throw UsageError("--replications must be >= 1");
  if (cfg.experiment != Experiment::kFigure3 && cfg.thresholds.size() > 1) {
    throw UsageError("--threshold takes a single value outside figure3");
  }
  if (cfg.experiment == Experiment::kFigure3 && cfg.strategies.size() > 1) {
    throw UsageError("figure3 runs a single --strategy");
  }
  if (cfg.out_dir.empty()) throw UsageError("--out must not be empty");
  return cfg;
}

}  // namespace qal
