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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qal/engine.hpp"
#include "qal/measurement.hpp"
#include "qal/strategies.hpp"

namespace qal {

enum class Experiment { kFigure1, kFigure2, kFigure3 };

const char* to_string(Experiment e);

inline constexpr const char* kDefaultOutDir = "qal_out";
inline constexpr const char* kOutDirEnv = "QAL_OUT";

/// Options for one CLI run. Unset optionals fall back to the experiment's
/// own defaults (see run_cli).
struct RunConfig {
  Experiment experiment = Experiment::kFigure2;
  std::vector<Strategy> strategies;
  std::optional<MeasurementKind> measurement;
  double sigma = 10.0;
  std::optional<int> n;
  int budget = kDefaultLabelBudget;
  std::vector<double> thresholds;
  std::size_t replications = kDefaultReplications;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = kDefaultOutDir;
  bool plot = false;
};

/// Thrown for --help; what() carries the usage text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses CLI tokens (without the program name). Precedence is flag, then
/// `config_file` / --config (flat `key = value` lines, '#' comments, keys as
/// the flag names), then the QAL_OUT environment variable for --out, then
/// built-in defaults. Throws UsageError on any bad input.
RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::filesystem::path>& config_file = std::nullopt);

}  // namespace qal
