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

#include <iosfwd>

#include "qal/config.hpp"

namespace qal {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs the configured experiment, writes its CSVs (and SVGs with --plot) to
/// config.out_dir and prints one summary line per curve to `out`.
/// Returns kExitOk, or kExitRuntime after reporting an I/O failure on `err`.
int run_cli(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run_cli with exit-status mapping (usage errors -> 2).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qal
