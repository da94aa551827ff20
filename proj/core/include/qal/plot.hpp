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

#include <filesystem>
#include <string>
#include <string_view>

#include "qal/csv.hpp"

namespace qal::plot {

enum class PlotKind { kHeatmap, kCurves };

PlotKind parse_plot_kind(std::string_view name);

/// Blue (-1) / white (0) / red (+1) diverging map; inputs are clamped.
std::string diverging_color(double value);

/// Heatmap of a lattice.csv or weak_values.csv body. Weak values are scaled by
/// their largest magnitude before colouring.
std::string render_heatmap(csv::Schema schema, std::string_view csv_text);

/// Mean curves with 95% error bars: one panel per n for strategy_sweep.csv,
/// accuracy and label-count panels for threshold_sweep.csv.
std::string render_curves(csv::Schema schema, std::string_view csv_text);

/// Reads `csv_path`, renders it as `kind`, and writes the SVG next to it
/// (same stem, .svg). Throws UsageError for an unknown schema or a schema the
/// plot kind cannot draw.
std::filesystem::path emit_plot(const std::filesystem::path& csv_path, PlotKind kind);

}  // namespace qal::plot
