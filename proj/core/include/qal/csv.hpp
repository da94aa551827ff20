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

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qal::csv {

enum class Schema { kLattice, kWeakValues, kStrategySweep, kThresholdSweep, kQueries };

std::span<const std::string_view> columns(Schema schema);
std::string_view file_name(Schema schema);
/// Schema whose header line equals `header`, if any.
std::optional<Schema> schema_for_header(std::string_view header);

/// Locale-independent shortest round-trip representation ('.' separator).
std::string format_number(double value);
std::string format_number(std::optional<double> value);  // empty field when absent
double parse_number(std::string_view field);
std::optional<double> parse_optional_number(std::string_view field);
long long parse_integer(std::string_view field);

using Cells = std::vector<std::string>;

struct LatticeRow {
  static constexpr Schema kSchema = Schema::kLattice;
  int row = 0;
  int col = 0;
  double cos_alpha = 0.0;
  int true_class = 0;

  Cells to_cells() const;
  static LatticeRow from_cells(const Cells& c);
  bool operator==(const LatticeRow&) const = default;
};

struct WeakValueRow {
  static constexpr Schema kSchema = Schema::kWeakValues;
  int row = 0;
  int col = 0;
  double q0 = 0.0;

  Cells to_cells() const;
  static WeakValueRow from_cells(const Cells& c);
  bool operator==(const WeakValueRow&) const = default;
};

struct StrategySweepRow {
  static constexpr Schema kSchema = Schema::kStrategySweep;
  std::string strategy;
  int n = 0;
  double sigma = 0.0;
  int labels = 0;
  double mean_accuracy = 0.0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::size_t replications = 0;

  Cells to_cells() const;
  static StrategySweepRow from_cells(const Cells& c);
  bool operator==(const StrategySweepRow&) const = default;
};

struct ThresholdSweepRow {
  static constexpr Schema kSchema = Schema::kThresholdSweep;
  double threshold = 0.0;
  std::string kind;
  double mean_labels = 0.0;
  double mean_accuracy = 0.0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::size_t replications = 0;

  Cells to_cells() const;
  static ThresholdSweepRow from_cells(const Cells& c);
  bool operator==(const ThresholdSweepRow&) const = default;
};

/// Per-query trace of a single episode (figure1 diagnostics).
struct QueryRow {
  static constexpr Schema kSchema = Schema::kQueries;
  std::string strategy;
  int step = 0;
  int row = 0;
  int col = 0;
  int estimated_label = 0;
  int true_class = 0;
  double min_fidelity = 1.0;
  double system_fidelity = 1.0;
  double accuracy = 0.0;

  Cells to_cells() const;
  static QueryRow from_cells(const Cells& c);
  bool operator==(const QueryRow&) const = default;
};

/// Header plus one line per row. Throws std::logic_error when a row does not
/// produce exactly one cell per column.
std::string render(Schema schema, std::span<const Cells> rows);

/// Splits a rendered file into data rows, checking the header.
std::vector<Cells> split(Schema schema, std::string_view text);

template <typename Row>
std::string render(std::span<const Row> rows) {
  std::vector<Cells> cells;
  cells.reserve(rows.size());
  for (const auto& r : rows) cells.push_back(r.to_cells());
  return render(Row::kSchema, cells);
}

template <typename Row>
std::vector<Row> parse(std::string_view text) {
  std::vector<Row> out;
  for (const auto& c : split(Row::kSchema, text)) out.push_back(Row::from_cells(c));
  return out;
}

/// Writes to a temporary sibling and renames over `path`, so readers never
/// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Renders `rows` and writes <dir>/<schema file name> atomically.
template <typename Row>
std::filesystem::path emit_csv(const std::filesystem::path& dir, std::span<const Row> rows) {
  const auto path = dir / std::string(file_name(Row::kSchema));
  write_file_atomic(path, render(rows));
  return path;
}

}  // namespace qal::csv
