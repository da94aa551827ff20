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

#include "qal/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "qal/errors.hpp"

namespace qal::csv {

namespace {

using namespace std::string_view_literals;

constexpr std::array kLatticeColumns = {"row"sv, "col"sv, "cos_alpha"sv, "true_class"sv};
constexpr std::array kWeakColumns = {"row"sv, "col"sv, "q0"sv};
constexpr std::array kStrategyColumns = {"strategy"sv,      "n"sv,      "sigma"sv,   "labels"sv,
                                         "mean_accuracy"sv, "ci_low"sv, "ci_high"sv, "replications"sv};
constexpr std::array kThresholdColumns = {"threshold"sv, "kind"sv,    "mean_labels"sv, "mean_accuracy"sv,
                                          "ci_low"sv,    "ci_high"sv, "replications"sv};
constexpr std::array kQueryColumns = {"strategy"sv,        "step"sv,         "row"sv,
                                      "col"sv,             "estimated_label"sv, "true_class"sv,
                                      "min_fidelity"sv,    "system_fidelity"sv, "accuracy"sv};

constexpr std::array kAllSchemas = {Schema::kLattice, Schema::kWeakValues, Schema::kStrategySweep,
                                    Schema::kThresholdSweep, Schema::kQueries};

std::string header_line(Schema schema) {
  std::string line;
  for (auto col : columns(schema)) {
    if (!line.empty()) line += ',';
    line += col;
  }
  return line;
}

void expect_width(const Cells& c, Schema schema) {
  if (c.size() != columns(schema).size()) {
    throw ParameterError("csv: expected " + std::to_string(columns(schema).size()) + " fields, got " +
                         std::to_string(c.size()));
  }
}

std::string str(long long v) { return std::to_string(v); }

}  // namespace

std::span<const std::string_view> columns(Schema schema) {
  switch (schema) {
    case Schema::kLattice:
      return kLatticeColumns;
    case Schema::kWeakValues:
      return kWeakColumns;
    case Schema::kStrategySweep:
      return kStrategyColumns;
    case Schema::kThresholdSweep:
      return kThresholdColumns;
    case Schema::kQueries:
      return kQueryColumns;
  }
  return {};
}

std::string_view file_name(Schema schema) {
  switch (schema) {
    case Schema::kLattice:
      return "lattice.csv";
    case Schema::kWeakValues:
      return "weak_values.csv";
    case Schema::kStrategySweep:
      return "strategy_sweep.csv";
    case Schema::kThresholdSweep:
      return "threshold_sweep.csv";
    case Schema::kQueries:
      return "queries.csv";
  }
  return {};
}

std::optional<Schema> schema_for_header(std::string_view header) {
  if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
  for (Schema s : kAllSchemas) {
    if (header_line(s) == header) return s;
  }
  return std::nullopt;
}

std::string format_number(double value) {
  if (!std::isfinite(value)) {
    if (std::isnan(value)) return "nan";
    return value > 0 ? "inf" : "-inf";
  }
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(std::optional<double> value) { return value ? format_number(*value) : std::string(); }

double parse_number(std::string_view field) {
  if (field == "nan") return std::nan("");
  if (field == "inf") return HUGE_VAL;
  if (field == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParameterError("csv: not a number: '" + std::string(field) + "'");
  }
  return v;
}

std::optional<double> parse_optional_number(std::string_view field) {
  if (field.empty()) return std::nullopt;
  return parse_number(field);
}

long long parse_integer(std::string_view field) {
  long long v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParameterError("csv: not an integer: '" + std::string(field) + "'");
  }
  return v;
}

Cells LatticeRow::to_cells() const { return {str(row), str(col), format_number(cos_alpha), str(true_class)}; }

LatticeRow LatticeRow::from_cells(const Cells& c) {
  expect_width(c, kSchema);
  return {static_cast<int>(parse_integer(c[0])), static_cast<int>(parse_integer(c[1])), parse_number(c[2]),
          static_cast<int>(parse_integer(c[3]))};
}

Cells WeakValueRow::to_cells() const { return {str(row), str(col), format_number(q0)}; }

WeakValueRow WeakValueRow::from_cells(const Cells& c) {
  expect_width(c, kSchema);
  return {static_cast<int>(parse_integer(c[0])), static_cast<int>(parse_integer(c[1])), parse_number(c[2])};
}

Cells StrategySweepRow::to_cells() const {
  return {strategy,
          str(n),
          format_number(sigma),
          str(labels),
          format_number(mean_accuracy),
          format_number(ci_low),
          format_number(ci_high),
          str(static_cast<long long>(replications))};
}

StrategySweepRow StrategySweepRow::from_cells(const Cells& c) {
  expect_width(c, kSchema);
  StrategySweepRow r;
  r.strategy = c[0];
  r.n = static_cast<int>(parse_integer(c[1]));
  r.sigma = parse_number(c[2]);
  r.labels = static_cast<int>(parse_integer(c[3]));
  r.mean_accuracy = parse_number(c[4]);
  r.ci_low = parse_optional_number(c[5]);
  r.ci_high = parse_optional_number(c[6]);
  r.replications = static_cast<std::size_t>(parse_integer(c[7]));
  return r;
}

Cells ThresholdSweepRow::to_cells() const {
  return {format_number(threshold), kind, format_number(mean_labels), format_number(mean_accuracy),
          format_number(ci_low), format_number(ci_high), str(static_cast<long long>(replications))};
}

ThresholdSweepRow ThresholdSweepRow::from_cells(const Cells& c) {
  expect_width(c, kSchema);
  ThresholdSweepRow r;
  r.threshold = parse_number(c[0]);
  r.kind = c[1];
  r.mean_labels = parse_number(c[2]);
  r.mean_accuracy = parse_number(c[3]);
  r.ci_low = parse_optional_number(c[4]);
  r.ci_high = parse_optional_number(c[5]);
  r.replications = static_cast<std::size_t>(parse_integer(c[6]));
  return r;
}

Cells QueryRow::to_cells() const {
  return {strategy,
          str(step),
          str(row),
          str(col),
          str(estimated_label),
          str(true_class),
          format_number(min_fidelity),
          format_number(system_fidelity),
          format_number(accuracy)};
}

QueryRow QueryRow::from_cells(const Cells& c) {
  expect_width(c, kSchema);
  QueryRow r;
  r.strategy = c[0];
  r.step = static_cast<int>(parse_integer(c[1]));
  r.row = static_cast<int>(parse_integer(c[2]));
  r.col = static_cast<int>(parse_integer(c[3]));
  r.estimated_label = static_cast<int>(parse_integer(c[4]));
  r.true_class = static_cast<int>(parse_integer(c[5]));
  r.min_fidelity = parse_number(c[6]);
  r.system_fidelity = parse_number(c[7]);
  r.accuracy = parse_number(c[8]);
  return r;
}

std::string render(Schema schema, std::span<const Cells> rows) {
  const std::size_t width = columns(schema).size();
  std::string out = header_line(schema);
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != width) {
      throw std::logic_error("csv::render: row has " + std::to_string(row.size()) + " cells, schema " +
                             std::string(file_name(schema)) + " has " + std::to_string(width));
    }
    for (std::size_t i = 0; i < width; ++i) {
      if (row[i].find_first_of(",\n\r\"") != std::string::npos) {
        throw std::logic_error("csv::render: field needs quoting: '" + row[i] + "'");
      }
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::vector<Cells> split(Schema schema, std::string_view text) {
  std::vector<Cells> rows;
  bool first = true;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (first) {
      if (line != header_line(schema)) {
        throw ParameterError("csv: unexpected header '" + std::string(line) + "' for " +
                             std::string(file_name(schema)));
      }
      first = false;
      continue;
    }
    if (line.empty()) continue;
    Cells cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  if (first) throw ParameterError("csv: missing header for " + std::string(file_name(schema)));
  return rows;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace qal::csv
