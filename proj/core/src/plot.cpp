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

#include "qal/plot.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <optional>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qal/errors.hpp"

namespace qal::plot {

namespace {

constexpr std::array kSeriesColors = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::array kSeriesMarkers = {"circle", "triangle", "diamond", "square", "circle", "triangle"};

std::string num(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
  return std::string(buf.data(), res.ptr);
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string svg_open(double w, double h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) +
         "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + ' ' + num(h) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string marker(std::string_view shape, double x, double y, std::string_view color) {
  const double r = 4.0;
  if (shape == "triangle") {
    return "<polygon class=\"marker\" points=\"" + num(x) + ',' + num(y - r) + ' ' + num(x - r) + ',' + num(y + r) +
           ' ' + num(x + r) + ',' + num(y + r) + "\" fill=\"" + std::string(color) + "\"/>\n";
  }
  if (shape == "diamond") {
    return "<polygon class=\"marker\" points=\"" + num(x) + ',' + num(y - r) + ' ' + num(x + r) + ',' + num(y) + ' ' +
           num(x) + ',' + num(y + r) + ' ' + num(x - r) + ',' + num(y) + "\" fill=\"" + std::string(color) + "\"/>\n";
  }
  if (shape == "square") {
    return "<rect class=\"marker\" x=\"" + num(x - r) + "\" y=\"" + num(y - r) + "\" width=\"" + num(2 * r) +
           "\" height=\"" + num(2 * r) + "\" fill=\"" + std::string(color) + "\"/>\n";
  }
  return "<circle class=\"marker\" cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) + "\" fill=\"" +
         std::string(color) + "\"/>\n";
}

struct SeriesPoint {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> lo;
  std::optional<double> hi;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::map<std::string, std::vector<SeriesPoint>> series;  // by series name
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

// Draws one panel into a w x h box at (ox, oy).
std::string draw_panel(const Panel& panel, const std::vector<std::string>& series_order, double ox, double oy,
                       double w, double h) {
  constexpr double left = 55, right = 15, top = 25, bottom = 40;
  double xmin = HUGE_VAL, xmax = -HUGE_VAL, ymin = HUGE_VAL, ymax = -HUGE_VAL;
  for (const auto& [name, pts] : panel.series) {
    for (const auto& p : pts) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min({ymin, p.y, p.lo.value_or(p.y)});
      ymax = std::max({ymax, p.y, p.hi.value_or(p.y)});
    }
  }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  const Range xr = padded(xmin, xmax);
  const Range yr = padded(ymin, ymax);
  const double pw = w - left - right;
  const double ph = h - top - bottom;
  auto sx = [&](double x) { return ox + left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return oy + top + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

  std::string out = "<g class=\"panel\">\n";
  out += "<text x=\"" + num(ox + left + pw / 2) + "\" y=\"" + num(oy + 16) + "\" text-anchor=\"middle\">" +
         escape(panel.title) + "</text>\n";
  out += "<rect x=\"" + num(ox + left) + "\" y=\"" + num(oy + top) + "\" width=\"" + num(pw) + "\" height=\"" +
         num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    out += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(oy + top + ph + 14) + "\" text-anchor=\"middle\">" +
           num(xv) + "</text>\n";
    out += "<text x=\"" + num(ox + left - 4) + "\" y=\"" + num(sy(yv) + 4) + "\" text-anchor=\"end\">" + num(yv) +
           "</text>\n";
  }
  out += "<text x=\"" + num(ox + left + pw / 2) + "\" y=\"" + num(oy + h - 6) + "\" text-anchor=\"middle\">" +
         escape(panel.x_label) + "</text>\n";
  out += "<text transform=\"translate(" + num(ox + 12) + ',' + num(oy + top + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(panel.y_label) + "</text>\n";

  for (std::size_t s = 0; s < series_order.size(); ++s) {
    const auto it = panel.series.find(series_order[s]);
    if (it == panel.series.end()) continue;
    const char* color = kSeriesColors[s % kSeriesColors.size()];
    const char* shape = kSeriesMarkers[s % kSeriesMarkers.size()];
    auto pts = it->second;
    std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.x < b.x; });
    out += "<g class=\"series\" data-name=\"" + escape(series_order[s]) + "\">\n<polyline fill=\"none\" stroke=\"" +
           color + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out += ' ';
      out += num(sx(pts[i].x)) + ',' + num(sy(pts[i].y));
    }
    out += "\"/>\n";
    for (const auto& p : pts) {
      if (p.lo && p.hi) {
        out += "<line class=\"errorbar\" x1=\"" + num(sx(p.x)) + "\" y1=\"" + num(sy(*p.lo)) + "\" x2=\"" +
               num(sx(p.x)) + "\" y2=\"" + num(sy(*p.hi)) + "\" stroke=\"" + color + "\"/>\n";
      }
      out += marker(shape, sx(p.x), sy(p.y), color);
    }
    out += "</g>\n";
  }
  out += "</g>\n";
  return out;
}

std::string draw_legend(const std::vector<std::string>& names, double x, double y) {
  std::string out = "<g class=\"legend\">\n";
  for (std::size_t s = 0; s < names.size(); ++s) {
    const double ly = y + 18.0 * static_cast<double>(s);
    out += "<g class=\"legend-entry\">" +
           marker(kSeriesMarkers[s % kSeriesMarkers.size()], x, ly, kSeriesColors[s % kSeriesColors.size()]) +
           "<text x=\"" + num(x + 10) + "\" y=\"" + num(ly + 4) + "\">" + escape(names[s]) + "</text></g>\n";
  }
  out += "</g>\n";
  return out;
}

}  // namespace

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "heatmap") return PlotKind::kHeatmap;
  if (name == "curves") return PlotKind::kCurves;
  throw UsageError("unknown plot kind '" + std::string(name) + "' (expected heatmap|curves)");
}

std::string diverging_color(double value) {
  const double v = std::clamp(std::isnan(value) ? 0.0 : value, -1.0, 1.0);
  int r = 255, g = 255, b = 255;
  if (v >= 0) {
    g = b = static_cast<int>(std::lround(255.0 * (1.0 - v)));
  } else {
    r = g = static_cast<int>(std::lround(255.0 * (1.0 + v)));
  }
  std::array<char, 8> buf{};
  std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", r, g, b);
  return buf.data();
}

std::string render_heatmap(csv::Schema schema, std::string_view csv_text) {
  struct Cell {
    int row, col;
    double value;
  };
  std::vector<Cell> cells;
  std::string title;
  if (schema == csv::Schema::kLattice) {
    for (const auto& r : csv::parse<csv::LatticeRow>(csv_text)) cells.push_back({r.row, r.col, r.cos_alpha});
    title = "<sigma_z> = cos(alpha)";
  } else if (schema == csv::Schema::kWeakValues) {
    double scale = 0.0;
    for (const auto& r : csv::parse<csv::WeakValueRow>(csv_text)) {
      cells.push_back({r.row, r.col, r.q0});
      scale = std::max(scale, std::abs(r.q0));
    }
    if (scale > 0.0) {
      for (auto& c : cells) c.value /= scale;
    }
    title = "single-shot weak values (scaled by max |q0| = " + num(scale) + ")";
  } else {
    throw UsageError("heatmap plots need lattice.csv or weak_values.csv");
  }

  int rows = 0, cols = 0;
  for (const auto& c : cells) {
    rows = std::max(rows, c.row + 1);
    cols = std::max(cols, c.col + 1);
  }
  constexpr double cell = 20, margin = 40;
  const double w = margin * 2 + cell * cols + 60;
  const double h = margin * 2 + cell * rows;
  std::string out = svg_open(w, h);
  out += "<text x=\"" + num(margin) + "\" y=\"" + num(margin - 14) + "\">" + escape(title) + "</text>\n";
  out += "<g class=\"heatmap\">\n";
  for (const auto& c : cells) {
    // Row 0 at the bottom, matching a standard plot orientation.
    out += "<rect class=\"cell\" x=\"" + num(margin + cell * c.col) + "\" y=\"" +
           num(margin + cell * (rows - 1 - c.row)) + "\" width=\"" + num(cell) + "\" height=\"" + num(cell) +
           "\" fill=\"" + diverging_color(c.value) + "\"/>\n";
  }
  out += "</g>\n<g class=\"colorbar\">\n";
  const double bx = margin * 2 + cell * cols - 20;
  for (int k = 0; k <= 20; ++k) {
    const double v = 1.0 - k / 10.0;
    out += "<rect x=\"" + num(bx) + "\" y=\"" + num(margin + k * cell * rows / 21.0) + "\" width=\"14\" height=\"" +
           num(cell * rows / 21.0 + 0.5) + "\" fill=\"" + diverging_color(v) + "\"/>\n";
  }
  out += "<text x=\"" + num(bx + 18) + "\" y=\"" + num(margin + 8) + "\">1</text>\n";
  out += "<text x=\"" + num(bx + 18) + "\" y=\"" + num(margin + cell * rows) + "\">-1</text>\n";
  out += "</g>\n</svg>\n";
  return out;
}

std::string render_curves(csv::Schema schema, std::string_view csv_text) {
  std::vector<Panel> panels;
  std::vector<std::string> series_order;
  auto note_series = [&](const std::string& name) {
    if (std::find(series_order.begin(), series_order.end(), name) == series_order.end()) series_order.push_back(name);
  };

  if (schema == csv::Schema::kStrategySweep) {
    std::map<int, Panel> by_n;
    for (const auto& r : csv::parse<csv::StrategySweepRow>(csv_text)) {
      Panel& p = by_n[r.n];
      p.title = "n = " + std::to_string(r.n) + ", sigma = " + csv::format_number(r.sigma);
      p.x_label = "queried labels";
      p.y_label = "mean accuracy";
      p.series[r.strategy].push_back({static_cast<double>(r.labels), r.mean_accuracy, r.ci_low, r.ci_high});
      note_series(r.strategy);
    }
    for (auto& [n, p] : by_n) panels.push_back(std::move(p));
  } else if (schema == csv::Schema::kThresholdSweep) {
    Panel acc{"final accuracy", "fidelity threshold", "mean accuracy", {}};
    Panel labels{"labels acquired", "fidelity threshold", "mean labels", {}};
    for (const auto& r : csv::parse<csv::ThresholdSweepRow>(csv_text)) {
      acc.series[r.kind].push_back({r.threshold, r.mean_accuracy, r.ci_low, r.ci_high});
      labels.series[r.kind].push_back({r.threshold, r.mean_labels, std::nullopt, std::nullopt});
      note_series(r.kind);
    }
    panels.push_back(std::move(acc));
    panels.push_back(std::move(labels));
  } else {
    throw UsageError("curve plots need strategy_sweep.csv or threshold_sweep.csv");
  }
  if (panels.empty()) panels.push_back(Panel{"(no data)", "", "", {}});

  constexpr double pw = 360, ph = 280, legend_w = 140;
  const std::size_t cols = std::min<std::size_t>(panels.size(), 2);
  const std::size_t rows = (panels.size() + cols - 1) / cols;
  std::string out = svg_open(pw * static_cast<double>(cols) + legend_w, ph * static_cast<double>(rows));
  for (std::size_t i = 0; i < panels.size(); ++i) {
    out += draw_panel(panels[i], series_order, pw * static_cast<double>(i % cols),
                      ph * static_cast<double>(i / cols), pw, ph);
  }
  out += draw_legend(series_order, pw * static_cast<double>(cols) + 15, 40);
  out += "</svg>\n";
  return out;
}

std::filesystem::path emit_plot(const std::filesystem::path& csv_path, PlotKind kind) {
  std::string text;
  try {
    text = csv::read_file(csv_path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto header = std::string_view(text).substr(0, text.find('\n'));
  const auto schema = csv::schema_for_header(header);
  if (!schema) throw UsageError("unrecognised CSV header in " + csv_path.string());
  const std::string svg = kind == PlotKind::kHeatmap ? render_heatmap(*schema, text) : render_curves(*schema, text);
  auto out = csv_path;
  out.replace_extension(".svg");
  csv::write_file_atomic(out, svg);
  return out;
}

}  // namespace qal::plot
