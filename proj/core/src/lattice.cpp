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

#include "qal/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qal/errors.hpp"
#include "qal/rng.hpp"

namespace qal {

double QubitSite::cos_alpha() const { return std::cos(alpha); }

std::size_t LatticeState::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(sites.begin(), sites.end(), [label](const QubitSite& s) { return s.true_class == label; }));
}

double ramp_cos_alpha(double signed_distance, double ramp_width, double epsilon, int on_line_sign) {
  double value = std::clamp(2.0 * signed_distance / ramp_width, -1.0 + epsilon, 1.0 - epsilon);
  if (std::abs(value) < epsilon) {
    int sign = signed_distance > 0.0 ? 1 : signed_distance < 0.0 ? -1 : on_line_sign;
    value = sign * epsilon;
  }
  return value;
}

LatticeState generate_lattice(std::uint64_t seed, double ramp_width, double epsilon) {
  if (!(ramp_width > 0.0) || !std::isfinite(ramp_width)) {
    throw ParameterError("generate_lattice: ramp_width must be positive, got " + std::to_string(ramp_width));
  }
  if (!(epsilon > 0.0 && epsilon < 0.1)) {
    throw ParameterError("generate_lattice: epsilon must lie in (0, 0.1), got " + std::to_string(epsilon));
  }

  Rng rng(seed);
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  const int on_line_sign = rng.coin() ? 1 : -1;
  constexpr double centre = (kLatticeSide - 1) / 2.0;

  LatticeState state;
  state.seed = seed;
  state.ramp_width = ramp_width;
  state.epsilon = epsilon;
  state.boundary.normal = {std::cos(theta), std::sin(theta)};
  state.boundary.offset = state.boundary.normal[0] * centre + state.boundary.normal[1] * centre;

  state.sites.reserve(kLatticeSites);
  for (int r = 0; r < kLatticeSide; ++r) {
    for (int c = 0; c < kLatticeSide; ++c) {
      // Distance relative to the centre keeps on-line sites at exactly 0.
      const double d = state.boundary.normal[0] * (r - centre) + state.boundary.normal[1] * (c - centre);
      const double cos_a = ramp_cos_alpha(d, ramp_width, epsilon, on_line_sign);
      QubitSite site;
      site.row = r;
      site.col = c;
      site.alpha = std::acos(cos_a);
      site.true_class = cos_a > 0.0 ? Label::kZero : Label::kOne;
      state.sites.push_back(site);
    }
  }
  return state;
}

namespace {

FeatureStats fit_impl(std::size_t n, std::size_t dim, auto&& at, bool lenient) {
  FeatureStats stats;
  stats.mean.assign(dim, 0.0);
  stats.stddev.assign(dim, 1.0);
  if (n == 0) {
    if (lenient) return stats;
    throw DegenerateStatistics("fit_standardizer: need at least 2 points, got 0");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < dim; ++k) stats.mean[k] += at(i, k);
  }
  for (double& m : stats.mean) m /= static_cast<double>(n);

  if (n < 2) {
    if (lenient) return stats;
    throw DegenerateStatistics("fit_standardizer: need at least 2 points, got " + std::to_string(n));
  }
  for (std::size_t k = 0; k < dim; ++k) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = at(i, k) - stats.mean[k];
      ss += dev * dev;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      if (lenient) continue;
      throw DegenerateStatistics("fit_standardizer: feature " + std::to_string(k) + " has zero variance");
    }
    stats.stddev[k] = sd;
  }
  return stats;
}

}  // namespace

FeatureStats fit_standardizer(std::span<const std::vector<double>> points) {
  const std::size_t dim = points.empty() ? 0 : points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw ParameterError("fit_standardizer: ragged feature vectors");
  }
  return fit_impl(points.size(), dim, [&](std::size_t i, std::size_t k) { return points[i][k]; }, false);
}

FeatureStats fit_standardizer(std::span<const Point2> points) {
  return fit_impl(points.size(), 2, [&](std::size_t i, std::size_t k) { return points[i][k]; }, false);
}

FeatureStats fit_standardizer_lenient(std::span<const Point2> points) {
  return fit_impl(points.size(), 2, [&](std::size_t i, std::size_t k) { return points[i][k]; }, true);
}

std::vector<double> apply_standardizer(const FeatureStats& stats, std::span<const double> point) {
  if (point.size() != stats.dim()) {
    throw ParameterError("apply_standardizer: expected " + std::to_string(stats.dim()) + " features, got " +
                         std::to_string(point.size()));
  }
  std::vector<double> out(point.size());
  for (std::size_t k = 0; k < point.size(); ++k) out[k] = (point[k] - stats.mean[k]) / stats.stddev[k];
  return out;
}

Point2 apply_standardizer(const FeatureStats& stats, const Point2& point) {
  if (stats.dim() != 2) {
    throw ParameterError("apply_standardizer: expected 2-d statistics, got " + std::to_string(stats.dim()));
  }
  return {(point[0] - stats.mean[0]) / stats.stddev[0], (point[1] - stats.mean[1]) / stats.stddev[1]};
}

}  // namespace qal
