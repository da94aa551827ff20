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
#include <cstdint>
#include <span>
#include <vector>

namespace qal {

inline constexpr int kLatticeSide = 21;
inline constexpr std::size_t kLatticeSites = kLatticeSide * kLatticeSide;

/// Binary label. Class 0 carries <sigma_z> > 0, class 1 carries <sigma_z> < 0.
enum class Label : std::uint8_t { kZero = 0, kOne = 1 };

inline int to_int(Label l) { return static_cast<int>(l); }
inline Label flip(Label l) { return l == Label::kZero ? Label::kOne : Label::kZero; }

using Point2 = std::array<double, 2>;

struct QubitSite {
  int row = 0;
  int col = 0;
  double alpha = 0.0;  // Bloch polar angle in (0, pi)
  Label true_class = Label::kZero;

  double cos_alpha() const;
  Point2 features() const { return {static_cast<double>(row), static_cast<double>(col)}; }
};

/// Separating line n . x = offset, n a unit vector.
struct Boundary {
  Point2 normal{1.0, 0.0};
  double offset = 0.0;

  double signed_distance(const Point2& x) const {
    return normal[0] * x[0] + normal[1] * x[1] - offset;
  }
};

struct LatticeState {
  std::vector<QubitSite> sites;  // row-major, kLatticeSites entries
  Boundary boundary;
  double ramp_width = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;

  static std::size_t index(int row, int col) {
    return static_cast<std::size_t>(row) * kLatticeSide + static_cast<std::size_t>(col);
  }
  std::size_t count(Label label) const;
};

inline constexpr double kDefaultRampWidth = 6.0;
inline constexpr double kDefaultEpsilon = 0.02;

/// Builds the 21x21 ground-truth lattice.
///
/// cos(alpha) is a linear ramp in the signed distance d to a random line
/// through the lattice centre: clamp(2 d / ramp_width, -1 + eps, 1 - eps),
/// with magnitudes below eps pushed out to exactly +-eps so that no site sits
/// at <sigma_z> = 0. Sites lying exactly on the line take a per-lattice sign
/// drawn from the seed.
LatticeState generate_lattice(std::uint64_t seed, double ramp_width = kDefaultRampWidth,
                              double epsilon = kDefaultEpsilon);

/// Maps a signed distance to the clamped, zero-avoiding cos(alpha) value.
/// `on_line_sign` (+1 or -1) is used when the distance is exactly zero.
double ramp_cos_alpha(double signed_distance, double ramp_width, double epsilon,
                      int on_line_sign);

/// Per-feature mean and sample standard deviation (divisor N - 1).
struct FeatureStats {
  std::vector<double> mean;
  std::vector<double> stddev;

  std::size_t dim() const { return mean.size(); }
};

/// Throws DegenerateStatistics for fewer than two points or a zero-variance
/// feature, ParameterError for ragged input.
FeatureStats fit_standardizer(std::span<const std::vector<double>> points);
FeatureStats fit_standardizer(std::span<const Point2> points);

/// Training-time variant: one point or a constant feature falls back to unit
/// scale for that feature instead of throwing.
FeatureStats fit_standardizer_lenient(std::span<const Point2> points);

std::vector<double> apply_standardizer(const FeatureStats& stats, std::span<const double> point);
Point2 apply_standardizer(const FeatureStats& stats, const Point2& point);

}  // namespace qal
