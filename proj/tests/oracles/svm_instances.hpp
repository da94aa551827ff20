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

// Random small classification instances and a fully independent linear SVM
// fit (own standardization plus the interior-point QP oracle).

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles/qp_oracle.hpp"
#include "qal/classifiers.hpp"
#include "qal/rng.hpp"

namespace qal::oracle {

inline double sign_of(Label y) { return y == Label::kZero ? 1.0 : -1.0; }

// Random instance of up to 30 points in lattice coordinates. Separable
// instances are labelled by a random line; the others get 20% flips.
inline std::vector<LabeledPoint> random_instance(Rng& rng, bool separable) {
  for (;;) {
    const std::size_t n = 4 + rng.below(27);
    const double theta = rng.uniform() * 2 * std::numbers::pi;
    const double off = (rng.uniform() - 0.5) * 6;
    std::vector<LabeledPoint> pts(n);
    int zeros = 0;
    for (auto& p : pts) {
      double d = 0.0;
      do {
        p.x = {std::floor(rng.uniform() * 21), std::floor(rng.uniform() * 21)};
        d = std::cos(theta) * (p.x[0] - 10) + std::sin(theta) * (p.x[1] - 10) - off;
      } while (separable && std::abs(d) < 0.5);
      p.y = d > 0 ? Label::kZero : Label::kOne;
      if (!separable && rng.uniform() < 0.2) p.y = flip(p.y);
      zeros += p.y == Label::kZero;
    }
    if (zeros == 0 || zeros == static_cast<int>(n)) continue;
    return pts;
  }
}

// Standardizes with the textbook formulas and solves the QP independently.
struct Reference {
  LinearSvmReference svm;
  Point2 mean{}, sd{};
  double decision(const Point2& raw) const {
    return svm.decision({(raw[0] - mean[0]) / sd[0], (raw[1] - mean[1]) / sd[1]});
  }
};

inline Reference reference_fit(const std::vector<LabeledPoint>& pts) {
  Reference ref;
  const double n = static_cast<double>(pts.size());
  for (int f = 0; f < 2; ++f) {
    double m = 0.0, v = 0.0;
    for (const auto& p : pts) m += p.x[f];
    m /= n;
    for (const auto& p : pts) v += (p.x[f] - m) * (p.x[f] - m);
    ref.mean[f] = m;
    ref.sd[f] = v > 0 ? std::sqrt(v / (n - 1)) : 1.0;
  }
  std::vector<Point2> zs;
  std::vector<double> ys;
  for (const auto& p : pts) {
    zs.push_back({(p.x[0] - ref.mean[0]) / ref.sd[0], (p.x[1] - ref.mean[1]) / ref.sd[1]});
    ys.push_back(sign_of(p.y));
  }
  ref.svm = solve_linear_svm(zs, ys, 1.0);
  return ref;
}

}  // namespace qal::oracle
