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

// Independent reference solver for the soft-margin linear SVM, used only by
// tests. The dual is solved with a primal-dual interior-point method (dense
// Newton steps), and the offset is recovered from the primal: for the unique
// optimal weight vector the hinge objective is piecewise linear in b, so its
// minimizers are found by scanning the breakpoints.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qal/lattice.hpp"

namespace qal::oracle {

struct LinearSvmReference {
  std::vector<double> alpha;
  Point2 w{};
  double bias = 0.0;

  double decision(const Point2& x) const { return w[0] * x[0] + w[1] * x[1] + bias; }
};

// Solves A x = b in place (Gaussian elimination, partial pivoting).
inline std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    }
    if (a[piv * n + k] == 0.0) throw std::runtime_error("dense_solve: singular");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k * n + j] * x[j];
    x[k] = s / a[k * n + k];
  }
  return x;
}

inline LinearSvmReference solve_linear_svm(const std::vector<Point2>& xs, const std::vector<double>& ys, double box) {
  const std::size_t n = xs.size();
  std::vector<double> q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      q[i * n + j] = ys[i] * ys[j] * (xs[i][0] * xs[j][0] + xs[i][1] * xs[j][1]);
    }
  }

  std::vector<double> a(n, box / 2.0), z(n, 1.0), v(n, 1.0);
  double lambda = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap += a[i] * z[i] + (box - a[i]) * v[i];
    std::vector<double> rd(n);
    double rp = 0.0;
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double qa = 0.0;
      for (std::size_t j = 0; j < n; ++j) qa += q[i * n + j] * a[j];
      rd[i] = qa - 1.0 + lambda * ys[i] - z[i] + v[i];
      rp += ys[i] * a[i];
      res = std::max(res, std::abs(rd[i]));
    }
    res = std::max(res, std::abs(rp));
    if (gap < 1e-13 && res < 1e-12) break;

    const double mu = 0.1 * gap / (2.0 * static_cast<double>(n));
    std::vector<double> m((n + 1) * (n + 1), 0.0), rhs(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i * (n + 1) + j] = q[i * n + j];
      m[i * (n + 1) + i] += z[i] / a[i] + v[i] / (box - a[i]);
      m[i * (n + 1) + n] = ys[i];
      m[n * (n + 1) + i] = ys[i];
      rhs[i] = -rd[i] + (mu / a[i] - z[i]) - (mu / (box - a[i]) - v[i]);
    }
    rhs[n] = -rp;
    const auto step = dense_solve(m, rhs);

    std::vector<double> da(step.begin(), step.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> dz(n), dv(n);
    double t = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      dz[i] = (mu - a[i] * z[i] - z[i] * da[i]) / a[i];
      dv[i] = (mu - (box - a[i]) * v[i] + v[i] * da[i]) / (box - a[i]);
      if (da[i] < 0) t = std::min(t, -0.99 * a[i] / da[i]);
      if (da[i] > 0) t = std::min(t, 0.99 * (box - a[i]) / da[i]);
      if (dz[i] < 0) t = std::min(t, -0.99 * z[i] / dz[i]);
      if (dv[i] < 0) t = std::min(t, -0.99 * v[i] / dv[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      a[i] += t * da[i];
      z[i] += t * dz[i];
      v[i] += t * dv[i];
    }
    lambda += t * step[n];
  }

  LinearSvmReference ref;
  ref.alpha = a;
  for (std::size_t i = 0; i < n; ++i) {
    ref.w[0] += a[i] * ys[i] * xs[i][0];
    ref.w[1] += a[i] * ys[i] * xs[i][1];
  }

  auto hinge = [&](double b) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += std::max(0.0, 1.0 - ys[i] * (ref.w[0] * xs[i][0] + ref.w[1] * xs[i][1] + b));
    }
    return total;
  };
  std::vector<double> breaks(n);
  for (std::size_t i = 0; i < n; ++i) breaks[i] = ys[i] - (ref.w[0] * xs[i][0] + ref.w[1] * xs[i][1]);
  std::sort(breaks.begin(), breaks.end());
  double best = std::numeric_limits<double>::infinity();
  for (double b : breaks) best = std::min(best, hinge(b));
  const double tol = 1e-9 * (1.0 + best);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double b : breaks) {
    if (hinge(b) <= best + tol) {
      lo = std::min(lo, b);
      hi = std::max(hi, b);
    }
  }
  ref.bias = (lo + hi) / 2.0;
  return ref;
}

}  // namespace qal::oracle
