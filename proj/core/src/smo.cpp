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

#include "qal/smo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qal/errors.hpp"

namespace qal {

namespace {

constexpr double kTau = 1e-12;

}  // namespace

SmoSolution solve_svm_dual(std::span<const double> kernel, std::span<const double> labels,
                           const SmoOptions& options) {
  const std::size_t n = labels.size();
  if (kernel.size() != n * n) {
    throw ParameterError("solve_svm_dual: kernel must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!(options.box > 0.0)) throw ParameterError("solve_svm_dual: box constraint must be positive");
  const double C = options.box;
  auto K = [&](std::size_t i, std::size_t j) { return kernel[i * n + j]; };
  auto Q = [&](std::size_t i, std::size_t j) { return labels[i] * labels[j] * K(i, j); };

  SmoSolution sol;
  sol.alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);
  auto& a = sol.alpha;
  const auto& y = labels;

  auto in_up = [&](std::size_t t) { return (y[t] > 0 && a[t] < C) || (y[t] < 0 && a[t] > 0); };
  auto in_low = [&](std::size_t t) { return (y[t] > 0 && a[t] > 0) || (y[t] < 0 && a[t] < C); };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (sol.iterations = 0; sol.iterations < options.max_iterations; ++sol.iterations) {
    // i: maximal violator in I_up.
    double g_max = -kInf;
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(t) && -y[t] * grad[t] > g_max) {
        g_max = -y[t] * grad[t];
        i = t;
      }
    }
    // j: second-order choice in I_low; track the minimum for the stopping gap.
    double g_min = kInf;
    double best_obj = kInf;
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (!in_low(t)) continue;
      const double v = -y[t] * grad[t];
      g_min = std::min(g_min, v);
      if (i == n) continue;
      const double b = g_max - v;
      if (b > 0.0) {
        double quad = K(i, i) + K(t, t) - 2.0 * K(i, t);
        if (quad <= 0.0) quad = kTau;
        const double obj = -(b * b) / quad;
        if (obj < best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    sol.gap = g_max - g_min;
    if (i == n || j == n || sol.gap < options.tolerance) {
      sol.converged = true;
      break;
    }

    const double old_ai = a[i];
    const double old_aj = a[j];
    if (y[i] != y[j]) {
      double quad = Q(i, i) + Q(j, j) + 2.0 * Q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0.0) {
        if (a[j] < 0.0) {
          a[j] = 0.0;
          a[i] = diff;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = -diff;
      }
      if (diff > 0.0) {
        if (a[i] > C) {
          a[i] = C;
          a[j] = C - diff;
        }
      } else if (a[j] > C) {
        a[j] = C;
        a[i] = C + diff;
      }
    } else {
      double quad = Q(i, i) + Q(j, j) - 2.0 * Q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > C) {
        if (a[i] > C) {
          a[i] = C;
          a[j] = sum - C;
        }
      } else if (a[j] < 0.0) {
        a[j] = 0.0;
        a[i] = sum;
      }
      if (sum > C) {
        if (a[j] > C) {
          a[j] = C;
          a[i] = sum - C;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = sum;
      }
    }

    const double di = a[i] - old_ai;
    const double dj = a[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += Q(t, i) * di + Q(t, j) * dj;
  }

  // Offset from free vectors, or the midpoint of the feasible interval.
  double upper = kInf;
  double lower = -kInf;
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (a[t] >= C) {
      if (y[t] < 0) upper = std::min(upper, yg);
      else lower = std::max(lower, yg);
    } else if (a[t] <= 0.0) {
      if (y[t] > 0) upper = std::min(upper, yg);
      else lower = std::max(lower, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (upper + lower) / 2.0;
  sol.bias = -rho;
  return sol;
}

}  // namespace qal
