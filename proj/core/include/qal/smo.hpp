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

#include <cstddef>
#include <span>
#include <vector>

namespace qal {

/// Solution of the soft-margin SVM dual
///   min 1/2 a^T Q a - sum(a)   s.t.  y^T a = 0,  0 <= a_i <= C,
/// with Q_ij = y_i y_j K_ij. The decision function is
///   f(x) = sum_i a_i y_i k(x_i, x) + bias.
struct SmoSolution {
  std::vector<double> alpha;
  double bias = 0.0;
  long iterations = 0;
  double gap = 0.0;  // maximal KKT violation at exit
  bool converged = false;
};

struct SmoOptions {
  double box = 1.0;
  double tolerance = 1e-6;
  long max_iterations = 10'000'000;
};

/// Sequential minimal optimisation with second-order working-set selection.
/// `kernel` is the dense n x n Gram matrix in row-major order and `labels`
/// holds +1 / -1. Both classes must be present.
SmoSolution solve_svm_dual(std::span<const double> kernel, std::span<const double> labels,
                           const SmoOptions& options = {});

}  // namespace qal
