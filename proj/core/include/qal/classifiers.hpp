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
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qal/lattice.hpp"

namespace qal {

enum class ModelKind { kLinearSvm, kGaussianSvm, kDecisionTree, kLinearDiscriminant };

const char* to_string(ModelKind kind);

inline constexpr double kBoxConstraint = 1.0;
inline constexpr double kSolverTolerance = 1e-6;
inline constexpr double kGaussianKernelScale = 5.7;
inline constexpr int kMaxTreeSplits = 100;
inline constexpr double kDiscriminantRidge = 1e-6;

struct Posterior {
  double p0 = 0.5;
  double p1 = 0.5;

  double of(Label label) const { return label == Label::kZero ? p0 : p1; }
  /// Most probable class; exact ties go to class 0.
  Label argmax() const { return p1 > p0 ? Label::kOne : Label::kZero; }
};

/// Posterior with p0 = logistic(logit). A negative logit always yields
/// p1 > p0 so that argmax agrees with the sign even where the logistic
/// rounds to 1/2.
Posterior posterior_from_logit(double logit);

struct LabeledPoint {
  Point2 x{};
  Label y = Label::kZero;
};

struct SvmParams {
  std::vector<Point2> support;     // standardized support vectors
  std::vector<double> coef;        // alpha_i * y_i for each support vector
  std::vector<double> dual;        // alpha_i for every training sample
  double bias = 0.0;
  double kernel_scale = 0.0;       // 0 selects the linear kernel
  Point2 weights{};                // primal weights, linear kernel only
  long iterations = 0;
};

struct TreeNode {
  int feature = -1;        // -1 marks a leaf
  double threshold = 0.0;  // go left when x[feature] < threshold
  int left = -1;
  int right = -1;
  double gini = 0.0;
  std::size_t samples = 0;
  double fraction0 = 0.0;  // share of class 0 among samples at this node
};

struct TreeParams {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int splits = 0;
};

struct DiscriminantParams {
  Point2 mean0{};
  Point2 mean1{};
  std::array<double, 4> covariance{};  // pooled, ridge included, row-major
  Point2 weights{};                    // log-odds = weights . x + intercept
  double intercept = 0.0;
};

/// Fitted binary classifier. Immutable once returned by train().
struct TrainedModel {
  ModelKind kind = ModelKind::kLinearSvm;
  FeatureStats standardizer;
  std::optional<Label> constant;  // single-class training set
  std::variant<std::monostate, SvmParams, TreeParams, DiscriminantParams> params;

  bool is_svm() const { return kind == ModelKind::kLinearSvm || kind == ModelKind::kGaussianSvm; }
};

/// Standardizes the raw features, then fits the requested model.
/// Throws ParameterError on an empty training set.
TrainedModel train(ModelKind kind, std::span<const LabeledPoint> points);

Label predict(const TrainedModel& model, const Point2& raw_point);
Label predict(const TrainedModel& model, std::span<const double> raw_point);

Posterior posterior(const TrainedModel& model, const Point2& raw_point);
Posterior posterior(const TrainedModel& model, std::span<const double> raw_point);

/// Signed margin in standardized space. Throws KindError for non-SVM kinds.
double decision_value(const TrainedModel& model, const Point2& raw_point);
double decision_value(const TrainedModel& model, std::span<const double> raw_point);

/// key=value debug dump of the fitted parameters. Not a stable format.
std::string describe(const TrainedModel& model);

}  // namespace qal
