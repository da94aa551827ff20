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

#include "qal/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "qal/errors.hpp"
#include "qal/smo.hpp"

namespace qal {

namespace {

double label_sign(Label y) { return y == Label::kZero ? 1.0 : -1.0; }

double dot(const Point2& a, const Point2& b) { return a[0] * b[0] + a[1] * b[1]; }

double squared_distance(const Point2& a, const Point2& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

double kernel(const SvmParams& p, const Point2& a, const Point2& b) {
  if (p.kernel_scale <= 0.0) return dot(a, b);
  return std::exp(-squared_distance(a, b) / (p.kernel_scale * p.kernel_scale));
}

Point2 checked_point(std::span<const double> raw) {
  if (raw.size() != 2) {
    throw ParameterError("classifier expects 2 features, got " + std::to_string(raw.size()));
  }
  return {raw[0], raw[1]};
}

SvmParams fit_svm(std::span<const Point2> xs, std::span<const Label> ys, double kernel_scale) {
  const std::size_t n = xs.size();
  SvmParams p;
  p.kernel_scale = kernel_scale;
  std::vector<double> gram(n * n);
  std::vector<double> signs(n);
  for (std::size_t i = 0; i < n; ++i) {
    signs[i] = label_sign(ys[i]);
    for (std::size_t j = 0; j < n; ++j) gram[i * n + j] = kernel(p, xs[i], xs[j]);
  }
  const SmoSolution sol = solve_svm_dual(gram, signs, {kBoxConstraint, kSolverTolerance});
  p.dual = sol.alpha;
  p.bias = sol.bias;
  p.iterations = sol.iterations;
  for (std::size_t i = 0; i < n; ++i) {
    if (sol.alpha[i] > 0.0) {
      p.support.push_back(xs[i]);
      p.coef.push_back(sol.alpha[i] * signs[i]);
      p.weights[0] += sol.alpha[i] * signs[i] * xs[i][0];
      p.weights[1] += sol.alpha[i] * signs[i] * xs[i][1];
    }
  }
  if (kernel_scale > 0.0) p.weights = {0.0, 0.0};
  return p;
}

double gini(std::size_t n0, std::size_t n) {
  if (n == 0) return 0.0;
  const double f0 = static_cast<double>(n0) / static_cast<double>(n);
  return 1.0 - f0 * f0 - (1.0 - f0) * (1.0 - f0);
}

TreeParams fit_tree(std::span<const Point2> xs, std::span<const Label> ys) {
  TreeParams tree;
  struct Pending {
    int node;
    std::vector<std::size_t> members;
  };
  auto make_node = [&](const std::vector<std::size_t>& members) {
    TreeNode node;
    node.samples = members.size();
    std::size_t n0 = 0;
    for (auto m : members) n0 += ys[m] == Label::kZero ? 1 : 0;
    node.fraction0 = static_cast<double>(n0) / static_cast<double>(members.size());
    node.gini = gini(n0, members.size());
    tree.nodes.push_back(node);
    return static_cast<int>(tree.nodes.size() - 1);
  };

  std::vector<std::size_t> all(xs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::deque<Pending> queue;
  queue.push_back({make_node(all), std::move(all)});

  // Breadth-first growth so the split budget is spent level by level.
  while (!queue.empty() && tree.splits < kMaxTreeSplits) {
    Pending cur = std::move(queue.front());
    queue.pop_front();
    if (tree.nodes[cur.node].gini <= 0.0) continue;

    const std::size_t n = cur.members.size();
    double best_impurity = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;
    for (int f = 0; f < 2; ++f) {
      std::vector<std::size_t> order = cur.members;
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a][f] < xs[b][f]; });
      std::size_t left0 = 0;
      std::size_t total0 = 0;
      for (auto m : order) total0 += ys[m] == Label::kZero ? 1 : 0;
      for (std::size_t k = 1; k < n; ++k) {
        left0 += ys[order[k - 1]] == Label::kZero ? 1 : 0;
        const double lo = xs[order[k - 1]][f];
        const double hi = xs[order[k]][f];
        if (!(lo < hi)) continue;
        const double impurity = (static_cast<double>(k) * gini(left0, k) +
                                 static_cast<double>(n - k) * gini(total0 - left0, n - k)) /
                                static_cast<double>(n);
        if (impurity < best_impurity - 1e-12) {
          best_impurity = impurity;
          best_feature = f;
          best_threshold = lo + (hi - lo) / 2.0;
        }
      }
    }
    if (best_feature < 0) continue;  // all members share one feature vector

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto m : cur.members) {
      (xs[m][best_feature] < best_threshold ? left : right).push_back(m);
    }
    const int l = make_node(left);
    const int r = make_node(right);
    TreeNode& parent = tree.nodes[cur.node];
    parent.feature = best_feature;
    parent.threshold = best_threshold;
    parent.left = l;
    parent.right = r;
    ++tree.splits;
    queue.push_back({l, std::move(left)});
    queue.push_back({r, std::move(right)});
  }
  return tree;
}

DiscriminantParams fit_discriminant(std::span<const Point2> xs, std::span<const Label> ys) {
  DiscriminantParams p;
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Point2& m = ys[i] == Label::kZero ? p.mean0 : p.mean1;
    m[0] += xs[i][0];
    m[1] += xs[i][1];
    (ys[i] == Label::kZero ? n0 : n1) += 1;
  }
  for (int k = 0; k < 2; ++k) {
    p.mean0[k] /= static_cast<double>(n0);
    p.mean1[k] /= static_cast<double>(n1);
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Point2& m = ys[i] == Label::kZero ? p.mean0 : p.mean1;
    const double dx = xs[i][0] - m[0];
    const double dy = xs[i][1] - m[1];
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double dof = std::max<double>(static_cast<double>(xs.size()) - 2.0, 1.0);
  sxx = sxx / dof + kDiscriminantRidge;
  syy = syy / dof + kDiscriminantRidge;
  sxy = sxy / dof;
  p.covariance = {sxx, sxy, sxy, syy};

  const double det = sxx * syy - sxy * sxy;
  const std::array<double, 4> inv = {syy / det, -sxy / det, -sxy / det, sxx / det};
  auto apply_inv = [&](const Point2& v) -> Point2 {
    return {inv[0] * v[0] + inv[1] * v[1], inv[2] * v[0] + inv[3] * v[1]};
  };
  const Point2 diff = {p.mean0[0] - p.mean1[0], p.mean0[1] - p.mean1[1]};
  p.weights = apply_inv(diff);
  p.intercept = -0.5 * (dot(p.mean0, apply_inv(p.mean0)) - dot(p.mean1, apply_inv(p.mean1)));
  return p;
}

double svm_value(const SvmParams& p, const Point2& z) {
  double f = p.bias;
  for (std::size_t i = 0; i < p.support.size(); ++i) f += p.coef[i] * kernel(p, p.support[i], z);
  return f;
}

const TreeNode& tree_leaf(const TreeParams& t, const Point2& z) {
  const TreeNode* node = &t.nodes.front();
  while (node->feature >= 0) {
    node = &t.nodes[static_cast<std::size_t>(z[node->feature] < node->threshold ? node->left : node->right)];
  }
  return *node;
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLinearSvm:
      return "linear_svm";
    case ModelKind::kGaussianSvm:
      return "gaussian_svm";
    case ModelKind::kDecisionTree:
      return "decision_tree";
    case ModelKind::kLinearDiscriminant:
      return "linear_discriminant";
  }
  return "?";
}

Posterior posterior_from_logit(double logit) {
  double p0 = 1.0 / (1.0 + std::exp(-logit));
  if (logit < 0.0 && p0 >= 0.5) p0 = std::nextafter(0.5, 0.0);
  return {p0, 1.0 - p0};
}

TrainedModel train(ModelKind kind, std::span<const LabeledPoint> points) {
  if (points.empty()) throw ParameterError("train: empty training set");

  std::vector<Point2> raw;
  raw.reserve(points.size());
  for (const auto& p : points) raw.push_back(p.x);

  TrainedModel model;
  model.kind = kind;
  model.standardizer = fit_standardizer_lenient(raw);

  const bool has0 = std::any_of(points.begin(), points.end(), [](auto& p) { return p.y == Label::kZero; });
  const bool has1 = std::any_of(points.begin(), points.end(), [](auto& p) { return p.y == Label::kOne; });
  if (!has0 || !has1) {
    model.constant = has0 ? Label::kZero : Label::kOne;
    return model;
  }

  std::vector<Point2> xs;
  std::vector<Label> ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& p : points) {
    xs.push_back(apply_standardizer(model.standardizer, p.x));
    ys.push_back(p.y);
  }

  switch (kind) {
    case ModelKind::kLinearSvm:
      model.params = fit_svm(xs, ys, 0.0);
      break;
    case ModelKind::kGaussianSvm:
      model.params = fit_svm(xs, ys, kGaussianKernelScale);
      break;
    case ModelKind::kDecisionTree:
      model.params = fit_tree(xs, ys);
      break;
    case ModelKind::kLinearDiscriminant:
      model.params = fit_discriminant(xs, ys);
      break;
  }
  return model;
}

double decision_value(const TrainedModel& model, const Point2& raw_point) {
  if (!model.is_svm()) {
    throw KindError(std::string("decision_value: not defined for ") + to_string(model.kind));
  }
  if (model.constant) return *model.constant == Label::kZero ? 1.0 : -1.0;
  const Point2 z = apply_standardizer(model.standardizer, raw_point);
  return svm_value(std::get<SvmParams>(model.params), z);
}

double decision_value(const TrainedModel& model, std::span<const double> raw_point) {
  return decision_value(model, checked_point(raw_point));
}

Posterior posterior(const TrainedModel& model, const Point2& raw_point) {
  if (model.constant) {
    return *model.constant == Label::kZero ? Posterior{1.0, 0.0} : Posterior{0.0, 1.0};
  }
  const Point2 z = apply_standardizer(model.standardizer, raw_point);
  switch (model.kind) {
    case ModelKind::kLinearSvm:
    case ModelKind::kGaussianSvm:
      return posterior_from_logit(svm_value(std::get<SvmParams>(model.params), z));
    case ModelKind::kDecisionTree: {
      const double f0 = tree_leaf(std::get<TreeParams>(model.params), z).fraction0;
      return {f0, 1.0 - f0};
    }
    case ModelKind::kLinearDiscriminant: {
      const auto& p = std::get<DiscriminantParams>(model.params);
      return posterior_from_logit(dot(p.weights, z) + p.intercept);
    }
  }
  return {};
}

Posterior posterior(const TrainedModel& model, std::span<const double> raw_point) {
  return posterior(model, checked_point(raw_point));
}

Label predict(const TrainedModel& model, const Point2& raw_point) {
  return posterior(model, raw_point).argmax();
}

Label predict(const TrainedModel& model, std::span<const double> raw_point) {
  return predict(model, checked_point(raw_point));
}

std::string describe(const TrainedModel& model) {
  std::ostringstream out;
  out.precision(17);
  out << "kind=" << to_string(model.kind) << '\n';
  out << "standardizer.mean=" << model.standardizer.mean[0] << ',' << model.standardizer.mean[1] << '\n';
  out << "standardizer.std=" << model.standardizer.stddev[0] << ',' << model.standardizer.stddev[1] << '\n';
  if (model.constant) {
    out << "constant_class=" << to_int(*model.constant) << '\n';
    return out.str();
  }
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SvmParams>) {
          out << "kernel_scale=" << p.kernel_scale << '\n';
          out << "bias=" << p.bias << '\n';
          out << "support_vectors=" << p.support.size() << '\n';
          for (std::size_t i = 0; i < p.support.size(); ++i) {
            out << "sv." << i << '=' << p.support[i][0] << ',' << p.support[i][1] << ',' << p.coef[i] << '\n';
          }
          if (p.kernel_scale <= 0.0) out << "weights=" << p.weights[0] << ',' << p.weights[1] << '\n';
        } else if constexpr (std::is_same_v<T, TreeParams>) {
          out << "splits=" << p.splits << '\n';
          for (std::size_t i = 0; i < p.nodes.size(); ++i) {
            const auto& nd = p.nodes[i];
            out << "node." << i << '=' << nd.feature << ',' << nd.threshold << ',' << nd.left << ',' << nd.right
                << ',' << nd.gini << ',' << nd.fraction0 << '\n';
          }
        } else if constexpr (std::is_same_v<T, DiscriminantParams>) {
          out << "mean0=" << p.mean0[0] << ',' << p.mean0[1] << '\n';
          out << "mean1=" << p.mean1[0] << ',' << p.mean1[1] << '\n';
          out << "covariance=" << p.covariance[0] << ',' << p.covariance[1] << ',' << p.covariance[3] << '\n';
          out << "weights=" << p.weights[0] << ',' << p.weights[1] << '\n';
          out << "intercept=" << p.intercept << '\n';
        }
      },
      model.params);
  return out.str();
}

}  // namespace qal
