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

// Test-side statistics helpers, written from the textbook formulas rather
// than shared with the library.

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace qal::oracle {

inline double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

// CDF of the two-branch pointer distribution, from the Born weights.
inline double mixture_cdf(double q, double alpha, double sigma) {
  const double up = std::cos(alpha / 2) * std::cos(alpha / 2);
  return up * normal_cdf(q, 1.0, sigma) + (1.0 - up) * normal_cdf(q, -1.0, sigma);
}

inline double normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double critical = 0.0;  // upper quantile at the requested significance
};

// Pearson test over bins with edges `edges` (open-ended tails added), merging
// adjacent bins until every expected count is at least 5.
template <typename Cdf>
ChiSquareResult chi_square_gof(const std::vector<double>& samples, const std::vector<double>& edges, Cdf cdf,
                               double significance) {
  const std::size_t k = edges.size() + 1;
  std::vector<double> observed(k, 0.0), expected(k, 0.0);
  for (double s : samples) {
    std::size_t bin = 0;
    while (bin < edges.size() && s >= edges[bin]) ++bin;
    observed[bin] += 1.0;
  }
  const double n = static_cast<double>(samples.size());
  double prev = 0.0;
  for (std::size_t b = 0; b < k; ++b) {
    const double c = b < edges.size() ? cdf(edges[b]) : 1.0;
    expected[b] = n * (c - prev);
    prev = c;
  }
  std::vector<double> obs_m, exp_m;
  double acc_o = 0.0, acc_e = 0.0;
  for (std::size_t b = 0; b < k; ++b) {
    acc_o += observed[b];
    acc_e += expected[b];
    if (acc_e >= 5.0) {
      obs_m.push_back(acc_o);
      exp_m.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (!exp_m.empty()) {
    obs_m.back() += acc_o;
    exp_m.back() += acc_e;
  }
  ChiSquareResult r;
  for (std::size_t b = 0; b < obs_m.size(); ++b) {
    r.statistic += (obs_m[b] - exp_m[b]) * (obs_m[b] - exp_m[b]) / exp_m[b];
  }
  r.dof = static_cast<int>(obs_m.size()) - 1;
  r.critical = boost::math::quantile(boost::math::complement(boost::math::chi_squared(r.dof), significance));
  return r;
}

// Half-width of a 3-sigma binomial band for an observed frequency.
inline double binomial_band(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

}  // namespace qal::oracle
