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

#include "qal/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qal/errors.hpp"

namespace qal {

namespace {

constexpr double kPi = std::numbers::pi;

void check_angle(double alpha, const char* op) {
  if (!(alpha >= 0.0 && alpha <= kPi)) {
    throw ParameterError(std::string(op) + ": angle must lie in [0, pi], got " + std::to_string(alpha));
  }
}

void check_sigma(double sigma, const char* op) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError(std::string(op) + ": sigma must be positive, got " + std::to_string(sigma));
  }
}

double weight_up(double alpha) {
  const double c = std::cos(alpha / 2.0);
  return c * c;
}

double weight_down(double alpha) {
  const double s = std::sin(alpha / 2.0);
  return s * s;
}

}  // namespace

void MeasurementConfig::validate() const {
  check_sigma(sigma, "MeasurementConfig");
  if (n_copies < 1) {
    throw ParameterError("MeasurementConfig: n_copies must be >= 1, got " + std::to_string(n_copies));
  }
}

double weak_pdf(double q, double alpha, double sigma) {
  check_sigma(sigma, "weak_pdf");
  const double two_var = 2.0 * sigma * sigma;
  const double norm = 1.0 / std::sqrt(kPi * two_var);
  const double up = std::exp(-(q - 1.0) * (q - 1.0) / two_var);
  const double down = std::exp(-(q + 1.0) * (q + 1.0) / two_var);
  return norm * (weight_up(alpha) * up + weight_down(alpha) * down);
}

double weak_cdf(double q, double alpha, double sigma) {
  check_sigma(sigma, "weak_cdf");
  auto phi = [sigma](double z) { return 0.5 * std::erfc(-z / (sigma * std::numbers::sqrt2)); };
  return weight_up(alpha) * phi(q - 1.0) + weight_down(alpha) * phi(q + 1.0);
}

double weak_post_alpha(double alpha, double q0, double sigma) {
  // Ratio of the |1> and |0> amplitudes picks up exp(-q0 / sigma^2); split the
  // exponent across both arguments so neither side overflows first.
  const double half = q0 / (2.0 * sigma * sigma);
  const double up = std::cos(alpha / 2.0) * std::exp(half);
  const double down = std::sin(alpha / 2.0) * std::exp(-half);
  return 2.0 * std::atan2(down, up);
}

WeakSample sample_weak(double alpha, double sigma, Rng& rng) {
  check_sigma(sigma, "sample_weak");
  check_angle(alpha, "sample_weak");
  const double centre = rng.uniform() < weight_up(alpha) ? 1.0 : -1.0;
  WeakSample out;
  out.q0 = centre + sigma * rng.normal();
  out.post_alpha = weak_post_alpha(alpha, out.q0, sigma);
  return out;
}

double fidelity_after_weak(double alpha, double post_alpha) {
  check_angle(alpha, "fidelity_after_weak");
  check_angle(post_alpha, "fidelity_after_weak");
  const double c = std::cos((alpha - post_alpha) / 2.0);
  return std::clamp(c * c, 0.0, 1.0);
}

StrongSample sample_strong(double alpha, Rng& rng) {
  check_angle(alpha, "sample_strong");
  const double p_up = weight_up(alpha);
  StrongSample out;
  if (rng.uniform() < p_up) {
    out.outcome = 1;
    out.post_alpha = 0.0;
    out.fidelity = p_up;
  } else {
    out.outcome = -1;
    out.post_alpha = kPi;
    out.fidelity = weight_down(alpha);
  }
  return out;
}

MeasurementRecord measure_ensemble(const QubitSite& site, std::size_t site_id, const MeasurementConfig& config,
                                   Rng& rng) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.n_copies);
  MeasurementRecord rec;
  rec.site_id = site_id;
  rec.kind = config.kind;
  rec.readings.reserve(n);
  rec.post_angles.reserve(n);
  rec.copy_fidelities.reserve(n);

  double reading_sum = 0.0;
  long votes_up = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (config.kind == MeasurementKind::kWeak) {
      const WeakSample s = sample_weak(site.alpha, config.sigma, rng);
      rec.readings.push_back(s.q0);
      rec.post_angles.push_back(s.post_alpha);
      rec.copy_fidelities.push_back(fidelity_after_weak(site.alpha, s.post_alpha));
      reading_sum += s.q0;
    } else {
      const StrongSample s = sample_strong(site.alpha, rng);
      rec.readings.push_back(static_cast<double>(s.outcome));
      rec.post_angles.push_back(s.post_alpha);
      rec.copy_fidelities.push_back(s.fidelity);
      if (s.outcome > 0) ++votes_up;
    }
  }
  rec.min_fidelity = *std::min_element(rec.copy_fidelities.begin(), rec.copy_fidelities.end());

  // decision > 0 -> class 0, < 0 -> class 1, == 0 -> coin
  double decision;
  if (config.kind == MeasurementKind::kWeak) {
    decision = reading_sum;
  } else {
    decision = static_cast<double>(2 * votes_up - static_cast<long>(n));
  }
  if (decision > 0.0) {
    rec.estimated_label = Label::kZero;
  } else if (decision < 0.0) {
    rec.estimated_label = Label::kOne;
  } else {
    rec.estimated_label = rng.coin() ? Label::kZero : Label::kOne;
  }
  return rec;
}

double system_fidelity(std::span<const MeasurementRecord> records) {
  double f = 1.0;
  for (const auto& r : records) f *= r.min_fidelity;
  return f;
}

const char* to_string(MeasurementKind kind) { return kind == MeasurementKind::kWeak ? "weak" : "strong"; }

MeasurementKind parse_measurement_kind(const std::string& name) {
  if (name == "weak") return MeasurementKind::kWeak;
  if (name == "strong") return MeasurementKind::kStrong;
  throw ParameterError("unknown measurement kind '" + name + "' (expected weak|strong)");
}

}  // namespace qal
