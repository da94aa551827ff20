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
#include <string>
#include <span>
#include <vector>

#include "qal/lattice.hpp"
#include "qal/rng.hpp"

namespace qal {

enum class MeasurementKind { kWeak, kStrong };

/// Below this ancilla width the single-Gaussian picture of the pointer
/// distribution is poor. Sampling stays exact; configs only warn.
inline constexpr double kWeakRegimeSigma = 5.0;

struct MeasurementConfig {
  double sigma = 10.0;  // ancilla position spread, units of the eigenvalue gap / 2
  int n_copies = 500;
  MeasurementKind kind = MeasurementKind::kWeak;

  /// Throws ParameterError for sigma <= 0 or n_copies < 1.
  void validate() const;
  bool outside_weak_regime() const { return sigma < kWeakRegimeSigma; }
};

struct MeasurementRecord {
  std::size_t site_id = 0;
  MeasurementKind kind = MeasurementKind::kWeak;
  std::vector<double> readings;     // weak: pointer positions q0; strong: +-1
  std::vector<double> post_angles;  // Bloch angle of each copy afterwards
  std::vector<double> copy_fidelities;
  double min_fidelity = 1.0;
  Label estimated_label = Label::kZero;
};

/// Pointer-position density after coupling to sigma_z (eigenvalues +-1):
/// (2 pi sigma^2)^(-1/2) [cos^2(a/2) e^{-(q-1)^2/2s^2} + sin^2(a/2) e^{-(q+1)^2/2s^2}].
double weak_pdf(double q, double alpha, double sigma);

/// CDF of weak_pdf. Used for binned goodness-of-fit and plotting.
double weak_cdf(double q, double alpha, double sigma);

struct WeakSample {
  double q0 = 0.0;
  double post_alpha = 0.0;
};

/// Draws one pointer reading and the conditional post-measurement angle,
/// tan(post/2) = tan(alpha/2) exp(-q0 / sigma^2).
WeakSample sample_weak(double alpha, double sigma, Rng& rng);

/// Post-measurement angle for a given reading (closed form of the
/// conditional state update).
double weak_post_alpha(double alpha, double q0, double sigma);

/// Squared overlap of two real-amplitude qubit states: cos^2((a - b)/2).
double fidelity_after_weak(double alpha, double post_alpha);

struct StrongSample {
  int outcome = 1;  // +1 -> |0>, -1 -> |1>
  double post_alpha = 0.0;
  double fidelity = 1.0;
};

/// Projective sigma_z measurement with Born weights cos^2(alpha/2), sin^2(alpha/2).
StrongSample sample_strong(double alpha, Rng& rng);

/// Measures each of the n copies of `site` once and decodes a label: sign of
/// the mean reading (weak) or majority vote (strong), exact ties by fair coin.
MeasurementRecord measure_ensemble(const QubitSite& site, std::size_t site_id, const MeasurementConfig& config,
                                   Rng& rng);

/// Product of per-record minimum copy fidelities; 1 for no records.
double system_fidelity(std::span<const MeasurementRecord> records);

const char* to_string(MeasurementKind kind);
MeasurementKind parse_measurement_kind(const std::string& name);

}  // namespace qal
