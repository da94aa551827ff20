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
#include <cstdint>
#include <random>

namespace qal {

/// Seeded random stream with platform-independent output.
///
/// The bit generator is std::mt19937_64, whose sequence is fixed by the
/// standard. The standard distributions are not, so uniform and normal
/// variates are derived here directly from the raw 64-bit draws. Two Rng
/// objects built from the same seed produce identical sequences on every
/// conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent sub-stream keyed by (master, stream). Used for per-replication
  /// and per-site streams so results do not depend on scheduling order.
  static Rng derive(std::uint64_t master, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal (Box-Muller, second variate cached).
  double normal();

  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);

  bool coin() { return (next_u64() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// splitmix64 finalizer, exposed for seed derivation.
std::uint64_t mix64(std::uint64_t x);

}  // namespace qal
