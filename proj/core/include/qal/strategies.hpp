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
#include <string>
#include <string_view>
#include <vector>

#include "qal/classifiers.hpp"
#include "qal/lattice.hpp"
#include "qal/rng.hpp"

namespace qal {

enum class Strategy { kRandom, kUsampLeastConfidence, kUsampMargin, kUsampEntropy, kQbcVoteEntropy, kQbcKl };

/// CLI-stable names: random, usamp_lc, usamp_margin, usamp_entropy, qbc_ve, qbc_kl.
std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);
bool is_usamp(Strategy s);
bool is_qbc(Strategy s);

/// Ordered committee. The linear SVM is member 0 and anchors the secondary
/// distance rule and the accuracy readout.
struct Committee {
  std::vector<TrainedModel> members;

  std::size_t size() const { return members.size(); }
  const TrainedModel& svm() const { return members.front(); }
};

/// Member kinds in committee order.
std::span<const ModelKind> default_committee_kinds();

Committee train_committee(std::span<const LabeledPoint> points);

// Uncertainty scores on a binary posterior.
double score_least_confidence(const Posterior& post);  // higher = more informative
double score_margin(const Posterior& post);            // lower = more informative
double score_entropy(const Posterior& post);           // nats, higher = more informative

/// Entropy of the hard-vote distribution (nats). votes must sum to committee_size.
double vote_entropy(std::span<const int> votes, int committee_size);

/// Mean KL divergence of each member from the averaged consensus.
double kl_disagreement(std::span<const Posterior> member_posteriors);

struct Candidate {
  std::size_t site_id = 0;
  Point2 x{};
};

struct ScoredCandidate {
  std::size_t site_id = 0;
  double score = 0.0;
};

struct QueryDecision {
  std::size_t site_id = 0;
  std::vector<ScoredCandidate> scores;  // in candidate order; empty for random
  std::vector<std::size_t> tie_set;     // candidates sharing the extremal primary score
};

/// Site ids whose score is extremal under the strategy's direction
/// (maximal for least confidence and entropy, minimal for margin).
std::vector<std::size_t> usamp_tie_set(Strategy variant, std::span<const std::size_t> site_ids,
                                       std::span<const Posterior> posteriors);

/// Picks the next site to label.
///   random  uniform draw
///   usamp_* minimal |f| of the linear SVM (committee member 0)
///   qbc_*   maximal vote entropy / KL disagreement, then minimal |f| of the
///           SVM member within that set
/// Residual ties go to the lowest site id. Throws SelectionError when the
/// candidate set is empty.
QueryDecision select_candidate(Strategy strategy, const Committee& models, std::span<const Candidate> unlabeled,
                               Rng& rng);

}  // namespace qal
