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

#include "qal/strategies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "qal/errors.hpp"

namespace qal {

namespace {

constexpr std::array<ModelKind, 4> kCommitteeKinds = {ModelKind::kLinearSvm, ModelKind::kGaussianSvm,
                                                      ModelKind::kDecisionTree, ModelKind::kLinearDiscriminant};

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

// Indices of the extremal entries; `better(a, b)` is true when a beats b.
template <typename Better>
std::vector<std::size_t> extremal_indices(std::span<const double> values, Better better) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (out.empty() || better(values[i], values[out.front()])) {
      out.assign(1, i);
    } else if (values[i] == values[out.front()]) {
      out.push_back(i);
    }
  }
  return out;
}

std::size_t lowest_site(std::span<const Candidate> cands, std::span<const std::size_t> idx) {
  return *std::min_element(idx.begin(), idx.end(),
                           [&](auto a, auto b) { return cands[a].site_id < cands[b].site_id; });
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kRandom:
      return "random";
    case Strategy::kUsampLeastConfidence:
      return "usamp_lc";
    case Strategy::kUsampMargin:
      return "usamp_margin";
    case Strategy::kUsampEntropy:
      return "usamp_entropy";
    case Strategy::kQbcVoteEntropy:
      return "qbc_ve";
    case Strategy::kQbcKl:
      return "qbc_kl";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  for (auto s : {Strategy::kRandom, Strategy::kUsampLeastConfidence, Strategy::kUsampMargin, Strategy::kUsampEntropy,
                 Strategy::kQbcVoteEntropy, Strategy::kQbcKl}) {
    if (to_string(s) == name) return s;
  }
  throw ParameterError("unknown strategy '" + std::string(name) +
                       "' (expected random|usamp_lc|usamp_margin|usamp_entropy|qbc_ve|qbc_kl)");
}

bool is_usamp(Strategy s) {
  return s == Strategy::kUsampLeastConfidence || s == Strategy::kUsampMargin || s == Strategy::kUsampEntropy;
}

bool is_qbc(Strategy s) { return s == Strategy::kQbcVoteEntropy || s == Strategy::kQbcKl; }

std::span<const ModelKind> default_committee_kinds() { return kCommitteeKinds; }

Committee train_committee(std::span<const LabeledPoint> points) {
  Committee c;
  c.members.reserve(kCommitteeKinds.size());
  for (ModelKind k : kCommitteeKinds) c.members.push_back(train(k, points));
  return c;
}

double score_least_confidence(const Posterior& post) { return 1.0 - std::max(post.p0, post.p1); }

double score_margin(const Posterior& post) { return std::abs(post.p0 - post.p1); }

double score_entropy(const Posterior& post) { return -(xlogx(post.p0) + xlogx(post.p1)); }

double vote_entropy(std::span<const int> votes, int committee_size) {
  if (committee_size < 1) throw ParameterError("vote_entropy: committee size must be >= 1");
  long total = 0;
  for (int v : votes) {
    if (v < 0) throw ParameterError("vote_entropy: negative vote count");
    total += v;
  }
  if (total != committee_size) {
    throw ParameterError("vote_entropy: votes sum to " + std::to_string(total) + ", committee size is " +
                         std::to_string(committee_size));
  }
  double h = 0.0;
  for (int v : votes) h -= xlogx(static_cast<double>(v) / committee_size);
  return h;
}

double kl_disagreement(std::span<const Posterior> member_posteriors) {
  if (member_posteriors.empty()) throw ParameterError("kl_disagreement: empty committee");
  const double c = static_cast<double>(member_posteriors.size());
  Posterior consensus{0.0, 0.0};
  for (const auto& p : member_posteriors) {
    consensus.p0 += p.p0 / c;
    consensus.p1 += p.p1 / c;
  }
  double total = 0.0;
  for (const auto& p : member_posteriors) {
    // Consensus is positive wherever a member is, so the ratio is finite.
    if (p.p0 > 0.0) total += p.p0 * std::log(p.p0 / consensus.p0);
    if (p.p1 > 0.0) total += p.p1 * std::log(p.p1 / consensus.p1);
  }
  return std::max(0.0, total / c);
}

std::vector<std::size_t> usamp_tie_set(Strategy variant, std::span<const std::size_t> site_ids,
                                       std::span<const Posterior> posteriors) {
  if (site_ids.size() != posteriors.size()) throw ParameterError("usamp_tie_set: size mismatch");
  std::vector<double> scores(posteriors.size());
  std::vector<std::size_t> idx;
  switch (variant) {
    case Strategy::kUsampLeastConfidence:
      std::transform(posteriors.begin(), posteriors.end(), scores.begin(), score_least_confidence);
      idx = extremal_indices(scores, std::greater<>{});
      break;
    case Strategy::kUsampMargin:
      std::transform(posteriors.begin(), posteriors.end(), scores.begin(), score_margin);
      idx = extremal_indices(scores, std::less<>{});
      break;
    case Strategy::kUsampEntropy:
      std::transform(posteriors.begin(), posteriors.end(), scores.begin(), score_entropy);
      idx = extremal_indices(scores, std::greater<>{});
      break;
    default:
      throw ParameterError("usamp_tie_set: not an uncertainty-sampling strategy");
  }
  std::vector<std::size_t> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(site_ids[i]);
  std::sort(out.begin(), out.end());
  return out;
}

QueryDecision select_candidate(Strategy strategy, const Committee& models, std::span<const Candidate> unlabeled,
                               Rng& rng) {
  if (unlabeled.empty()) throw SelectionError("select_candidate: no unlabeled candidates left");
  QueryDecision decision;

  if (strategy == Strategy::kRandom) {
    decision.site_id = unlabeled[rng.below(unlabeled.size())].site_id;
    decision.tie_set.reserve(unlabeled.size());
    for (const auto& c : unlabeled) decision.tie_set.push_back(c.site_id);
    return decision;
  }

  if (models.size() == 0) throw SelectionError("select_candidate: strategy needs a fitted model");
  if (is_qbc(strategy) && models.size() < 2) {
    throw SelectionError("select_candidate: query-by-committee needs at least two members");
  }

  const std::size_t n = unlabeled.size();
  std::vector<double> distance(n);
  for (std::size_t i = 0; i < n; ++i) distance[i] = std::abs(decision_value(models.svm(), unlabeled[i].x));

  std::vector<std::size_t> pool;  // indices into unlabeled
  decision.scores.reserve(n);
  if (is_usamp(strategy)) {
    for (std::size_t i = 0; i < n; ++i) {
      const Posterior post = posterior(models.svm(), unlabeled[i].x);
      double s = 0.0;
      if (strategy == Strategy::kUsampLeastConfidence) s = score_least_confidence(post);
      if (strategy == Strategy::kUsampMargin) s = score_margin(post);
      if (strategy == Strategy::kUsampEntropy) s = score_entropy(post);
      decision.scores.push_back({unlabeled[i].site_id, s});
    }
    pool = extremal_indices(distance, std::less<>{});
  } else {
    std::vector<double> disagreement(n);
    std::vector<Posterior> member_post(models.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (strategy == Strategy::kQbcVoteEntropy) {
        std::array<int, 2> votes{0, 0};
        for (const auto& m : models.members) ++votes[static_cast<std::size_t>(to_int(predict(m, unlabeled[i].x)))];
        disagreement[i] = vote_entropy(votes, static_cast<int>(models.size()));
      } else {
        for (std::size_t k = 0; k < models.size(); ++k) member_post[k] = posterior(models.members[k], unlabeled[i].x);
        disagreement[i] = kl_disagreement(member_post);
      }
      decision.scores.push_back({unlabeled[i].site_id, disagreement[i]});
    }
    const auto top = extremal_indices(disagreement, std::greater<>{});
    std::vector<double> top_distance(top.size());
    for (std::size_t k = 0; k < top.size(); ++k) top_distance[k] = distance[top[k]];
    for (auto k : extremal_indices(top_distance, std::less<>{})) pool.push_back(top[k]);
    for (auto i : top) decision.tie_set.push_back(unlabeled[i].site_id);
  }

  decision.site_id = unlabeled[lowest_site(unlabeled, pool)].site_id;
  if (decision.tie_set.empty()) {
    for (auto i : pool) decision.tie_set.push_back(unlabeled[i].site_id);
  }
  std::sort(decision.tie_set.begin(), decision.tie_set.end());
  return decision;
}

}  // namespace qal
