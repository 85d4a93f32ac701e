// Copyright 2026 the creduq authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "creduq/selective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace creduq {

namespace {

constexpr double kFlatStepTol = 1e-12;

}  // namespace

std::size_t credal_predict(const CredalSet& cs) {
  const std::size_t k = cs.dimension();
  std::vector<std::size_t> votes(k, 0);
  std::vector<double> mean(k, 0.0);
  for (const Distribution& p : cs.generators()) {
    ++votes[p.argmax()];
    for (std::size_t y = 0; y < k; ++y) mean[y] += p[y];
  }
  const std::size_t top_votes = *std::max_element(votes.begin(), votes.end());
  // Ties among vote leaders fall back to the average probabilities, then to
  // the lowest label index; strict comparisons keep both steps deterministic.
  std::size_t winner = k;
  for (std::size_t y = 0; y < k; ++y) {
    if (votes[y] != top_votes) continue;
    if (winner == k || mean[y] > mean[winner]) winner = y;
  }
  return winner;
}

std::vector<std::size_t> rank_by_uncertainty(const std::vector<ScoredInstance>& instances) {
  if (instances.empty()) {
    throw Error(ErrorCode::invalid_argument, "cannot rank an empty instance list");
  }
  const std::size_t width = instances.front().score_key.size();
  if (width == 0) {
    throw Error(ErrorCode::invalid_argument, "score keys must have at least one component");
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& key = instances[i].score_key;
    if (key.size() != width) {
      throw Error(ErrorCode::invalid_argument,
                  "instance " + std::to_string(i) + " has a score key of width " +
                      std::to_string(key.size()) + ", expected " + std::to_string(width));
    }
    for (double v : key) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::invalid_argument,
                    "non-finite score for instance " + instances[i].instance_id);
      }
    }
  }
  std::vector<std::size_t> order(instances.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(
        instances[b].score_key.begin(), instances[b].score_key.end(),
        instances[a].score_key.begin(), instances[a].score_key.end());
  });
  return order;
}

ArCurve accuracy_rejection_curve(const std::vector<ScoredInstance>& ranked,
                                 std::size_t bin_count) {
  const std::size_t n = ranked.size();
  if (bin_count < 2) {
    throw Error(ErrorCode::invalid_argument, "need at least 2 bins");
  }
  if (n < bin_count) {
    throw Error(ErrorCode::invalid_argument,
                "need at least as many instances as bins (" + std::to_string(n) + " < " +
                    std::to_string(bin_count) + ")");
  }

  // correct_from[i] = #correct among ranked[i..n); the most uncertain come
  // first, so rejecting a prefix leaves a suffix.
  std::vector<std::size_t> correct_from(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    const bool ok = ranked[i].predicted_label == ranked[i].true_label;
    correct_from[i] = correct_from[i + 1] + (ok ? 1 : 0);
  }

  ArCurve curve;
  curve.bin_count = bin_count;
  curve.bins.reserve(bin_count);
  for (std::size_t i = 0; i < bin_count; ++i) {
    const double r = static_cast<double>(i) / static_cast<double>(bin_count);
    const auto rejected = static_cast<std::size_t>(
        std::ceil(r * static_cast<double>(n)));
    const std::size_t kept = n - rejected;
    curve.bins.push_back(
        {r, static_cast<double>(correct_from[rejected]) / static_cast<double>(kept)});
  }
  curve.auc = auc(curve);
  curve.mr = monotonicity_ratio(curve);

  std::size_t ties = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (ranked[i].score_key == ranked[i + 1].score_key) ++ties;
  }
  curve.tie_fraction = n > 1 ? static_cast<double>(ties) / static_cast<double>(n - 1) : 0.0;
  return curve;
}

double auc(const ArCurve& curve) {
  if (curve.bins.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "curve needs at least 2 bins");
  }
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < curve.bins.size(); ++i) {
    const auto& a = curve.bins[i];
    const auto& b = curve.bins[i + 1];
    area += 0.5 * (a.accuracy + b.accuracy) * (b.rejection_fraction - a.rejection_fraction);
  }
  const double span =
      curve.bins.back().rejection_fraction - curve.bins.front().rejection_fraction;
  return area / span;
}

double monotonicity_ratio(const ArCurve& curve) {
  if (curve.bins.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "curve needs at least 2 bins");
  }
  std::size_t nondecreasing = 0;
  for (std::size_t i = 0; i + 1 < curve.bins.size(); ++i) {
    const double delta = curve.bins[i + 1].accuracy - curve.bins[i].accuracy;
    if (delta >= -kFlatStepTol) ++nondecreasing;
  }
  return static_cast<double>(nondecreasing) / static_cast<double>(curve.bins.size() - 1);
}

}  // namespace creduq
