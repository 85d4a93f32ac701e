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

#include "creduq/credal_set.hpp"

#include <algorithm>
#include <string>

namespace creduq {

CredalSet::CredalSet(std::vector<Distribution> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) {
    throw Error(ErrorCode::shape, "credal set needs at least one generator");
  }
  const std::size_t k = generators_.front().size();
  for (std::size_t j = 1; j < generators_.size(); ++j) {
    if (generators_[j].size() != k) {
      throw Error(ErrorCode::shape,
                  "generator " + std::to_string(j) + " has dimension " +
                      std::to_string(generators_[j].size()) + ", expected " +
                      std::to_string(k));
    }
  }
}

EnvelopePair singleton_envelopes(const CredalSet& cs) {
  const std::size_t k = cs.dimension();
  EnvelopePair env;
  env.lower.assign(cs.generator(0).probs().begin(), cs.generator(0).probs().end());
  env.upper = env.lower;
  for (std::size_t j = 1; j < cs.num_generators(); ++j) {
    const Distribution& p = cs.generator(j);
    for (std::size_t y = 0; y < k; ++y) {
      env.lower[y] = std::min(env.lower[y], p[y]);
      env.upper[y] = std::max(env.upper[y], p[y]);
    }
  }
  return env;
}

namespace {

enum class Envelope { lower, upper };

double event_probability(const CredalSet& cs, std::span<const std::size_t> labels,
                         Envelope which) {
  const std::size_t k = cs.dimension();
  std::vector<char> in_event(k, 0);
  std::size_t distinct = 0;
  for (std::size_t y : labels) {
    if (y >= k) {
      throw Error(ErrorCode::invalid_argument,
                  "label " + std::to_string(y) + " out of range for K=" + std::to_string(k));
    }
    if (!in_event[y]) ++distinct;
    in_event[y] = 1;
  }
  if (distinct == k) return 1.0;  // normalization, independent of float noise
  double best = (which == Envelope::lower) ? 2.0 : -1.0;
  for (const Distribution& p : cs.generators()) {
    double mass = 0.0;
    for (std::size_t y = 0; y < k; ++y) {
      if (in_event[y]) mass += p[y];
    }
    best = (which == Envelope::lower) ? std::min(best, mass) : std::max(best, mass);
  }
  return best;
}

}  // namespace

double lower_probability(const CredalSet& cs, std::span<const std::size_t> labels) {
  if (labels.empty()) return 0.0;
  return event_probability(cs, labels, Envelope::lower);
}

double upper_probability(const CredalSet& cs, std::span<const std::size_t> labels) {
  if (labels.empty()) return 0.0;
  return event_probability(cs, labels, Envelope::upper);
}

}  // namespace creduq
