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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "creduq/distribution.hpp"

namespace creduq {

/// A finitely generated credal set: the convex hull of M >= 1 generator
/// distributions over a common label space. Generators are kept in order and
/// duplicates are retained, so ensemble identity survives into reports.
class CredalSet {
 public:
  explicit CredalSet(std::vector<Distribution> generators);

  std::size_t num_generators() const noexcept { return generators_.size(); }
  std::size_t dimension() const noexcept { return generators_.front().size(); }
  const Distribution& generator(std::size_t j) const { return generators_.at(j); }
  const std::vector<Distribution>& generators() const noexcept { return generators_; }

 private:
  std::vector<Distribution> generators_;
};

/// Componentwise lower and upper probabilities on singletons.
struct EnvelopePair {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// lower[y] = min_j p_j(y), upper[y] = max_j p_j(y). Extrema over the hull
/// are attained at generators because p -> p(y) is linear.
EnvelopePair singleton_envelopes(const CredalSet& cs);

/// min over generators of sum_{y in labels} p(y). Duplicate labels in the
/// subset are ignored; out-of-range labels throw.
double lower_probability(const CredalSet& cs, std::span<const std::size_t> labels);

/// max over generators of sum_{y in labels} p(y).
double upper_probability(const CredalSet& cs, std::span<const std::size_t> labels);

}  // namespace creduq
