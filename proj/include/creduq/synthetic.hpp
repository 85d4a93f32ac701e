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
#include <cstdint>
#include <vector>

#include "creduq/dataset.hpp"

namespace creduq {

/// Desk-scale synthetic data-generating process: per instance, a true
/// conditional is drawn uniformly from the simplex (Dirichlet(1,...,1)), the
/// label is sampled from it, and M ensemble members are logit-space
/// perturbations of it at scale `noise`. Deterministic given `seed`.
struct SyntheticConfig {
  std::size_t k = 2;      // class count, >= 2
  std::size_t n = 1;      // instance count, >= 1
  std::size_t m = 1;      // ensemble size, >= 1
  double noise = 0.0;     // perturbation scale, >= 0
  std::uint64_t seed = 0;
};

struct SyntheticResult {
  PredictionDataset dataset;
  std::vector<Distribution> true_conditionals;  // one per instance
};

SyntheticResult generate(const SyntheticConfig& config);

}  // namespace creduq
