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

#include "creduq/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace creduq {

double shannon_entropy(const Distribution& p) {
  double s = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

double entropy_lower(const CredalSet& cs) {
  double lo = shannon_entropy(cs.generator(0));
  for (std::size_t j = 1; j < cs.num_generators(); ++j) {
    lo = std::min(lo, shannon_entropy(cs.generator(j)));
  }
  return lo;
}

SolveReport entropy_upper_report(const CredalSet& cs, const EntropyMaxOptions& options) {
  return maximize_entropy_over_hull(cs, options);
}

double entropy_upper(const CredalSet& cs, const EntropyMaxOptions& options) {
  return maximize_entropy_over_hull(cs, options).optimum;
}

double entropy_epistemic(const CredalSet& cs, const EntropyMaxOptions& options) {
  return entropy_upper(cs, options) - entropy_lower(cs);
}

MoebiusMass::MoebiusMass(std::size_t k, std::vector<double> mass)
    : k_(k), mass_(std::move(mass)) {
  if (k_ == 0 || mass_.size() != (std::size_t{1} << k_)) {
    throw Error(ErrorCode::internal, "moebius mass table has wrong size");
  }
}

MoebiusMass moebius_transform(const CredalSet& cs, const HartleyOptions& options) {
  const std::size_t k = cs.dimension();
  if (k > options.k_max) {
    throw Error(ErrorCode::capability,
                "Hartley measures are unavailable for K=" + std::to_string(k) +
                    " (cap " + std::to_string(options.k_max) +
                    "); subset enumeration grows as 2^K");
  }
  const std::size_t n = std::size_t{1} << k;

  // Lower probability of every subset: per-generator subset sums by the
  // low-bit recursion, then the min across generators.
  std::vector<double> lower(n, 2.0);
  std::vector<double> sums(n);
  for (const Distribution& p : cs.generators()) {
    sums[0] = 0.0;
    for (std::size_t mask = 1; mask < n; ++mask) {
      const std::size_t low = std::countr_zero(mask);
      sums[mask] = sums[mask & (mask - 1)] + p[low];
    }
    for (std::size_t mask = 0; mask < n; ++mask) {
      lower[mask] = std::min(lower[mask], sums[mask]);
    }
  }
  lower[0] = 0.0;
  lower[n - 1] = 1.0;  // normalization

  // In-place subset Moebius inversion, increasing bitmask order per bit.
  for (std::size_t bit = 0; bit < k; ++bit) {
    const std::size_t step = std::size_t{1} << bit;
    for (std::size_t mask = 0; mask < n; ++mask) {
      if (mask & step) lower[mask] -= lower[mask ^ step];
    }
  }
  return MoebiusMass(k, std::move(lower));
}

double generalized_hartley(const MoebiusMass& mass) {
  const std::size_t n = mass.num_subsets();
  // log2 of each cardinality, computed once.
  std::vector<double> log_card(mass.dimension() + 1, 0.0);
  for (std::size_t c = 1; c <= mass.dimension(); ++c) {
    log_card[c] = std::log2(static_cast<double>(c));
  }
  double gh = 0.0;
  for (std::size_t mask = 1; mask < n; ++mask) {
    const int card = std::popcount(mask);
    if (card > 1) gh += mass.masses()[mask] * log_card[card];
  }
  return gh;
}

double generalized_hartley(const CredalSet& cs, const HartleyOptions& options) {
  return generalized_hartley(moebius_transform(cs, options));
}

double hartley_aleatoric(const CredalSet& cs, const HartleyOptions& options,
                         const EntropyMaxOptions& entropy_options) {
  return entropy_upper(cs, entropy_options) - generalized_hartley(cs, options);
}

}  // namespace creduq
