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

#include "creduq/credal_set.hpp"
#include "creduq/solvers.hpp"

namespace creduq {

/// Shannon entropy in bits, with 0*log2(0) := 0. In [0, log2 K].
double shannon_entropy(const Distribution& p);

/// Lower entropy envelope S_*(Q) = min over generators of shannon_entropy.
/// Entropy is concave, so the hull infimum is attained at a generator.
double entropy_lower(const CredalSet& cs);

/// Upper entropy envelope S*(Q), by maximize_entropy_over_hull. The full
/// SolveReport form exposes the certified gap and warning flag.
SolveReport entropy_upper_report(const CredalSet& cs,
                                 const EntropyMaxOptions& options = {});
double entropy_upper(const CredalSet& cs, const EntropyMaxOptions& options = {});

/// Residual gap S*(Q) - S_*(Q), the entropy notion of epistemic
/// uncertainty. Nonnegative up to the solver gap.
double entropy_epistemic(const CredalSet& cs, const EntropyMaxOptions& options = {});

struct HartleyOptions {
  /// Subset enumeration is O(K * 2^K) after an O(M * 2^K) tabulation, so
  /// Hartley-type measures are capped; beyond the cap they are reported as
  /// unavailable (ErrorCode::capability).
  std::size_t k_max = 14;
};

/// Moebius inverse of the lower probability, one signed mass per label
/// subset. Masses sum to 1 and the empty set carries none.
class MoebiusMass {
 public:
  MoebiusMass(std::size_t k, std::vector<double> mass);

  std::size_t dimension() const noexcept { return k_; }
  std::size_t num_subsets() const noexcept { return mass_.size(); }
  /// Mass of the subset encoded as a bitmask over labels.
  double mass(std::uint64_t subset_mask) const { return mass_.at(subset_mask); }
  const std::vector<double>& masses() const noexcept { return mass_; }

 private:
  std::size_t k_;
  std::vector<double> mass_;
};

/// Tabulates lower probabilities over all 2^K subsets, then applies the
/// standard in-place subset Moebius recursion (increasing bitmask order)
/// rather than the naive double sum.
MoebiusMass moebius_transform(const CredalSet& cs, const HartleyOptions& options = {});

/// Generalized Hartley measure GH(Q) = sum_A m(A) * log2|A|, with
/// log2|empty| := 0. Zero for precise sets, log2 K for the vacuous set.
double generalized_hartley(const CredalSet& cs, const HartleyOptions& options = {});
double generalized_hartley(const MoebiusMass& mass);

/// Aleatoric residual S*(Q) - GH(Q) of the Hartley decomposition.
double hartley_aleatoric(const CredalSet& cs, const HartleyOptions& options = {},
                         const EntropyMaxOptions& entropy_options = {});

}  // namespace creduq
