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

#include <map>
#include <string>

#include "creduq/credal_set.hpp"

namespace creduq {

/// Range of aleatoric uncertainty over a credal set.
/// 0 <= lo <= hi <= 1 - 1/K (a precise model's AU peaks at uniform).
struct AuInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Per-instance uncertainty scores under the total-variation test class,
/// plus optional named baseline scores.
struct UncertaintyRecord {
  double tu = 0.0;
  AuInterval au;
  double eu = 0.0;
  std::map<std::string, double> baselines;
};

/// Total uncertainty: worst-case distance of the hull from the nearest
/// Dirac, which closes to 1 - max_y min_j p_j(y). O(MK).
double tu_tv(const CredalSet& cs);

/// Aleatoric uncertainty of a precise model: distance to full certainty,
/// 1 - max_y p(y). Equals the pointwise Bayes error under 0-1 loss.
double au_tv_precise(const Distribution& p);

/// Lower endpoint of the AU range: min over generators of au_tv_precise.
/// AU is concave on the simplex, so the hull infimum sits at a generator.
double au_tv_lower(const CredalSet& cs);

/// Upper endpoint of the AU range. When every generator's argmax set
/// (tolerance 1e-12) shares a label y*, the hull supremum is
/// 1 - min_j p_j(y*); otherwise it is 1 - t* with t* from
/// minimax_max_coordinate. Always in [au_tv_lower(cs), 1 - 1/K].
double au_tv_upper(const CredalSet& cs);

/// Epistemic uncertainty: half the maximal pairwise TV distance, computed
/// exactly over generator pairs as 1/4 max_{j,i} sum_y |p_j(y) - p_i(y)|.
/// O(M^2 K).
double eu_tv(const CredalSet& cs);

/// Bundles tu_tv, [au_tv_lower, au_tv_upper], eu_tv into one record.
UncertaintyRecord evaluate_tv(const CredalSet& cs);

}  // namespace creduq
