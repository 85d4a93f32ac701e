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
#include <string>
#include <vector>

#include "creduq/credal_set.hpp"

namespace creduq {

/// One test point entering the selective-prediction harness. The score key
/// is an ordered tuple: primary uncertainty first, then tie-break
/// components (e.g. (lo, hi) for the AU interval).
struct ScoredInstance {
  std::string instance_id;
  std::size_t predicted_label = 0;
  std::size_t true_label = 0;
  std::vector<double> score_key;
};

struct ArPoint {
  double rejection_fraction = 0.0;
  double accuracy = 0.0;
};

/// Accuracy-rejection curve over B equal-width bins, with its area under
/// the curve and Monotonicity Ratio. tie_fraction reports how often
/// adjacent ranked instances carry identical score keys, a diagnostic for
/// lexicographic interval ranking.
struct ArCurve {
  std::vector<ArPoint> bins;
  double auc = 0.0;
  double mr = 0.0;
  std::size_t bin_count = 0;
  double tie_fraction = 0.0;
};

/// Plurality vote over generator argmaxes; ties among vote leaders broken
/// by the highest mean probability across generators, then lowest index.
std::size_t credal_predict(const CredalSet& cs);

/// Stable sort indices by score key, descending and lexicographic across
/// tuple components, so equal keys keep input order. All keys must share
/// one width and be finite.
std::vector<std::size_t> rank_by_uncertainty(const std::vector<ScoredInstance>& instances);

/// Builds the AR curve from instances already in ranked (most uncertain
/// first) order: bin i rejects the ceil(i/B * N) most uncertain points and
/// records accuracy on the remainder. Requires N >= B >= 2; rejection
/// fractions stop at (B-1)/B so the remainder never empties.
ArCurve accuracy_rejection_curve(const std::vector<ScoredInstance>& ranked,
                                 std::size_t bin_count = 30);

/// Trapezoidal integral of accuracy over rejection fraction, normalized by
/// the covered span: a constant curve at accuracy c yields c.
double auc(const ArCurve& curve);

/// Fraction of consecutive accuracy steps that are nonnegative, with
/// differences within 1e-12 of zero counted as flat.
double monotonicity_ratio(const ArCurve& curve);

}  // namespace creduq
