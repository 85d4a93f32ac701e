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

#include "creduq/error.hpp"

namespace creduq {

/// How incoming probability vectors are validated.
///
/// `renormalize` tolerates the float noise of real softmax dumps: entries in
/// [-1e-12, 0) are clamped to zero and a mass sum inside [1-1e-6, 1+1e-6] is
/// divided out (skipped when the sum is already within 1e-9, which keeps
/// serialization round trips byte-stable). `strict` rejects anything that is
/// not already clean: nonnegative entries and |sum - 1| <= 1e-9.
enum class ValidationPolicy { renormalize, strict };

/// A point on the probability simplex over K >= 2 labels. Immutable after
/// construction; all entries are >= 0 and sum to 1 within 1e-9.
class Distribution {
 public:
  static constexpr double kSumAcceptTol = 1e-9;
  static constexpr double kSumRenormBand = 1e-6;
  static constexpr double kNegativeClampTol = 1e-12;

  explicit Distribution(std::vector<double> probs,
                        ValidationPolicy policy = ValidationPolicy::renormalize);

  /// The Dirac measure delta_y on K labels.
  static Distribution dirac(std::size_t k, std::size_t y);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t y) const noexcept { return probs_[y]; }
  std::span<const double> probs() const noexcept { return probs_; }

  /// Index of the largest entry, lowest index on exact ties.
  std::size_t argmax() const noexcept;
  double max_prob() const noexcept;

  /// All labels whose mass is within `tol` of the maximum.
  std::vector<std::size_t> argmax_set(double tol = 1e-12) const;

 private:
  std::vector<double> probs_;
};

/// Total variation distance 1/2 * sum_y |p(y) - q(y)|, a metric on the
/// simplex with values in [0, 1]. Throws on dimension mismatch.
double tv_distance(const Distribution& p, const Distribution& q);

}  // namespace creduq
