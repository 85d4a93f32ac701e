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

#include "creduq/distribution.hpp"

#include <cmath>
#include <string>

namespace creduq {

namespace {

std::string entry_str(std::size_t y, double v) {
  return "entry " + std::to_string(y) + " = " + std::to_string(v);
}

}  // namespace

Distribution::Distribution(std::vector<double> probs, ValidationPolicy policy)
    : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw Error(ErrorCode::shape,
                "distribution needs at least 2 labels, got " + std::to_string(probs_.size()));
  }
  double sum = 0.0;
  for (std::size_t y = 0; y < probs_.size(); ++y) {
    double v = probs_[y];
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::simplex, "non-finite probability, " + entry_str(y, v));
    }
    if (v < 0.0) {
      if (policy == ValidationPolicy::strict || v < -kNegativeClampTol) {
        throw Error(ErrorCode::simplex, "negative probability, " + entry_str(y, v));
      }
      probs_[y] = 0.0;
      v = 0.0;
    }
    sum += v;
  }
  const double off = std::abs(sum - 1.0);
  if (off <= kSumAcceptTol) {
    return;  // already normalized; leaving it untouched keeps round trips stable
  }
  if (policy == ValidationPolicy::strict || off > kSumRenormBand) {
    throw Error(ErrorCode::simplex,
                "probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
  for (double& v : probs_) v /= sum;
}

Distribution Distribution::dirac(std::size_t k, std::size_t y) {
  if (k < 2) {
    throw Error(ErrorCode::shape, "dirac needs at least 2 labels");
  }
  if (y >= k) {
    throw Error(ErrorCode::invalid_argument,
                "dirac label " + std::to_string(y) + " out of range for K=" + std::to_string(k));
  }
  std::vector<double> p(k, 0.0);
  p[y] = 1.0;
  return Distribution(std::move(p));
}

std::size_t Distribution::argmax() const noexcept {
  std::size_t best = 0;
  for (std::size_t y = 1; y < probs_.size(); ++y) {
    if (probs_[y] > probs_[best]) best = y;
  }
  return best;
}

double Distribution::max_prob() const noexcept { return probs_[argmax()]; }

std::vector<std::size_t> Distribution::argmax_set(double tol) const {
  const double top = max_prob();
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < probs_.size(); ++y) {
    if (probs_[y] >= top - tol) out.push_back(y);
  }
  return out;
}

double tv_distance(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::shape, "tv_distance dimension mismatch: " +
                                      std::to_string(p.size()) + " vs " +
                                      std::to_string(q.size()));
  }
  double l1 = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    l1 += std::abs(p[y] - q[y]);
  }
  return 0.5 * l1;
}

}  // namespace creduq
