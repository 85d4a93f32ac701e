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

#include "creduq/tv_measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "creduq/solvers.hpp"

namespace creduq {

namespace {

constexpr double kArgmaxTieTol = 1e-12;

}  // namespace

double tu_tv(const CredalSet& cs) {
  const std::size_t k = cs.dimension();
  double best_lower = 0.0;
  for (std::size_t y = 0; y < k; ++y) {
    double lower = cs.generator(0)[y];
    for (std::size_t j = 1; j < cs.num_generators(); ++j) {
      lower = std::min(lower, cs.generator(j)[y]);
    }
    best_lower = std::max(best_lower, lower);
  }
  return 1.0 - best_lower;
}

double au_tv_precise(const Distribution& p) { return 1.0 - p.max_prob(); }

double au_tv_lower(const CredalSet& cs) {
  double lo = std::numeric_limits<double>::infinity();
  for (const Distribution& p : cs.generators()) {
    lo = std::min(lo, au_tv_precise(p));
  }
  return lo;
}

double au_tv_upper(const CredalSet& cs) {
  const std::size_t k = cs.dimension();

  // Agreement branch: the hull supremum sits at a generator as soon as one
  // label lies in every generator's argmax set. Ties are resolved at
  // tolerance, taking the intersection (lowest surviving index).
  std::vector<char> shared(k, 1);
  for (const Distribution& p : cs.generators()) {
    const double top = p.max_prob();
    for (std::size_t y = 0; y < k; ++y) {
      if (shared[y] && p[y] < top - kArgmaxTieTol) shared[y] = 0;
    }
  }
  for (std::size_t y = 0; y < k; ++y) {
    if (!shared[y]) continue;
    double hi = 0.0;
    for (const Distribution& p : cs.generators()) {
      hi = std::max(hi, 1.0 - p[y]);
    }
    return hi;
  }

  // Disagreement: the least-confident hull member is found by the minimax
  // program over the generator weights.
  return 1.0 - minimax_max_coordinate(cs).optimum;
}

double eu_tv(const CredalSet& cs) {
  const std::size_t m = cs.num_generators();
  const std::size_t k = cs.dimension();
  double max_l1 = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const Distribution& pj = cs.generator(j);
    for (std::size_t i = j + 1; i < m; ++i) {
      const Distribution& pi = cs.generator(i);
      double l1 = 0.0;
      for (std::size_t y = 0; y < k; ++y) l1 += std::abs(pj[y] - pi[y]);
      max_l1 = std::max(max_l1, l1);
    }
  }
  return 0.25 * max_l1;
}

UncertaintyRecord evaluate_tv(const CredalSet& cs) {
  const double au_cap = 1.0 - 1.0 / static_cast<double>(cs.dimension());
  UncertaintyRecord record;
  record.tu = std::clamp(tu_tv(cs), 0.0, 1.0);
  record.eu = std::clamp(eu_tv(cs), 0.0, 1.0);
  record.au.lo = std::clamp(au_tv_lower(cs), 0.0, au_cap);
  record.au.hi = std::clamp(au_tv_upper(cs), record.au.lo, au_cap);
  return record;
}

}  // namespace creduq
