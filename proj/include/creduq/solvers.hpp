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
#include <vector>

#include "creduq/credal_set.hpp"

namespace creduq {

/// Result of an optimization over the generator-weight simplex.
struct SolveReport {
  double optimum = 0.0;
  /// Mixture weights over the M generators attaining `optimum`
  /// (nonnegative, summing to 1).
  std::vector<double> weights;
  std::size_t iterations = 0;
  /// Certified bound on |optimum - true optimum|, from LP duality or the
  /// conditional-gradient gap. Always >= 0.
  double certified_gap = 0.0;
  /// Set when the iteration cap was reached before the gap target.
  bool gap_warning = false;
};

/// Solves t* = min_{w in simplex} max_y sum_j w_j p_j(y), the mixture whose
/// largest coordinate is smallest. Solved as a linear program on the
/// generator-weight simplex by a dense two-phase primal simplex method on
/// the dual game form (M constraints, K variables); the weights are
/// recovered from the dual values. The reported optimum carries a two-sided
/// duality certificate and is exact to 1e-9; t* >= 1/K always.
///
/// Throws ErrorCode::solver if the method fails to certify, which cannot
/// happen for feasible bounded LPs of this shape and is guarded defensively.
SolveReport minimax_max_coordinate(const CredalSet& cs);

struct EntropyMaxOptions {
  double gap_tolerance = 1e-7;
  std::size_t max_iterations = 10000;
};

/// Maximizes Shannon entropy (bits) over the hull: S*(Q) = max_w S(P^T w).
/// Conditional gradient with away steps over the weight simplex; every step
/// uses an exact one-dimensional line search and the duality gap certifies
/// S* - optimum <= certified_gap. If the iteration cap is reached first, the
/// achieved gap is reported honestly and gap_warning is set; callers decide.
SolveReport maximize_entropy_over_hull(const CredalSet& cs,
                                       const EntropyMaxOptions& options = {});

}  // namespace creduq
