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

#include "creduq/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace creduq {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kMinimaxGapTol = 1e-9;
constexpr double kLog2e = 1.4426950408889634;  // 1/ln 2

// Dense tableau simplex for
//   min 1'z   s.t.  P z >= 1,  z >= 0,
// the game dual of t* = min_w max_y (P'w)_y once the value is scaled out.
// M rows stay small (ensemble size), K only widens the tableau, matching
// the problem sizes this library targets. The caller recovers the weight
// vector from the dual values and the adversary strategy from z.
class GameSimplex {
 public:
  GameSimplex(const CredalSet& cs)
      : m_(cs.num_generators()),
        k_(cs.dimension()),
        cols_(k_ + 2 * m_),
        tableau_(m_, std::vector<double>(cols_ + 1)),
        cost_(cols_ + 1),
        basis_(m_) {
    // Rows: P z - s + a = 1, basis starts at the artificials.
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = tableau_[i];
      const Distribution& p = cs.generator(i);
      for (std::size_t y = 0; y < k_; ++y) row[y] = p[y];
      row[k_ + i] = -1.0;
      row[k_ + m_ + i] = 1.0;
      row[cols_] = 1.0;
      basis_[i] = k_ + m_ + i;
    }
  }

  // Runs both phases; returns (z, duals, pivot count).
  void solve(std::vector<double>& z, std::vector<double>& duals, std::size_t& pivots) {
    pivots = 0;

    // Phase 1: minimize the artificial mass. With the all-artificial basis
    // the reduced cost of column j is c1_j - sum_i T[i][j].
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (std::size_t j = 0; j <= cols_; ++j) {
      double colsum = 0.0;
      for (std::size_t i = 0; i < m_; ++i) colsum += tableau_[i][j];
      cost_[j] = -colsum;
    }
    for (std::size_t j = k_ + m_; j < cols_; ++j) cost_[j] += 1.0;
    run_phase(pivots);
    if (-cost_[cols_] > 1e-7) {
      throw Error(ErrorCode::solver, "phase 1 ended infeasible");  // cannot happen: z large enough is always feasible
    }

    // Evict artificials still basic at zero (duplicate generators make the
    // constraint rows dependent). A degenerate pivot on any structural
    // column keeps feasibility; an all-zero row is redundant and inert.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < k_ + m_) continue;
      for (std::size_t j = 0; j < k_ + m_; ++j) {
        if (std::abs(tableau_[i][j]) > kPivotTol) {
          pivot(i, j);
          ++pivots;
          break;
        }
      }
    }

    // Phase 2: minimize 1'z from the feasible basis found above. Reduced
    // costs are rebuilt for the new objective; artificial columns stay in
    // the tableau (priced but never entering) because their reduced costs
    // are exactly -dual at optimality.
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (std::size_t j = 0; j < k_; ++j) cost_[j] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = (basis_[i] < k_) ? 1.0 : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= cb * tableau_[i][j];
    }
    run_phase(pivots);

    z.assign(k_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < k_) z[basis_[i]] = tableau_[i][cols_];
    }
    duals.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      duals[i] = std::max(0.0, -cost_[k_ + m_ + i]);
    }
  }

 private:
  void run_phase(std::size_t& pivots) {
    const std::size_t cap = 10000 + 50 * (m_ + k_);
    std::size_t stall = 0;
    double last_obj = -cost_[cols_];
    for (std::size_t it = 0;; ++it) {
      if (it > cap) {
        throw Error(ErrorCode::solver, "simplex iteration cap exceeded");
      }
      const bool bland = stall > 64;
      std::size_t enter = cols_;
      double best = -kPivotTol;
      for (std::size_t j = 0; j < k_ + m_; ++j) {  // artificials never enter
        if (cost_[j] < best) {
          enter = j;
          if (bland) break;  // first eligible column
          best = cost_[j];
        }
      }
      if (enter == cols_) return;  // optimal

      // Ratio test; ties resolved by the smallest basic variable index so
      // Bland's rule applies end to end when degeneracy stalls progress.
      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = tableau_[i][enter];
        if (a <= kPivotTol) continue;
        const double ratio = tableau_[i][cols_] / a;
        if (ratio < best_ratio - 1e-15 ||
            (ratio < best_ratio + 1e-15 && (leave == m_ || basis_[i] < basis_[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == m_) {
        throw Error(ErrorCode::solver, "simplex detected an unbounded direction");
      }
      pivot(leave, enter);
      ++pivots;
      const double obj = -cost_[cols_];
      if (obj < last_obj - 1e-13) {
        stall = 0;
        last_obj = obj;
      } else {
        ++stall;
      }
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& prow = tableau_[row];
    const double inv = 1.0 / prow[col];
    for (double& v : prow) v *= inv;
    prow[col] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      auto& r = tableau_[i];
      const double f = r[col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) r[j] -= f * prow[j];
      r[col] = 0.0;
    }
    const double f = cost_[col];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= f * prow[j];
      cost_[col] = 0.0;
    }
    basis_[row] = col;
  }

  std::size_t m_, k_, cols_;
  std::vector<std::vector<double>> tableau_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
};

double max_mixture_coordinate(const CredalSet& cs, const std::vector<double>& w) {
  const std::size_t k = cs.dimension();
  double top = 0.0;
  for (std::size_t y = 0; y < k; ++y) {
    double mass = 0.0;
    for (std::size_t j = 0; j < cs.num_generators(); ++j) mass += w[j] * cs.generator(j)[y];
    top = std::max(top, mass);
  }
  return top;
}

double entropy_bits(std::span<const double> q) {
  double s = 0.0;
  for (double v : q) {
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

}  // namespace

SolveReport minimax_max_coordinate(const CredalSet& cs) {
  const std::size_t m = cs.num_generators();
  SolveReport report;
  if (m == 1) {
    report.optimum = cs.generator(0).max_prob();
    report.weights = {1.0};
    return report;
  }

  GameSimplex lp(cs);
  std::vector<double> z, duals;
  lp.solve(z, duals, report.iterations);

  const double dual_total = std::accumulate(duals.begin(), duals.end(), 0.0);
  const double z_total = std::accumulate(z.begin(), z.end(), 0.0);
  if (dual_total <= 0.0 || z_total <= 0.0) {
    throw Error(ErrorCode::solver, "simplex produced a degenerate game solution");
  }
  report.weights.resize(m);
  for (std::size_t j = 0; j < m; ++j) report.weights[j] = duals[j] / dual_total;

  // Two-sided certificate: the returned weights give an upper bound on the
  // game value, the adversary strategy recovered from z a lower bound.
  const double upper = max_mixture_coordinate(cs, report.weights);
  double lower = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    double mass = 0.0;
    const Distribution& p = cs.generator(j);
    for (std::size_t y = 0; y < cs.dimension(); ++y) mass += p[y] * (z[y] / z_total);
    lower = std::min(lower, mass);
  }
  report.optimum = upper;
  report.certified_gap = std::max(0.0, upper - lower);
  if (report.certified_gap > kMinimaxGapTol) {
    throw Error(ErrorCode::solver, "simplex finished with duality gap " +
                                       std::to_string(report.certified_gap));
  }
  return report;
}

namespace {

// Derivative of gamma -> S(q + gamma * d) in bits; decreasing in gamma.
double entropy_dir_derivative(std::span<const double> q, std::span<const double> d,
                              double gamma) {
  double acc = 0.0;
  for (std::size_t y = 0; y < q.size(); ++y) {
    const double dy = d[y];
    if (dy == 0.0) continue;
    const double v = q[y] + gamma * dy;
    if (v <= 0.0) {
      // Boundary of the simplex: the slope blows up against the move.
      return dy < 0.0 ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::infinity();
    }
    acc -= dy * (std::log(v) + 1.0);
  }
  return acc * kLog2e;
}

double exact_line_search(std::span<const double> q, std::span<const double> d,
                         double gamma_max) {
  if (entropy_dir_derivative(q, d, gamma_max) >= 0.0) return gamma_max;
  double lo = 0.0, hi = gamma_max;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (entropy_dir_derivative(q, d, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SolveReport maximize_entropy_over_hull(const CredalSet& cs,
                                       const EntropyMaxOptions& options) {
  const std::size_t m = cs.num_generators();
  const std::size_t k = cs.dimension();
  SolveReport report;
  if (m == 1) {
    report.optimum = entropy_bits(cs.generator(0).probs());
    report.weights = {1.0};
    return report;
  }

  // Starting from the uniform mixture keeps q supported on the union
  // support of the generators, so the gradient never sees log(0) paired
  // with positive generator mass.
  std::vector<double> w(m, 1.0 / static_cast<double>(m));
  std::vector<double> q(k, 0.0);
  std::vector<double> scores(m);
  std::vector<double> dir(k);
  double gap = std::numeric_limits<double>::infinity();

  auto refresh_mixture = [&] {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const Distribution& p = cs.generator(j);
      const double wj = w[j];
      if (wj == 0.0) continue;
      for (std::size_t y = 0; y < k; ++y) q[y] += wj * p[y];
    }
  };
  refresh_mixture();

  std::size_t steps = 0;
  while (true) {
    // Gradient scores in bits: score_j = d S(q)/d w_j.
    for (std::size_t j = 0; j < m; ++j) {
      const Distribution& p = cs.generator(j);
      double acc = 0.0;
      bool infinite = false;
      for (std::size_t y = 0; y < k; ++y) {
        const double py = p[y];
        if (py == 0.0) continue;
        if (q[y] <= 0.0) {
          infinite = true;
          break;
        }
        acc -= py * (std::log(q[y]) + 1.0);
      }
      scores[j] = infinite ? std::numeric_limits<double>::infinity() : acc * kLog2e;
    }
    double mean_score = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      // Zero-weight vertices may carry an infinite score once their support
      // has left the mixture; they contribute nothing to the mean.
      if (w[j] > 0.0) mean_score += w[j] * scores[j];
    }

    std::size_t j_fw = 0;
    for (std::size_t j = 1; j < m; ++j) {
      if (scores[j] > scores[j_fw]) j_fw = j;
    }
    gap = scores[j_fw] - mean_score;
    if (gap <= options.gap_tolerance) break;       // converged
    if (steps >= options.max_iterations) break;    // cap; gap stays honest

    std::size_t j_aw = m;
    for (std::size_t j = 0; j < m; ++j) {
      if (w[j] <= 0.0) continue;
      if (j_aw == m || scores[j] < scores[j_aw]) j_aw = j;
    }
    const double away_gain = mean_score - scores[j_aw];

    bool away = away_gain > gap && w[j_aw] < 1.0;
    double gamma_max = 1.0;
    if (away) {
      gamma_max = w[j_aw] / (1.0 - w[j_aw]);
      const Distribution& p = cs.generator(j_aw);
      for (std::size_t y = 0; y < k; ++y) dir[y] = q[y] - p[y];
    } else {
      const Distribution& p = cs.generator(j_fw);
      for (std::size_t y = 0; y < k; ++y) dir[y] = p[y] - q[y];
    }

    const double gamma = exact_line_search(q, dir, gamma_max);
    if (gamma <= 0.0) break;  // no representable progress left

    if (away) {
      for (double& v : w) v *= 1.0 + gamma;
      w[j_aw] -= gamma;
    } else {
      for (double& v : w) v *= 1.0 - gamma;
      w[j_fw] += gamma;
    }
    double total = 0.0;
    for (double& v : w) {
      if (v < 0.0) v = 0.0;
      total += v;
    }
    for (double& v : w) v /= total;
    refresh_mixture();
    ++steps;
  }

  report.iterations = steps;
  report.gap_warning = gap > options.gap_tolerance;

  // The gap certifies S* <= S(q) + gap at the final iterate. Feasible
  // vertices can only tighten the reported value, never the bound, and
  // guarantee optimum >= max_j S(p_j).
  const double s_mix = entropy_bits(q);
  const double upper_bound = s_mix + std::max(0.0, gap);
  report.optimum = s_mix;
  report.weights = w;
  for (std::size_t j = 0; j < m; ++j) {
    const double sj = entropy_bits(cs.generator(j).probs());
    if (sj > report.optimum) {
      report.optimum = sj;
      report.weights.assign(m, 0.0);
      report.weights[j] = 1.0;
    }
  }
  report.certified_gap = std::max(0.0, upper_bound - report.optimum);
  return report;
}

}  // namespace creduq
