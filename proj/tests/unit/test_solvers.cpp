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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "creduq/baselines.hpp"
#include "support/oracles.hpp"

using creduq::CredalSet;
using creduq::Distribution;
using creduq::EntropyMaxOptions;
using creduq::SolveReport;

namespace {

CredalSet make(std::vector<std::vector<double>> rows) {
  std::vector<Distribution> generators;
  for (auto& r : rows) generators.emplace_back(std::move(r));
  return CredalSet(std::move(generators));
}

}  // namespace

TEST_CASE("minimax on a single generator is its max coordinate") {
  const SolveReport r = minimax_max_coordinate(make({{0.6, 0.3, 0.1}}));
  CHECK(r.optimum == 0.6);
  CHECK(r.weights == std::vector<double>{1.0});
  CHECK(r.certified_gap == 0.0);
}

TEST_CASE("minimax on the worked K=3 pair") {
  const SolveReport r = minimax_max_coordinate(make({{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}}));
  CHECK(std::abs(r.optimum - 0.4) <= 1e-9);  // dense line search gives 0.4 at w=(0.5,0.5)
  CHECK(std::abs(r.weights[0] - 0.5) <= 1e-9);
  CHECK(std::abs(r.weights[1] - 0.5) <= 1e-9);
  CHECK(r.certified_gap <= 1e-9);
}

TEST_CASE("minimax on opposing diracs") {
  const SolveReport r =
      minimax_max_coordinate(CredalSet({Distribution::dirac(2, 0), Distribution::dirac(2, 1)}));
  CHECK(std::abs(r.optimum - 0.5) <= 1e-12);
  CHECK(std::abs(r.weights[0] - 0.5) <= 1e-9);
}

TEST_CASE("minimax optimum is invariant under permutation and duplication") {
  creduq::testing::TestRng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.index(9);
    const std::size_t m = 2 + rng.index(5);
    const CredalSet cs = creduq::testing::random_credal_set(rng, k, m);
    const double base = minimax_max_coordinate(cs).optimum;

    std::vector<Distribution> reversed(cs.generators().rbegin(), cs.generators().rend());
    const double perm = minimax_max_coordinate(CredalSet(reversed)).optimum;
    REQUIRE(std::abs(base - perm) <= 1e-9);

    std::vector<Distribution> doubled(cs.generators());
    doubled.insert(doubled.end(), cs.generators().begin(), cs.generators().end());
    const double dup = minimax_max_coordinate(CredalSet(doubled)).optimum;
    REQUIRE(std::abs(base - dup) <= 1e-9);
  }
}

TEST_CASE("minimax matches a dense line search for M=2") {
  creduq::testing::TestRng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 2 + rng.index(19);  // K in {2..20}
    const Distribution a = creduq::testing::random_distribution(rng, k);
    const Distribution b = creduq::testing::random_distribution(rng, k);
    const double lp = minimax_max_coordinate(CredalSet({a, b})).optimum;
    const double dense = creduq::testing::dense_minimax_two(a, b, 1e-4);
    // A step-h grid over a 1-Lipschitz piecewise-linear objective is within
    // h of the true minimum.
    REQUIRE(lp <= dense + 1e-9);
    REQUIRE(lp >= dense - 1e-4);
  }
}

TEST_CASE("minimax certificate holds at larger sizes") {
  creduq::testing::TestRng rng(27);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t k = 10 + rng.index(41);  // up to K=50
    const std::size_t m = 10 + rng.index(41);  // up to M=50
    const CredalSet cs = creduq::testing::random_credal_set(rng, k, m);
    const SolveReport r = minimax_max_coordinate(cs);
    REQUIRE(r.certified_gap <= 1e-9);
    double total = 0.0;
    for (double w : r.weights) {
      REQUIRE(w >= 0.0);
      total += w;
    }
    REQUIRE(std::abs(total - 1.0) <= 1e-9);
    // The reported optimum is what the returned weights achieve.
    double achieved = 0.0;
    for (std::size_t y = 0; y < k; ++y) {
      double mass = 0.0;
      for (std::size_t j = 0; j < m; ++j) mass += r.weights[j] * cs.generator(j)[y];
      achieved = std::max(achieved, mass);
    }
    REQUIRE(std::abs(achieved - r.optimum) <= 1e-12);
  }
}

TEST_CASE("minimax never dips below 1/K") {
  creduq::testing::TestRng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.index(9);
    const std::size_t m = 1 + rng.index(8);
    const CredalSet cs = creduq::testing::random_credal_set(rng, k, m);
    REQUIRE(minimax_max_coordinate(cs).optimum >= 1.0 / static_cast<double>(k) - 1e-12);
  }
}

TEST_CASE("entropy maximizer on a single generator") {
  const SolveReport r = maximize_entropy_over_hull(make({{0.25, 0.25, 0.25, 0.25}}));
  CHECK(r.optimum == 2.0);
  CHECK(r.certified_gap == 0.0);
}

TEST_CASE("entropy maximizer reaches the interior binary optimum") {
  const SolveReport r = maximize_entropy_over_hull(make({{0.2, 0.8}, {0.7, 0.3}}));
  CHECK(std::abs(r.optimum - 1.0) <= 1e-7);  // grid oracle: max at p0 = 0.5
  CHECK_FALSE(r.gap_warning);
  CHECK(r.certified_gap <= 1e-7);
}

TEST_CASE("entropy maximizer over all simplex vertices hits log2 K") {
  for (std::size_t k : {2, 3, 5, 8}) {
    std::vector<Distribution> vertices;
    for (std::size_t y = 0; y < k; ++y) vertices.push_back(Distribution::dirac(k, y));
    const SolveReport r = maximize_entropy_over_hull(CredalSet(std::move(vertices)));
    REQUIRE(std::abs(r.optimum - std::log2(static_cast<double>(k))) <= 1e-7);
  }
}

TEST_CASE("entropy maximizer dominates vertices and respects log2 K") {
  creduq::testing::TestRng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.index(19);
    const std::size_t m = 1 + rng.index(8);
    const CredalSet cs = creduq::testing::random_credal_set(rng, k, m);
    const SolveReport r = maximize_entropy_over_hull(cs);
    double best_vertex = 0.0;
    for (const Distribution& p : cs.generators()) {
      best_vertex = std::max(best_vertex, creduq::shannon_entropy(p));
    }
    REQUIRE(r.optimum >= best_vertex);
    REQUIRE(r.optimum <= std::log2(static_cast<double>(k)) + 1e-12);
    REQUIRE(r.certified_gap <= 1e-7);
    REQUIRE(r.iterations <= 10000);
  }
}

TEST_CASE("entropy maximizer matches grid search for M in {2,3}") {
  creduq::testing::TestRng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + rng.index(6);
    const std::size_t m = 2 + rng.index(2);
    const CredalSet cs = creduq::testing::random_credal_set(rng, k, m);
    const double solver = maximize_entropy_over_hull(cs).optimum;
    const double grid = creduq::testing::grid_entropy_max(cs);
    REQUIRE(std::abs(solver - grid) <= 1e-5);
  }
}

TEST_CASE("entropy maximizer handles sparse supports") {
  // Generators with disjoint-ish supports drive weights to the boundary,
  // where gradients blow up against vanished coordinates.
  creduq::testing::TestRng rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 3 + rng.index(10);
    const std::size_t m = 2 + rng.index(5);
    std::vector<Distribution> generators;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> p(k, 0.0);
      double total = 0.0;
      for (std::size_t y = 0; y < k; ++y) {
        if (rng.uniform() < 0.5) {
          p[y] = rng.uniform();
          total += p[y];
        }
      }
      if (total == 0.0) {
        p[rng.index(k)] = 1.0;
        total = 1.0;
      }
      for (double& v : p) v /= total;
      generators.emplace_back(std::move(p));
    }
    const CredalSet cs(std::move(generators));
    const SolveReport r = maximize_entropy_over_hull(cs);
    REQUIRE(std::isfinite(r.optimum));
    REQUIRE(std::isfinite(r.certified_gap));
    REQUIRE(r.certified_gap <= 1e-7);
    double best_vertex = 0.0;
    for (const Distribution& p : cs.generators()) {
      best_vertex = std::max(best_vertex, creduq::shannon_entropy(p));
    }
    REQUIRE(r.optimum >= best_vertex);
  }
}

TEST_CASE("iteration cap reports an honest gap and warning") {
  EntropyMaxOptions options;
  options.max_iterations = 1;
  options.gap_tolerance = 1e-12;
  const CredalSet cs = make({{0.8, 0.1, 0.1}, {0.1, 0.8, 0.1}, {0.6, 0.2, 0.2}});
  const SolveReport r = maximize_entropy_over_hull(cs, options);
  CHECK(r.gap_warning);
  CHECK(r.certified_gap > 1e-12);
  CHECK(r.iterations == 1);
  // Even when cut short, the reported value must dominate the vertices.
  CHECK(r.optimum >= creduq::shannon_entropy(Distribution({0.8, 0.1, 0.1})));
  // And the full run must still beat the capped one.
  const SolveReport full = maximize_entropy_over_hull(cs);
  CHECK(full.optimum >= r.optimum - 1e-12);
  CHECK(full.certified_gap <= 1e-7);
}
