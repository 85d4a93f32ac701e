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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "support/oracles.hpp"

using creduq::CredalSet;
using creduq::Distribution;
using creduq::Error;
using creduq::ErrorCode;
using creduq::HartleyOptions;
using creduq::MoebiusMass;

namespace {

CredalSet make(std::vector<std::vector<double>> rows) {
  std::vector<Distribution> generators;
  for (auto& r : rows) generators.emplace_back(std::move(r));
  return CredalSet(std::move(generators));
}

CredalSet vacuous(std::size_t k) {
  std::vector<Distribution> vertices;
  for (std::size_t y = 0; y < k; ++y) vertices.push_back(Distribution::dirac(k, y));
  return CredalSet(std::move(vertices));
}

}  // namespace

TEST_CASE("shannon entropy examples") {
  CHECK(creduq::shannon_entropy(Distribution::dirac(4, 1)) == 0.0);
  CHECK(creduq::shannon_entropy(Distribution(std::vector<double>(8, 0.125))) == 3.0);
  CHECK(creduq::shannon_entropy(Distribution({0.5, 0.5})) == 1.0);
}

TEST_CASE("entropy lower envelope") {
  CHECK(creduq::entropy_lower(make({{1.0, 0.0}, {0.5, 0.5}})) == 0.0);
  const Distribution p({0.3, 0.2, 0.5});
  CHECK(creduq::entropy_lower(CredalSet({p})) == creduq::shannon_entropy(p));
  // h(0.2) ~ 0.72193 < h(0.3) ~ 0.88129, so the min generator is (0.2, 0.8).
  CHECK(creduq::entropy_lower(make({{0.2, 0.8}, {0.7, 0.3}})) ==
        doctest::Approx(0.7219280948873623).epsilon(1e-12));
}

TEST_CASE("entropy upper envelope") {
  const Distribution p({0.3, 0.2, 0.5});
  CHECK(creduq::entropy_upper(CredalSet({p})) == creduq::shannon_entropy(p));
  CHECK(creduq::entropy_upper(make({{0.2, 0.8}, {0.7, 0.3}})) ==
        doctest::Approx(1.0).epsilon(1e-7));
  CHECK(creduq::entropy_upper(vacuous(4)) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("entropy epistemic gap") {
  CHECK(creduq::entropy_epistemic(CredalSet({Distribution({0.4, 0.6})})) == 0.0);
  CHECK(creduq::entropy_epistemic(make({{0.2, 0.8}, {0.7, 0.3}})) ==
        doctest::Approx(1.0 - 0.7219280948873623).epsilon(1e-7));
  CHECK(creduq::entropy_epistemic(vacuous(2)) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("entropy sandwich and upper monotonicity") {
  creduq::testing::TestRng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.index(9);
    const std::size_t m = 1 + rng.index(6);
    const CredalSet cs = creduq::testing::random_credal_set(rng, k, m);
    const creduq::SolveReport upper = creduq::entropy_upper_report(cs);
    const double lower = creduq::entropy_lower(cs);
    for (const Distribution& p : cs.generators()) {
      const double s = creduq::shannon_entropy(p);
      REQUIRE(lower <= s);
      REQUIRE(s <= upper.optimum + upper.certified_gap);
    }
    std::vector<Distribution> extended(cs.generators());
    extended.push_back(creduq::testing::random_distribution(rng, k));
    REQUIRE(creduq::entropy_upper(CredalSet(std::move(extended))) >=
            upper.optimum - 1e-7);
  }
}

TEST_CASE("moebius masses of a precise set sit on the singletons") {
  const Distribution p({0.25, 0.25, 0.5});
  const MoebiusMass mass = creduq::moebius_transform(CredalSet({p}));
  CHECK(mass.mass(0b000) == 0.0);
  CHECK(mass.mass(0b001) == 0.25);
  CHECK(mass.mass(0b010) == 0.25);
  CHECK(mass.mass(0b100) == 0.5);
  CHECK(mass.mass(0b011) == 0.0);  // dyadic entries cancel exactly
  CHECK(mass.mass(0b111) == 0.0);
}

TEST_CASE("moebius masses of the vacuous set sit on the full set") {
  const MoebiusMass mass = creduq::moebius_transform(vacuous(3));
  for (std::uint64_t subset = 0; subset < 7; ++subset) {
    REQUIRE(mass.mass(subset) == 0.0);
  }
  CHECK(mass.mass(0b111) == 1.0);
}

TEST_CASE("moebius masses of the binary interval set") {
  const MoebiusMass mass = creduq::moebius_transform(make({{0.2, 0.8}, {0.7, 0.3}}));
  CHECK(mass.mass(0b01) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(mass.mass(0b10) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(mass.mass(0b11) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("fast moebius equals the naive double sum") {
  creduq::testing::TestRng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + rng.index(7);  // K <= 8 keeps the 3^K sum cheap
    const std::size_t m = 1 + rng.index(6);
    const CredalSet cs = creduq::testing::random_credal_set(rng, k, m);
    const MoebiusMass fast = creduq::moebius_transform(cs);
    const std::vector<double> naive = creduq::testing::naive_moebius(cs);
    for (std::size_t mask = 0; mask < naive.size(); ++mask) {
      REQUIRE(std::abs(fast.masses()[mask] - naive[mask]) <= 1e-11);
    }
  }
}

TEST_CASE("moebius masses sum to one") {
  creduq::testing::TestRng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.index(11);  // K <= 12
    const std::size_t m = 1 + rng.index(8);
    const MoebiusMass mass =
        creduq::moebius_transform(creduq::testing::random_credal_set(rng, k, m));
    const double total =
        std::accumulate(mass.masses().begin(), mass.masses().end(), 0.0);
    REQUIRE(std::abs(total - 1.0) <= 1e-9);
    REQUIRE(std::abs(mass.mass(0)) <= 1e-12);
  }
}

TEST_CASE("generalized hartley examples") {
  CHECK(creduq::generalized_hartley(CredalSet({Distribution({0.25, 0.25, 0.5})})) == 0.0);
  CHECK(creduq::generalized_hartley(vacuous(4)) == 2.0);
  CHECK(creduq::generalized_hartley(vacuous(3)) == std::log2(3.0));
  CHECK(creduq::generalized_hartley(make({{0.2, 0.8}, {0.7, 0.3}})) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("generalized hartley soft nonnegativity") {
  creduq::testing::TestRng rng(44);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + rng.index(9);
    const std::size_t m = 1 + rng.index(8);
    const double gh =
        creduq::generalized_hartley(creduq::testing::random_credal_set(rng, k, m));
    // Lower envelopes of finitely generated sets are not guaranteed
    // 2-monotone, so this stays a soft check at float scale.
    REQUIRE(gh >= -1e-9);
    REQUIRE(gh <= std::log2(static_cast<double>(k)) + 1e-9);
  }
}

TEST_CASE("hartley aleatoric residual") {
  const Distribution p({0.3, 0.2, 0.5});
  CHECK(creduq::hartley_aleatoric(CredalSet({p})) == creduq::shannon_entropy(p));
  CHECK(creduq::hartley_aleatoric(make({{0.2, 0.8}, {0.7, 0.3}})) ==
        doctest::Approx(0.5).epsilon(1e-7));
  CHECK(creduq::hartley_aleatoric(vacuous(2)) == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("hartley decomposition is bookkept against the upper entropy") {
  creduq::testing::TestRng rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.index(7);
    const std::size_t m = 1 + rng.index(6);
    const CredalSet cs = creduq::testing::random_credal_set(rng, k, m);
    const double s_upper = creduq::entropy_upper(cs);
    const double gh = creduq::generalized_hartley(cs);
    const double au_h = creduq::hartley_aleatoric(cs);
    // The defining identity au_h = S* - GH holds bitwise because the solver
    // is deterministic; the restated sum holds to one rounding.
    REQUIRE(au_h == s_upper - gh);
    REQUIRE(std::abs((au_h + gh) - s_upper) <= 4e-15);
  }
}

TEST_CASE("hartley cap raises a capability error") {
  creduq::testing::TestRng rng(46);
  const CredalSet cs = creduq::testing::random_credal_set(rng, 16, 3);
  CHECK_THROWS_AS(creduq::moebius_transform(cs), Error);
  try {
    creduq::generalized_hartley(cs);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::capability);
  }
  HartleyOptions raised;
  raised.k_max = 16;
  CHECK_NOTHROW(creduq::moebius_transform(cs, raised));
}
