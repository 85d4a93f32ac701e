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

#include "creduq/synthetic.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace creduq {

namespace {

// Hand-rolled samplers on top of mt19937_64 so datasets are bit-identical
// for a given seed regardless of the standard library's distribution
// implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    // 53 random mantissa bits, shifted into (0, 1).
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double exponential() { return -std::log(uniform01()); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(2.0 * exponential());
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * uniform01();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

SyntheticResult generate(const SyntheticConfig& config) {
  if (config.k < 2 || config.n < 1 || config.m < 1 || !(config.noise >= 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "synthetic config needs k >= 2, n >= 1, m >= 1, noise >= 0");
  }
  Sampler rng(config.seed);
  SyntheticResult result;
  result.dataset.model_ids.reserve(config.m);
  for (std::size_t j = 0; j < config.m; ++j) {
    result.dataset.model_ids.push_back("member_" + std::to_string(j));
  }
  result.dataset.instances.reserve(config.n);
  result.true_conditionals.reserve(config.n);

  std::vector<double> truth(config.k);
  std::vector<double> logits(config.k);
  for (std::size_t i = 0; i < config.n; ++i) {
    // True conditional, uniform on the simplex via normalized exponentials.
    double total = 0.0;
    for (double& v : truth) {
      v = rng.exponential();
      total += v;
    }
    for (double& v : truth) v /= total;

    // Label drawn from the true conditional.
    std::size_t label = config.k - 1;
    {
      const double u = rng.uniform01();
      double cdf = 0.0;
      for (std::size_t y = 0; y < config.k; ++y) {
        cdf += truth[y];
        if (u <= cdf) {
          label = y;
          break;
        }
      }
    }

    std::vector<Distribution> generators;
    generators.reserve(config.m);
    for (std::size_t j = 0; j < config.m; ++j) {
      if (config.noise == 0.0) {
        // Exact copies so singleton credal sets have zero diameter.
        generators.emplace_back(truth);
        continue;
      }
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t y = 0; y < config.k; ++y) {
        logits[y] = std::log(truth[y]) + config.noise * rng.normal();
        top = std::max(top, logits[y]);
      }
      double z = 0.0;
      for (std::size_t y = 0; y < config.k; ++y) {
        logits[y] = std::exp(logits[y] - top);
        z += logits[y];
      }
      std::vector<double> member(config.k);
      for (std::size_t y = 0; y < config.k; ++y) member[y] = logits[y] / z;
      generators.emplace_back(std::move(member));
    }
    result.dataset.instances.push_back(
        {"i" + std::to_string(i), label, CredalSet(std::move(generators))});
    result.true_conditionals.emplace_back(truth);
  }
  return result;
}

}  // namespace creduq
