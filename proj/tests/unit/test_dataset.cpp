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

#include "creduq/dataset.hpp"

#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "creduq/tv_measures.hpp"
#include "support/oracles.hpp"

using creduq::Error;
using creduq::ErrorCode;
using creduq::Issue;
using creduq::PredictionDataset;

namespace {

// Writes content to a fresh temp file and returns its path.
class TempFile {
 public:
  explicit TempFile(const std::string& content, const char* suffix = ".jsonl") {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("creduq_test_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++) + suffix))
                .string();
    std::ofstream out(path_, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

}  // namespace

TEST_CASE("jsonl happy path") {
  const TempFile f(
      "{\"id\":\"a\",\"label\":1,\"probs\":[[0.2,0.8],[0.7,0.3]]}\n"
      "{\"id\":\"b\",\"probs\":[[0.5,0.5],[0.4,0.6]]}\n");
  const PredictionDataset ds = creduq::load_jsonl(f.path());
  REQUIRE(ds.instances.size() == 2);
  CHECK(ds.num_models() == 2);
  CHECK(ds.dimension() == 2);
  CHECK(ds.instances[0].id == "a");
  CHECK(ds.instances[0].label == 1);
  CHECK_FALSE(ds.instances[1].label.has_value());
  CHECK(ds.model_ids == std::vector<std::string>{"m0", "m1"});
  CHECK_FALSE(ds.all_labeled());
}

TEST_CASE("jsonl row with bad mass is rejected with its line") {
  const TempFile f(
      "{\"id\":\"a\",\"probs\":[[0.2,0.8]]}\n"
      "{\"id\":\"b\",\"probs\":[[0.7,0.5]]}\n");
  try {
    creduq::load_jsonl(f.path());
    FAIL("expected a simplex error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::simplex);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("model 0") != std::string::npos);
  }
}

TEST_CASE("jsonl structural errors") {
  const TempFile empty("");
  CHECK(code_of([&] { creduq::load_jsonl(empty.path()); }) == ErrorCode::parse);
  CHECK(code_of([&] { creduq::load_jsonl("/nonexistent/x.jsonl"); }) == ErrorCode::parse);

  const TempFile garbage("not json\n");
  CHECK(code_of([&] { creduq::load_jsonl(garbage.path()); }) == ErrorCode::parse);

  const TempFile ragged_m(
      "{\"id\":\"a\",\"probs\":[[0.2,0.8],[0.7,0.3]]}\n"
      "{\"id\":\"b\",\"probs\":[[0.5,0.5]]}\n");
  CHECK(code_of([&] { creduq::load_jsonl(ragged_m.path()); }) == ErrorCode::shape);

  const TempFile ragged_k("{\"id\":\"a\",\"probs\":[[0.2,0.8],[0.2,0.3,0.5]]}\n");
  CHECK(code_of([&] { creduq::load_jsonl(ragged_k.path()); }) == ErrorCode::shape);

  const TempFile bad_label("{\"id\":\"a\",\"label\":7,\"probs\":[[0.2,0.8]]}\n");
  CHECK(code_of([&] { creduq::load_jsonl(bad_label.path()); }) == ErrorCode::shape);
}

TEST_CASE("validate_file collects every violation") {
  const TempFile f(
      "{\"id\":\"a\",\"probs\":[[0.2,0.8]]}\n"
      "{\"id\":\"b\",\"probs\":[[0.9,0.3]]}\n"
      "{bad\n"
      "{\"id\":\"c\",\"probs\":[[0.5,0.5]]}\n");
  const std::vector<Issue> issues = creduq::validate_file(f.path(), /*csv=*/false);
  REQUIRE(issues.size() == 2);
  CHECK(issues[0].line == 2);
  CHECK(issues[0].code == ErrorCode::simplex);
  CHECK(issues[1].line == 3);
  CHECK(issues[1].code == ErrorCode::parse);

  const TempFile clean("{\"id\":\"a\",\"probs\":[[0.2,0.8]]}\n");
  CHECK(creduq::validate_file(clean.path(), false).empty());
}

TEST_CASE("strict mode rejects renormalizable rows") {
  const TempFile f("{\"id\":\"a\",\"probs\":[[0.2000004,0.8]]}\n");
  CHECK_NOTHROW(creduq::load_jsonl(f.path()));
  CHECK(code_of([&] {
          creduq::load_jsonl(f.path(), creduq::ValidationPolicy::strict);
        }) == ErrorCode::simplex);
}

TEST_CASE("csv happy path regroups rows in any order") {
  const TempFile f(
      "instance_id,model_id,label,p_0,p_1,p_2,p_3\n"
      "a,rf1,2,0.1,0.2,0.3,0.4\n"
      "b,rf2,0,0.7,0.1,0.1,0.1\n"
      "a,rf2,2,0.25,0.25,0.25,0.25\n"
      "b,rf1,0,0.4,0.2,0.2,0.2\n"
      "a,rf3,2,0.3,0.3,0.2,0.2\n"
      "b,rf3,0,0.2,0.2,0.3,0.3\n",
      ".csv");
  const PredictionDataset ds = creduq::load_csv(f.path());
  REQUIRE(ds.instances.size() == 2);
  CHECK(ds.num_models() == 3);
  CHECK(ds.dimension() == 4);
  CHECK(ds.model_ids == std::vector<std::string>{"rf1", "rf2", "rf3"});
  CHECK(ds.instances[0].id == "a");
  CHECK(ds.instances[0].label == 2);
  CHECK(ds.instances[1].credal.generator(0)[0] == 0.4);  // rf1 row of b
  CHECK(ds.all_labeled());
}

TEST_CASE("csv structural errors") {
  const TempFile missing(
      "instance_id,model_id,label,p_0,p_1\n"
      "a,rf1,0,0.5,0.5\n"
      "a,rf2,0,0.6,0.4\n"
      "b,rf1,1,0.3,0.7\n",
      ".csv");
  CHECK(code_of([&] { creduq::load_csv(missing.path()); }) == ErrorCode::shape);

  const TempFile duplicate(
      "instance_id,model_id,label,p_0,p_1\n"
      "a,rf1,0,0.5,0.5\n"
      "a,rf1,0,0.6,0.4\n",
      ".csv");
  CHECK(code_of([&] { creduq::load_csv(duplicate.path()); }) == ErrorCode::shape);

  const TempFile conflicting(
      "instance_id,model_id,label,p_0,p_1\n"
      "a,rf1,0,0.5,0.5\n"
      "a,rf2,1,0.6,0.4\n",
      ".csv");
  CHECK(code_of([&] { creduq::load_csv(conflicting.path()); }) == ErrorCode::shape);

  const TempFile ragged(
      "instance_id,model_id,label,p_0,p_1\n"
      "a,rf1,0,0.5,0.5,0.3\n",
      ".csv");
  CHECK(code_of([&] { creduq::load_csv(ragged.path()); }) == ErrorCode::shape);

  const TempFile bad_header("foo,bar\n", ".csv");
  CHECK(code_of([&] { creduq::load_csv(bad_header.path()); }) == ErrorCode::parse);
}

TEST_CASE("csv tolerates CRLF line endings") {
  const TempFile f(
      "instance_id,model_id,label,p_0,p_1\r\n"
      "a,rf1,0,0.5,0.5\r\n"
      "a,rf2,0,0.6,0.4\r\n",
      ".csv");
  const PredictionDataset ds = creduq::load_csv(f.path());
  REQUIRE(ds.instances.size() == 1);
  CHECK(ds.num_models() == 2);
  CHECK(ds.instances[0].credal.generator(1)[1] == 0.4);
}

TEST_CASE("jsonl round trip is lossless") {
  creduq::testing::TestRng rng(61);
  std::string content;
  for (int i = 0; i < 20; ++i) {
    content += "{\"id\":\"inst" + std::to_string(i) + "\",\"label\":0,\"probs\":[[";
    const auto p = creduq::testing::random_simplex_point(rng, 3);
    char buf[64];
    for (int y = 0; y < 3; ++y) {
      std::snprintf(buf, sizeof(buf), "%.17g", p[y]);
      content += buf;
      if (y < 2) content += ",";
    }
    content += "],[0.5,0.25,0.25]]}\n";
  }
  const TempFile f(content);
  const PredictionDataset first = creduq::load_jsonl(f.path());
  const TempFile out1("");
  creduq::save_jsonl(first, out1.path());
  const PredictionDataset second = creduq::load_jsonl(out1.path());
  const TempFile out2("");
  creduq::save_jsonl(second, out2.path());
  CHECK(slurp(out1.path()) == slurp(out2.path()));
}

TEST_CASE("manifest attaches and rescales likelihood ratios") {
  const TempFile data(
      "{\"id\":\"a\",\"probs\":[[0.2,0.8],[0.7,0.3],[0.5,0.5]]}\n");
  const TempFile manifest(
      "{\"model_ids\":[\"m0\",\"m1\",\"m2\"],\"likelihood_ratios\":[1.0,0.6,0.3]}",
      ".json");
  PredictionDataset ds = creduq::load_jsonl(data.path());
  creduq::apply_manifest(ds, manifest.path());
  REQUIRE(ds.likelihood_ratios.has_value());
  CHECK((*ds.likelihood_ratios)[0] == 1.0);
  CHECK((*ds.likelihood_ratios)[1] == 0.6);

  // Names matching out of order are realigned by name.
  const TempFile shuffled(
      "{\"model_ids\":[\"m2\",\"m0\",\"m1\"],\"likelihood_ratios\":[0.3,1.0,0.6]}",
      ".json");
  PredictionDataset ds2 = creduq::load_jsonl(data.path());
  creduq::apply_manifest(ds2, shuffled.path());
  CHECK((*ds2.likelihood_ratios)[0] == 1.0);
  CHECK((*ds2.likelihood_ratios)[2] == 0.3);

  // A max away from 1 violates the relative-likelihood contract.
  const TempFile low_max(
      "{\"model_ids\":[\"m0\",\"m1\",\"m2\"],\"likelihood_ratios\":[0.9,0.6,0.3]}",
      ".json");
  PredictionDataset ds3 = creduq::load_jsonl(data.path());
  CHECK(code_of([&] { creduq::apply_manifest(ds3, low_max.path()); }) == ErrorCode::shape);

  // A max within tolerance is pinned to exactly 1.
  const TempFile near_max(
      "{\"model_ids\":[\"m0\",\"m1\",\"m2\"],\"likelihood_ratios\":[0.9999999996,0.6,0.3]}",
      ".json");
  PredictionDataset ds4 = creduq::load_jsonl(data.path());
  creduq::apply_manifest(ds4, near_max.path());
  CHECK((*ds4.likelihood_ratios)[0] == 1.0);
}

TEST_CASE("likelihood filtering") {
  const TempFile data(
      "{\"id\":\"a\",\"label\":0,\"probs\":[[0.2,0.8],[0.7,0.3],[0.5,0.5]]}\n");
  const TempFile manifest(
      "{\"model_ids\":[\"m0\",\"m1\",\"m2\"],\"likelihood_ratios\":[1.0,0.6,0.3]}",
      ".json");
  PredictionDataset ds = creduq::load_jsonl(data.path());

  CHECK(code_of([&] { creduq::filter_by_relative_likelihood(ds, 0.5); }) ==
        ErrorCode::invalid_argument);  // ratios absent

  creduq::apply_manifest(ds, manifest.path());
  CHECK(code_of([&] { creduq::filter_by_relative_likelihood(ds, 1.5); }) ==
        ErrorCode::invalid_argument);

  const PredictionDataset all = creduq::filter_by_relative_likelihood(ds, 0.0);
  CHECK(all.num_models() == 3);

  const PredictionDataset mid = creduq::filter_by_relative_likelihood(ds, 0.5);
  CHECK(mid.model_ids == std::vector<std::string>{"m0", "m1"});
  CHECK(mid.instances[0].credal.num_generators() == 2);

  const PredictionDataset top = creduq::filter_by_relative_likelihood(ds, 1.0);
  CHECK(top.model_ids == std::vector<std::string>{"m0"});

  // Monotone: raising alpha never adds generators.
  for (double lo = 0.0; lo <= 1.0; lo += 0.25) {
    for (double hi = lo; hi <= 1.0; hi += 0.25) {
      const auto wide = creduq::filter_by_relative_likelihood(ds, lo);
      const auto narrow = creduq::filter_by_relative_likelihood(ds, hi);
      for (const auto& id : narrow.model_ids) {
        REQUIRE(std::find(wide.model_ids.begin(), wide.model_ids.end(), id) !=
                wide.model_ids.end());
      }
    }
  }
}

TEST_CASE("dirac injection reproduces the anchored pathology") {
  const TempFile data(
      "{\"id\":\"a\",\"label\":0,\"probs\":[[0.2,0.8],[0.7,0.3]]}\n"
      "{\"id\":\"b\",\"label\":1,\"probs\":[[0.6,0.4],[0.3,0.7]]}\n");
  const PredictionDataset ds = creduq::load_jsonl(data.path());
  const PredictionDataset cursed = creduq::inject_dirac_member(ds, 1);
  REQUIRE(cursed.num_models() == 3);
  CHECK(cursed.model_ids[2] == "dirac_y1");
  for (std::size_t i = 0; i < cursed.instances.size(); ++i) {
    const auto& credal = cursed.instances[i].credal;
    REQUIRE(credal.num_generators() == 3);
    REQUIRE(credal.generator(2)[1] == 1.0);
    double lower_anchor = 1.0;
    for (const auto& g : credal.generators()) lower_anchor = std::min(lower_anchor, g[1]);
    REQUIRE(creduq::tu_tv(credal) == 1.0 - lower_anchor);
    REQUIRE(creduq::eu_tv(credal) >= creduq::eu_tv(ds.instances[i].credal) - 1e-15);
  }
  CHECK(code_of([&] { creduq::inject_dirac_member(ds, 9); }) == ErrorCode::invalid_argument);
}
