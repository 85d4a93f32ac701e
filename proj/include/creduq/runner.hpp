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

#include <optional>
#include <string>
#include <vector>

#include "creduq/baselines.hpp"
#include "creduq/dataset.hpp"
#include "creduq/selective.hpp"
#include "creduq/tv_measures.hpp"

namespace creduq {

/// Selectable per-instance measures. tu/au/eu are the total-variation
/// family; entropy covers the lower/upper envelopes and their gap; hartley
/// covers GH and its aleatoric residual.
enum class Measure { tu, au, eu, entropy, hartley };

/// Parses a comma-separated selection like "tu,au,eu"; unknown names throw.
std::vector<Measure> parse_measures(const std::string& csv);
std::string measure_name(Measure m);

struct RunOptions {
  std::vector<Measure> measures = {Measure::tu, Measure::au, Measure::eu};
  /// Worker threads; <= 0 means one per available core. Results are merged
  /// in input order, so the thread count never changes output values.
  int threads = 0;
  HartleyOptions hartley;
  EntropyMaxOptions entropy;
};

/// One output row per instance. Fields are present iff the corresponding
/// measure was selected.
struct ReportRow {
  std::string id;
  std::optional<std::size_t> label;
  std::size_t predicted = 0;
  std::optional<double> tu;
  std::optional<double> au_lo;
  std::optional<double> au_hi;
  std::optional<double> eu;
  std::optional<double> entropy_lower;
  std::optional<double> entropy_upper;
  std::optional<double> entropy_epistemic;
  bool entropy_warning = false;
  std::optional<double> gh;
  std::optional<double> hartley_au;
};

struct MeasureTiming {
  std::string measure;
  double seconds = 0.0;
};

struct RunResult {
  std::vector<ReportRow> rows;
  std::vector<MeasureTiming> timings;  // whole-set wall clock, per measure
  int threads_used = 1;
};

/// Scores every instance with the selected measures. Each measure is timed
/// over the entire set in its own pass; instances are processed in parallel
/// and written back by index, keeping reports deterministic.
RunResult run_measures(const PredictionDataset& ds, const RunOptions& options);

/// The ranking key for one report row given an uncertainty component
/// (tu|au|eu) and measure family (tv|entropy|hartley), following the
/// selective-prediction protocol; the AU interval ranks lexicographically
/// by (lo, hi). Throws if the row lacks the required fields.
std::vector<double> score_key(const ReportRow& row, const std::string& component,
                              const std::string& measure);

/// Serializes rows as JSONL with 17-significant-digit floats and a fixed
/// key order, so repeated runs are byte-identical.
std::string report_to_jsonl(const std::vector<ReportRow>& rows);

/// Parses report rows back from JSONL (the inverse of report_to_jsonl).
std::vector<ReportRow> report_from_jsonl(const std::string& path);

}  // namespace creduq
