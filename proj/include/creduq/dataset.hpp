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
#include <optional>
#include <string>
#include <vector>

#include "creduq/credal_set.hpp"

namespace creduq {

/// One test point: an ensemble prediction (credal set) plus an optional
/// ground-truth label.
struct Instance {
  std::string id;
  std::optional<std::size_t> label;
  CredalSet credal;
};

/// An ensemble prediction dataset. Every instance carries exactly M
/// generators aligned with model_ids; likelihood_ratios, when present, are
/// the per-model relative likelihoods L(h)/max L in [0,1] with the
/// maximizer at exactly 1.
struct PredictionDataset {
  std::vector<Instance> instances;
  std::vector<std::string> model_ids;
  std::optional<std::vector<double>> likelihood_ratios;

  std::size_t num_models() const noexcept { return model_ids.size(); }
  std::size_t dimension() const {
    return instances.empty() ? 0 : instances.front().credal.dimension();
  }
  bool all_labeled() const noexcept;
};

/// One validation problem found while scanning an input file.
struct Issue {
  ErrorCode code = ErrorCode::parse;
  std::size_t line = 0;         // 1-based; 0 when not line-specific
  std::string message;
};

/// Loads the JSONL format: one object per line with fields
///   id (string), label (optional integer), probs (M x K array).
/// Rows failing validation throw with line numbers and the offending model
/// index; all rows must agree on M and K. Model ids default to m0..m{M-1}.
PredictionDataset load_jsonl(const std::string& path,
                             ValidationPolicy policy = ValidationPolicy::renormalize);

/// Loads the CSV format with header
///   instance_id,model_id,label,p_0,...,p_{K-1}
/// Rows may arrive in any order; instances are grouped by id, model order is
/// fixed by first appearance, every instance must cover all models exactly
/// once, and labels must agree across the rows of one instance.
PredictionDataset load_csv(const std::string& path,
                           ValidationPolicy policy = ValidationPolicy::renormalize);

/// Scans a file and collects every violation instead of stopping at the
/// first. Returns all issues found; empty means the file is clean.
std::vector<Issue> validate_file(const std::string& path, bool csv,
                                 ValidationPolicy policy = ValidationPolicy::renormalize);

/// Writes the JSONL format with 17-significant-digit floats, so that
/// load -> save -> load round-trips losslessly.
void save_jsonl(const PredictionDataset& ds, const std::string& path);

/// Reads a sidecar manifest {"model_ids": [...], "likelihood_ratios": [...]}
/// and attaches it to the dataset. Counts must match M; when the dataset
/// already carries real model names the manifest entries are matched by
/// name. Ratios are validated (max within 1e-9 of 1) and rescaled by the
/// observed max so the best model sits at exactly 1.
void apply_manifest(PredictionDataset& ds, const std::string& path);

/// Keeps only the generators whose relative likelihood is >= alpha, in
/// every instance. Nonempty for any alpha <= 1 since the maximizer has
/// ratio exactly 1. Requires ratios to be present and alpha in [0,1].
PredictionDataset filter_by_relative_likelihood(const PredictionDataset& ds, double alpha);

/// Appends a synthetic model that emits the Dirac measure delta_label on
/// every instance; reproduces the anchored-total-uncertainty pathology. A
/// present ratio vector gains a 0 entry for the injected member.
PredictionDataset inject_dirac_member(const PredictionDataset& ds, std::size_t label);

}  // namespace creduq
