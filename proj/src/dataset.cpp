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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

namespace creduq {

namespace {

using nlohmann::json;

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

// Collects issues when a sink is given, otherwise throws immediately.
struct ErrorSink {
  std::vector<Issue>* issues = nullptr;

  void report(ErrorCode code, std::size_t line, const std::string& message) {
    if (issues) {
      issues->push_back({code, line, message});
    } else {
      throw Error(code, line > 0 ? at_line(line) + message : message);
    }
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::parse, "cannot open " + path);
  }
  return in;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

PredictionDataset load_jsonl_impl(const std::string& path, ValidationPolicy policy,
                                  ErrorSink sink) {
  std::ifstream in = open_input(path);
  PredictionDataset ds;
  std::size_t m = 0, k = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      sink.report(ErrorCode::parse, line_no, std::string("invalid JSON: ") + e.what());
      continue;
    }
    if (!row.is_object() || !row.contains("id") || !row["id"].is_string() ||
        !row.contains("probs") || !row["probs"].is_array()) {
      sink.report(ErrorCode::parse, line_no,
                  "expected an object with string \"id\" and array \"probs\"");
      continue;
    }
    std::optional<std::size_t> label;
    if (row.contains("label") && !row["label"].is_null()) {
      if (!row["label"].is_number_integer() || row["label"].get<long long>() < 0) {
        sink.report(ErrorCode::parse, line_no, "\"label\" must be a nonnegative integer");
        continue;
      }
      label = row["label"].get<std::size_t>();
    }

    const auto& probs = row["probs"];
    if (probs.empty()) {
      sink.report(ErrorCode::shape, line_no, "instance has no model rows");
      continue;
    }
    if (m == 0) {
      m = probs.size();
    }
    if (probs.size() != m) {
      sink.report(ErrorCode::shape, line_no,
                  "expected " + std::to_string(m) + " model rows, got " +
                      std::to_string(probs.size()));
      continue;
    }
    std::vector<Distribution> generators;
    generators.reserve(m);
    bool bad = false;
    std::size_t expect_k = k;
    for (std::size_t j = 0; j < m && !bad; ++j) {
      if (!probs[j].is_array() || (expect_k != 0 && probs[j].size() != expect_k)) {
        sink.report(ErrorCode::shape, line_no,
                    "model " + std::to_string(j) + " has " + std::to_string(probs[j].size()) +
                        " probabilities, expected " + std::to_string(expect_k));
        bad = true;
        break;
      }
      std::vector<double> p;
      p.reserve(probs[j].size());
      for (const auto& v : probs[j]) {
        if (!v.is_number()) {
          sink.report(ErrorCode::parse, line_no,
                      "model " + std::to_string(j) + " holds a non-numeric probability");
          bad = true;
          break;
        }
        p.push_back(v.get<double>());
      }
      if (bad) break;
      try {
        generators.emplace_back(std::move(p), policy);
        if (expect_k == 0) expect_k = generators.front().size();
      } catch (const Error& e) {
        sink.report(e.code(), line_no, "model " + std::to_string(j) + ": " + e.what());
        bad = true;
      }
    }
    if (bad) continue;
    if (k == 0) k = generators.front().size();
    if (label && *label >= k) {
      sink.report(ErrorCode::shape, line_no,
                  "label " + std::to_string(*label) + " out of range for K=" + std::to_string(k));
      continue;
    }
    ds.instances.push_back({row["id"].get<std::string>(), label, CredalSet(std::move(generators))});
  }
  if (ds.instances.empty()) {
    sink.report(ErrorCode::parse, 0, "empty dataset: " + path + " holds no instances");
  }
  for (std::size_t j = 0; j < m; ++j) ds.model_ids.push_back("m" + std::to_string(j));
  return ds;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  // Plain comma splitting; ids containing commas or quotes are unsupported.
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') {
    out.back().pop_back();
  }
  return out;
}

PredictionDataset load_csv_impl(const std::string& path, ValidationPolicy policy,
                                ErrorSink sink) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) {
    sink.report(ErrorCode::parse, 0, "empty dataset: " + path + " holds no rows");
    return {};
  }
  const auto header = split_csv_line(line);
  if (header.size() < 5 || header[0] != "instance_id" || header[1] != "model_id" ||
      header[2] != "label") {
    sink.report(ErrorCode::parse, 1,
                "expected header instance_id,model_id,label,p_0,...,p_{K-1}");
    return {};
  }
  const std::size_t k = header.size() - 3;
  for (std::size_t y = 0; y < k; ++y) {
    if (header[3 + y] != "p_" + std::to_string(y)) {
      sink.report(ErrorCode::parse, 1, "probability column " + std::to_string(y) +
                                           " must be named p_" + std::to_string(y));
      return {};
    }
  }

  struct PendingInstance {
    std::string id;
    std::string label_token;
    std::vector<std::optional<Distribution>> generators;
  };
  std::vector<PendingInstance> pending;
  std::map<std::string, std::size_t> instance_index;
  std::vector<std::string> model_ids;
  std::map<std::string, std::size_t> model_index;

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      sink.report(ErrorCode::shape, line_no,
                  "row has " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
      continue;
    }
    std::vector<double> p(k);
    bool bad = false;
    for (std::size_t y = 0; y < k; ++y) {
      const std::string& cell = cells[3 + y];
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), p[y]);
      if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
        sink.report(ErrorCode::parse, line_no, "cannot parse probability \"" + cell + "\"");
        bad = true;
        break;
      }
    }
    if (bad) continue;

    auto [mit, minserted] = model_index.try_emplace(cells[1], model_ids.size());
    if (minserted) model_ids.push_back(cells[1]);
    const std::size_t model = mit->second;

    auto [iit, iinserted] = instance_index.try_emplace(cells[0], pending.size());
    if (iinserted) {
      pending.push_back({cells[0], cells[2], {}});
    }
    PendingInstance& inst = pending[iit->second];
    if (!iinserted && inst.label_token != cells[2]) {
      sink.report(ErrorCode::shape, line_no,
                  "instance \"" + inst.id + "\" has inconsistent labels (\"" +
                      inst.label_token + "\" vs \"" + cells[2] + "\")");
      continue;
    }
    if (inst.generators.size() <= model) inst.generators.resize(model + 1);
    if (inst.generators[model].has_value()) {
      sink.report(ErrorCode::shape, line_no,
                  "duplicate row for instance \"" + inst.id + "\" and model \"" + cells[1] +
                      "\"");
      continue;
    }
    try {
      inst.generators[model].emplace(std::move(p), policy);
    } catch (const Error& e) {
      sink.report(e.code(), line_no, "model \"" + cells[1] + "\": " + e.what());
    }
  }

  PredictionDataset ds;
  ds.model_ids = model_ids;
  for (PendingInstance& inst : pending) {
    inst.generators.resize(model_ids.size());
    std::vector<Distribution> generators;
    bool complete = true;
    for (std::size_t j = 0; j < model_ids.size(); ++j) {
      if (!inst.generators[j].has_value()) {
        sink.report(ErrorCode::shape, 0,
                    "instance \"" + inst.id + "\" is missing a row for model \"" +
                        model_ids[j] + "\"");
        complete = false;
        continue;
      }
      generators.push_back(std::move(*inst.generators[j]));
    }
    if (!complete) continue;
    std::optional<std::size_t> label;
    if (!inst.label_token.empty()) {
      std::size_t value = 0;
      const auto res = std::from_chars(inst.label_token.data(),
                                       inst.label_token.data() + inst.label_token.size(), value);
      if (res.ec != std::errc{} || res.ptr != inst.label_token.data() + inst.label_token.size() ||
          value >= k) {
        sink.report(ErrorCode::shape, 0,
                    "instance \"" + inst.id + "\" has invalid label \"" + inst.label_token +
                        "\"");
        continue;
      }
      label = value;
    }
    ds.instances.push_back({inst.id, label, CredalSet(std::move(generators))});
  }
  if (ds.instances.empty()) {
    sink.report(ErrorCode::parse, 0, "empty dataset: " + path + " holds no instances");
  }
  return ds;
}

}  // namespace

bool PredictionDataset::all_labeled() const noexcept {
  return std::all_of(instances.begin(), instances.end(),
                     [](const Instance& i) { return i.label.has_value(); });
}

PredictionDataset load_jsonl(const std::string& path, ValidationPolicy policy) {
  return load_jsonl_impl(path, policy, {});
}

PredictionDataset load_csv(const std::string& path, ValidationPolicy policy) {
  return load_csv_impl(path, policy, {});
}

std::vector<Issue> validate_file(const std::string& path, bool csv,
                                 ValidationPolicy policy) {
  std::vector<Issue> issues;
  ErrorSink sink{&issues};
  try {
    if (csv) {
      load_csv_impl(path, policy, sink);
    } else {
      load_jsonl_impl(path, policy, sink);
    }
  } catch (const Error& e) {
    issues.push_back({e.code(), 0, e.what()});
  }
  return issues;
}

void save_jsonl(const PredictionDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::parse, "cannot write " + path);
  }
  for (const Instance& inst : ds.instances) {
    out << "{\"id\":" << json(inst.id).dump();
    if (inst.label) out << ",\"label\":" << *inst.label;
    out << ",\"probs\":[";
    for (std::size_t j = 0; j < inst.credal.num_generators(); ++j) {
      if (j) out << ',';
      out << '[';
      const Distribution& p = inst.credal.generator(j);
      for (std::size_t y = 0; y < p.size(); ++y) {
        if (y) out << ',';
        out << format_double(p[y]);
      }
      out << ']';
    }
    out << "]}\n";
  }
  if (!out.flush()) {
    throw Error(ErrorCode::parse, "failed writing " + path);
  }
}

void apply_manifest(PredictionDataset& ds, const std::string& path) {
  std::ifstream in = open_input(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, path + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("model_ids") || !doc["model_ids"].is_array() ||
      !doc.contains("likelihood_ratios") || !doc["likelihood_ratios"].is_array()) {
    throw Error(ErrorCode::parse,
                path + ": expected {\"model_ids\": [...], \"likelihood_ratios\": [...]}");
  }
  const std::size_t m = ds.num_models();
  if (doc["model_ids"].size() != m || doc["likelihood_ratios"].size() != m) {
    throw Error(ErrorCode::shape, path + ": manifest describes " +
                                      std::to_string(doc["model_ids"].size()) +
                                      " models, dataset has " + std::to_string(m));
  }
  std::vector<std::string> names;
  std::vector<double> ratios;
  for (std::size_t j = 0; j < m; ++j) {
    if (!doc["model_ids"][j].is_string() || !doc["likelihood_ratios"][j].is_number()) {
      throw Error(ErrorCode::parse, path + ": malformed manifest entry " + std::to_string(j));
    }
    names.push_back(doc["model_ids"][j].get<std::string>());
    ratios.push_back(doc["likelihood_ratios"][j].get<double>());
  }

  // Reorder by name when the manifest names the dataset's models; otherwise
  // the manifest is taken positionally and supplies the names.
  const std::set<std::string> manifest_names(names.begin(), names.end());
  const std::set<std::string> dataset_names(ds.model_ids.begin(), ds.model_ids.end());
  std::vector<double> aligned(m);
  if (manifest_names == dataset_names && manifest_names.size() == m) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto it = std::find(names.begin(), names.end(), ds.model_ids[j]);
      aligned[j] = ratios[static_cast<std::size_t>(it - names.begin())];
    }
  } else {
    ds.model_ids = names;
    aligned = ratios;
  }

  double top = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (!std::isfinite(aligned[j]) || aligned[j] < 0.0 || aligned[j] > 1.0 + 1e-9) {
      throw Error(ErrorCode::shape, path + ": likelihood ratio " + std::to_string(aligned[j]) +
                                        " for model \"" + ds.model_ids[j] +
                                        "\" is outside [0, 1]");
    }
    top = std::max(top, aligned[j]);
  }
  if (std::abs(top - 1.0) > 1e-9) {
    throw Error(ErrorCode::shape,
                path + ": the best model must have relative likelihood 1, max is " +
                    std::to_string(top));
  }
  for (double& r : aligned) r /= top;  // pin the maximizer to exactly 1
  ds.likelihood_ratios = std::move(aligned);
}

PredictionDataset filter_by_relative_likelihood(const PredictionDataset& ds, double alpha) {
  if (!ds.likelihood_ratios) {
    throw Error(ErrorCode::invalid_argument,
                "likelihood filtering needs a manifest with likelihood ratios");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::invalid_argument,
                "alpha must be in [0, 1], got " + std::to_string(alpha));
  }
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < ds.num_models(); ++j) {
    if ((*ds.likelihood_ratios)[j] >= alpha) keep.push_back(j);
  }

  PredictionDataset out;
  std::vector<double> ratios;
  for (std::size_t j : keep) {
    out.model_ids.push_back(ds.model_ids[j]);
    ratios.push_back((*ds.likelihood_ratios)[j]);
  }
  out.likelihood_ratios = std::move(ratios);
  out.instances.reserve(ds.instances.size());
  for (const Instance& inst : ds.instances) {
    std::vector<Distribution> generators;
    generators.reserve(keep.size());
    for (std::size_t j : keep) generators.push_back(inst.credal.generator(j));
    out.instances.push_back({inst.id, inst.label, CredalSet(std::move(generators))});
  }
  return out;
}

PredictionDataset inject_dirac_member(const PredictionDataset& ds, std::size_t label) {
  const std::size_t k = ds.dimension();
  if (label >= k) {
    throw Error(ErrorCode::invalid_argument,
                "label " + std::to_string(label) + " out of range for K=" + std::to_string(k));
  }
  PredictionDataset out = ds;
  std::string name = "dirac_y" + std::to_string(label);
  while (std::find(out.model_ids.begin(), out.model_ids.end(), name) != out.model_ids.end()) {
    name += "_";
  }
  out.model_ids.push_back(name);
  if (out.likelihood_ratios) out.likelihood_ratios->push_back(0.0);
  const Distribution dirac = Distribution::dirac(k, label);
  for (Instance& inst : out.instances) {
    std::vector<Distribution> generators(inst.credal.generators());
    generators.push_back(dirac);
    inst.credal = CredalSet(std::move(generators));
  }
  return out;
}

}  // namespace creduq
