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

#include "creduq.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include <json.hpp>

#include "creduq/baselines.hpp"
#include "creduq/dataset.hpp"
#include "creduq/runner.hpp"
#include "creduq/selective.hpp"
#include "creduq/synthetic.hpp"
#include "creduq/tv_measures.hpp"

namespace {

thread_local std::string g_last_error;

creduq_status set_error(creduq::ErrorCode code, const std::string& message) {
  g_last_error = message;
  return static_cast<creduq_status>(static_cast<int>(code));
}

// Runs `fn` and funnels every failure into a status + last-error message.
template <typename Fn>
creduq_status guarded(Fn&& fn) {
  try {
    fn();
    return CREDUQ_OK;
  } catch (const creduq::Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(creduq::ErrorCode::internal, "out of memory");
  } catch (const std::exception& e) {
    return set_error(creduq::ErrorCode::internal, e.what());
  }
}

creduq::ValidationPolicy policy_of(int strict) {
  return strict ? creduq::ValidationPolicy::strict : creduq::ValidationPolicy::renormalize;
}

creduq_status require(bool ok, const char* what) {
  if (ok) return CREDUQ_OK;
  return set_error(creduq::ErrorCode::invalid_argument, what);
}

}  // namespace

struct creduq_dataset {
  creduq::PredictionDataset data;
};

struct creduq_report {
  creduq::RunResult result;
};

struct creduq_arcurve {
  creduq::ArCurve curve;
};

extern "C" {

const char* creduq_version(void) { return "0.1.0"; }

const char* creduq_last_error(void) { return g_last_error.c_str(); }

creduq_status creduq_dataset_load_jsonl(const char* path, int strict,
                                        creduq_dataset** out) {
  if (require(path && out, "path and out must be non-NULL")) return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    auto* handle = new creduq_dataset{creduq::load_jsonl(path, policy_of(strict))};
    *out = handle;
  });
}

creduq_status creduq_dataset_load_csv(const char* path, int strict, creduq_dataset** out) {
  if (require(path && out, "path and out must be non-NULL")) return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    auto* handle = new creduq_dataset{creduq::load_csv(path, policy_of(strict))};
    *out = handle;
  });
}

creduq_status creduq_validate_file(const char* path, int csv, int strict,
                                   char** diagnostics) {
  if (require(path != nullptr, "path must be non-NULL")) return CREDUQ_ERR_INVALID_ARGUMENT;
  if (diagnostics) *diagnostics = nullptr;
  try {
    const auto issues = creduq::validate_file(path, csv != 0, policy_of(strict));
    if (issues.empty()) return CREDUQ_OK;
    std::string text;
    int worst = 0;
    for (const auto& issue : issues) {
      if (issue.line > 0) {
        text += "line " + std::to_string(issue.line) + ": ";
      }
      text += issue.message;
      text += '\n';
      worst = std::max(worst, static_cast<int>(issue.code));
    }
    if (diagnostics) {
      *diagnostics = new char[text.size() + 1];
      std::memcpy(*diagnostics, text.c_str(), text.size() + 1);
    }
    g_last_error = text;
    return static_cast<creduq_status>(worst);
  } catch (const creduq::Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return set_error(creduq::ErrorCode::internal, e.what());
  }
}

creduq_status creduq_dataset_apply_manifest(creduq_dataset* ds, const char* path) {
  if (require(ds && path, "dataset and path must be non-NULL")) return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] { creduq::apply_manifest(ds->data, path); });
}

creduq_status creduq_dataset_filter_likelihood(const creduq_dataset* ds, double alpha,
                                               creduq_dataset** out) {
  if (require(ds && out, "dataset and out must be non-NULL")) return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new creduq_dataset{creduq::filter_by_relative_likelihood(ds->data, alpha)};
  });
}

creduq_status creduq_dataset_inject_dirac(const creduq_dataset* ds, int32_t label,
                                          creduq_dataset** out) {
  if (require(ds && out && label >= 0, "dataset and out must be non-NULL, label >= 0"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new creduq_dataset{
        creduq::inject_dirac_member(ds->data, static_cast<std::size_t>(label))};
  });
}

creduq_status creduq_dataset_save_jsonl(const creduq_dataset* ds, const char* path) {
  if (require(ds && path, "dataset and path must be non-NULL")) return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] { creduq::save_jsonl(ds->data, path); });
}

creduq_status creduq_dataset_synthetic(int32_t k, int64_t n, int32_t m, double noise,
                                       uint64_t seed, creduq_dataset** out) {
  if (require(out != nullptr, "out must be non-NULL")) return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    creduq::SyntheticConfig config;
    config.k = static_cast<std::size_t>(k > 0 ? k : 0);
    config.n = static_cast<std::size_t>(n > 0 ? n : 0);
    config.m = static_cast<std::size_t>(m > 0 ? m : 0);
    config.noise = noise;
    config.seed = seed;
    *out = new creduq_dataset{creduq::generate(config).dataset};
  });
}

int64_t creduq_dataset_size(const creduq_dataset* ds) {
  return ds ? static_cast<int64_t>(ds->data.instances.size()) : 0;
}

int32_t creduq_dataset_num_models(const creduq_dataset* ds) {
  return ds ? static_cast<int32_t>(ds->data.num_models()) : 0;
}

int32_t creduq_dataset_num_classes(const creduq_dataset* ds) {
  return ds ? static_cast<int32_t>(ds->data.dimension()) : 0;
}

int creduq_dataset_all_labeled(const creduq_dataset* ds) {
  return ds && ds->data.all_labeled() ? 1 : 0;
}

void creduq_dataset_free(creduq_dataset* ds) { delete ds; }

creduq_status creduq_evaluate(const creduq_dataset* ds, const char* measures, int threads,
                              int hartley_k_max, creduq_report** out) {
  if (require(ds && measures && out, "dataset, measures and out must be non-NULL"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    creduq::RunOptions options;
    options.measures = creduq::parse_measures(measures);
    options.threads = threads;
    if (hartley_k_max > 0) options.hartley.k_max = static_cast<std::size_t>(hartley_k_max);
    *out = new creduq_report{creduq::run_measures(ds->data, options)};
  });
}

creduq_status creduq_report_load_jsonl(const char* path, creduq_report** out) {
  if (require(path && out, "path and out must be non-NULL")) return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    auto* handle = new creduq_report{};
    try {
      handle->result.rows = creduq::report_from_jsonl(path);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

int64_t creduq_report_size(const creduq_report* report) {
  return report ? static_cast<int64_t>(report->result.rows.size()) : 0;
}

creduq_status creduq_report_value(const creduq_report* report, int64_t row,
                                  const char* field, double* out) {
  if (require(report && field && out && row >= 0 &&
                  row < creduq_report_size(report),
              "report, field, out must be non-NULL and row in range"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  const creduq::ReportRow& r = report->result.rows[static_cast<std::size_t>(row)];
  const std::string name(field);
  const std::optional<double>* value = nullptr;
  if (name == "tu") value = &r.tu;
  else if (name == "au_lo") value = &r.au_lo;
  else if (name == "au_hi") value = &r.au_hi;
  else if (name == "eu") value = &r.eu;
  else if (name == "entropy_lower") value = &r.entropy_lower;
  else if (name == "entropy_upper") value = &r.entropy_upper;
  else if (name == "entropy_epistemic") value = &r.entropy_epistemic;
  else if (name == "gh") value = &r.gh;
  else if (name == "hartley_au") value = &r.hartley_au;
  if (!value || !value->has_value()) {
    return set_error(creduq::ErrorCode::invalid_argument,
                     "field \"" + name + "\" not present in this report");
  }
  *out = **value;
  return CREDUQ_OK;
}

const char* creduq_report_id(const creduq_report* report, int64_t row) {
  if (!report || row < 0 || row >= creduq_report_size(report)) return nullptr;
  return report->result.rows[static_cast<std::size_t>(row)].id.c_str();
}

creduq_status creduq_report_predicted(const creduq_report* report, int64_t row,
                                      int32_t* out) {
  if (require(report && out && row >= 0 && row < creduq_report_size(report),
              "report and out must be non-NULL and row in range"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  *out = static_cast<int32_t>(report->result.rows[static_cast<std::size_t>(row)].predicted);
  return CREDUQ_OK;
}

creduq_status creduq_report_label(const creduq_report* report, int64_t row, int32_t* out) {
  if (require(report && out && row >= 0 && row < creduq_report_size(report),
              "report and out must be non-NULL and row in range"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  const auto& label = report->result.rows[static_cast<std::size_t>(row)].label;
  if (!label) {
    return set_error(creduq::ErrorCode::missing_labels, "instance carries no true label");
  }
  *out = static_cast<int32_t>(*label);
  return CREDUQ_OK;
}

creduq_status creduq_report_timing(const creduq_report* report, const char* measure,
                                   double* seconds) {
  if (require(report && measure && seconds, "report, measure, seconds must be non-NULL"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  for (const auto& timing : report->result.timings) {
    if (timing.measure == measure) {
      *seconds = timing.seconds;
      return CREDUQ_OK;
    }
  }
  return set_error(creduq::ErrorCode::invalid_argument,
                   std::string("no timing recorded for \"") + measure + "\"");
}

creduq_status creduq_report_write_jsonl(const creduq_report* report, const char* path,
                                        const char* manifest_json) {
  if (require(report && path, "report and path must be non-NULL"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw creduq::Error(creduq::ErrorCode::parse, std::string("cannot write ") + path);
      out << creduq::report_to_jsonl(report->result.rows);
      if (!out.flush()) {
        throw creduq::Error(creduq::ErrorCode::parse, std::string("failed writing ") + path);
      }
    }
    if (manifest_json) {
      nlohmann::ordered_json manifest;
      try {
        manifest = nlohmann::ordered_json::parse(manifest_json);
      } catch (const nlohmann::json::exception& e) {
        throw creduq::Error(creduq::ErrorCode::invalid_argument,
                            std::string("manifest_json is not valid JSON: ") + e.what());
      }
      nlohmann::ordered_json timings;
      for (const auto& timing : report->result.timings) {
        timings[timing.measure] = timing.seconds;
      }
      manifest["timings_seconds"] = timings;
      manifest["threads_used"] = report->result.threads_used;
      const std::string manifest_path = std::string(path) + ".manifest.json";
      std::ofstream mf(manifest_path, std::ios::binary);
      if (!mf) {
        throw creduq::Error(creduq::ErrorCode::parse, "cannot write " + manifest_path);
      }
      mf << manifest.dump(2) << '\n';
    }
  });
}

void creduq_report_free(creduq_report* report) { delete report; }

creduq_status creduq_arc_from_report(const creduq_report* report, const char* component,
                                     const char* measure, int bins, creduq_arcurve** out) {
  if (require(report && component && measure && out,
              "report, component, measure, out must be non-NULL"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<creduq::ScoredInstance> instances;
    instances.reserve(report->result.rows.size());
    for (const auto& row : report->result.rows) {
      if (!row.label) {
        throw creduq::Error(creduq::ErrorCode::missing_labels,
                            "instance \"" + row.id + "\" carries no true label");
      }
      instances.push_back(
          {row.id, row.predicted, *row.label, creduq::score_key(row, component, measure)});
    }
    const auto order = creduq::rank_by_uncertainty(instances);
    std::vector<creduq::ScoredInstance> ranked;
    ranked.reserve(instances.size());
    for (std::size_t idx : order) ranked.push_back(instances[idx]);
    *out = new creduq_arcurve{
        creduq::accuracy_rejection_curve(ranked, static_cast<std::size_t>(bins))};
  });
}

creduq_status creduq_arc_compute(const double* keys, int32_t key_width,
                                 const int32_t* predicted, const int32_t* labels,
                                 int64_t n, int bins, creduq_arcurve** out) {
  if (require(keys && predicted && labels && out && key_width > 0 && n > 0,
              "keys, predicted, labels, out must be non-NULL; key_width and n positive"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<creduq::ScoredInstance> instances;
    instances.reserve(static_cast<std::size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
      creduq::ScoredInstance inst;
      inst.instance_id = std::to_string(i);
      inst.predicted_label = static_cast<std::size_t>(predicted[i]);
      inst.true_label = static_cast<std::size_t>(labels[i]);
      inst.score_key.assign(keys + i * key_width, keys + (i + 1) * key_width);
      instances.push_back(std::move(inst));
    }
    const auto order = creduq::rank_by_uncertainty(instances);
    std::vector<creduq::ScoredInstance> ranked;
    ranked.reserve(instances.size());
    for (std::size_t idx : order) ranked.push_back(instances[idx]);
    *out = new creduq_arcurve{
        creduq::accuracy_rejection_curve(ranked, static_cast<std::size_t>(bins))};
  });
}

int32_t creduq_arcurve_bins(const creduq_arcurve* curve) {
  return curve ? static_cast<int32_t>(curve->curve.bins.size()) : 0;
}

creduq_status creduq_arcurve_point(const creduq_arcurve* curve, int32_t bin,
                                   double* rejection, double* accuracy) {
  if (require(curve && rejection && accuracy && bin >= 0 &&
                  bin < creduq_arcurve_bins(curve),
              "curve, rejection, accuracy must be non-NULL and bin in range"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  const auto& point = curve->curve.bins[static_cast<std::size_t>(bin)];
  *rejection = point.rejection_fraction;
  *accuracy = point.accuracy;
  return CREDUQ_OK;
}

double creduq_arcurve_auc(const creduq_arcurve* curve) {
  return curve ? curve->curve.auc : 0.0;
}

double creduq_arcurve_mr(const creduq_arcurve* curve) {
  return curve ? curve->curve.mr : 0.0;
}

double creduq_arcurve_tie_fraction(const creduq_arcurve* curve) {
  return curve ? curve->curve.tie_fraction : 0.0;
}

creduq_status creduq_arcurve_write_csv(const creduq_arcurve* curve, const char* path) {
  if (require(curve && path, "curve and path must be non-NULL"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw creduq::Error(creduq::ErrorCode::parse, std::string("cannot write ") + path);
    out << "rejection_fraction,accuracy\n";
    char buf[160];
    for (const auto& point : curve->curve.bins) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", point.rejection_fraction,
                    point.accuracy);
      out << buf;
    }
    if (!out.flush()) {
      throw creduq::Error(creduq::ErrorCode::parse, std::string("failed writing ") + path);
    }
  });
}

void creduq_arcurve_free(creduq_arcurve* curve) { delete curve; }

creduq_status creduq_tv_evaluate(const double* probs, int32_t m, int32_t k, double out[4]) {
  if (require(probs && out && m > 0 && k > 1, "probs/out non-NULL, m >= 1, k >= 2"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<creduq::Distribution> generators;
    generators.reserve(static_cast<std::size_t>(m));
    for (int32_t j = 0; j < m; ++j) {
      generators.emplace_back(std::vector<double>(probs + j * k, probs + (j + 1) * k));
    }
    const creduq::UncertaintyRecord record =
        creduq::evaluate_tv(creduq::CredalSet(std::move(generators)));
    out[0] = record.tu;
    out[1] = record.au.lo;
    out[2] = record.au.hi;
    out[3] = record.eu;
  });
}

creduq_status creduq_entropy_evaluate(const double* probs, int32_t m, int32_t k,
                                      double* s_lower, double* s_upper, double* gap,
                                      int* gap_warning) {
  if (require(probs && s_lower && s_upper && gap && m > 0 && k > 1,
              "probs, s_lower, s_upper, gap non-NULL, m >= 1, k >= 2"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<creduq::Distribution> generators;
    generators.reserve(static_cast<std::size_t>(m));
    for (int32_t j = 0; j < m; ++j) {
      generators.emplace_back(std::vector<double>(probs + j * k, probs + (j + 1) * k));
    }
    const creduq::CredalSet cs(std::move(generators));
    const creduq::SolveReport upper = creduq::entropy_upper_report(cs);
    *s_lower = creduq::entropy_lower(cs);
    *s_upper = upper.optimum;
    *gap = upper.certified_gap;
    if (gap_warning) *gap_warning = upper.gap_warning ? 1 : 0;
  });
}

creduq_status creduq_hartley_evaluate(const double* probs, int32_t m, int32_t k,
                                      int32_t k_max, double* gh) {
  if (require(probs && gh && m > 0 && k > 1, "probs and gh non-NULL, m >= 1, k >= 2"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<creduq::Distribution> generators;
    generators.reserve(static_cast<std::size_t>(m));
    for (int32_t j = 0; j < m; ++j) {
      generators.emplace_back(std::vector<double>(probs + j * k, probs + (j + 1) * k));
    }
    creduq::HartleyOptions options;
    if (k_max > 0) options.k_max = static_cast<std::size_t>(k_max);
    *gh = creduq::generalized_hartley(creduq::CredalSet(std::move(generators)), options);
  });
}

creduq_status creduq_tv_distance(const double* p, const double* q, int32_t k, double* out) {
  if (require(p && q && out && k > 1, "p, q, out non-NULL, k >= 2"))
    return CREDUQ_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const creduq::Distribution dp(std::vector<double>(p, p + k));
    const creduq::Distribution dq(std::vector<double>(q, q + k));
    *out = creduq::tv_distance(dp, dq);
  });
}

void creduq_string_free(char* s) { delete[] s; }

}  // extern "C"
