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

#include "creduq/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace creduq {

namespace {

using nlohmann::json;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static contiguous partition; slot i of the output is always written by
// the worker owning index i, so the merge order never depends on timing.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n == 1) {
    body(0, n);
    return;
  }
  const std::size_t used = std::min(workers, n);
  const std::size_t chunk = (n + used - 1) / used;
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t t = 0; t < used; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<Measure> parse_measures(const std::string& csv) {
  std::vector<Measure> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token == "tu") {
      out.push_back(Measure::tu);
    } else if (token == "au") {
      out.push_back(Measure::au);
    } else if (token == "eu") {
      out.push_back(Measure::eu);
    } else if (token == "entropy") {
      out.push_back(Measure::entropy);
    } else if (token == "hartley") {
      out.push_back(Measure::hartley);
    } else {
      throw Error(ErrorCode::invalid_argument,
                  "unknown measure \"" + token + "\" (valid: tu,au,eu,entropy,hartley)");
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::invalid_argument, "no measures selected");
  }
  return out;
}

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::tu: return "tu";
    case Measure::au: return "au";
    case Measure::eu: return "eu";
    case Measure::entropy: return "entropy";
    case Measure::hartley: return "hartley";
  }
  return "?";
}

RunResult run_measures(const PredictionDataset& ds, const RunOptions& options) {
  if (ds.instances.empty()) {
    throw Error(ErrorCode::invalid_argument, "dataset has no instances");
  }
  const std::size_t n = ds.instances.size();
  const int threads = resolve_threads(options.threads);

  RunResult result;
  result.threads_used = threads;
  result.rows.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.rows[i].id = ds.instances[i].id;
    result.rows[i].label = ds.instances[i].label;
  }

  // Hartley availability is checked up front so the failure happens before
  // any work, with the capability code the CLI maps to its exit status.
  const bool want_hartley = std::find(options.measures.begin(), options.measures.end(),
                                      Measure::hartley) != options.measures.end();
  if (want_hartley && ds.dimension() > options.hartley.k_max) {
    throw Error(ErrorCode::capability,
                "hartley requested with K=" + std::to_string(ds.dimension()) +
                    " above the cap " + std::to_string(options.hartley.k_max) +
                    "; the measure is reported as unavailable at this K");
  }

  auto timed_pass = [&](const std::string& name,
                        const std::function<void(std::size_t)>& per_instance) {
    const auto start = std::chrono::steady_clock::now();
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) per_instance(i);
    });
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    result.timings.push_back({name, elapsed.count()});
  };

  timed_pass("predict", [&](std::size_t i) {
    result.rows[i].predicted = credal_predict(ds.instances[i].credal);
  });

  // Canonical pass order keeps reports and timings stable no matter how the
  // selection string was spelled.
  const Measure order[] = {Measure::tu, Measure::au, Measure::eu, Measure::entropy,
                           Measure::hartley};
  for (Measure m : order) {
    if (std::find(options.measures.begin(), options.measures.end(), m) ==
        options.measures.end()) {
      continue;
    }
    switch (m) {
      case Measure::tu:
        timed_pass("tu", [&](std::size_t i) {
          result.rows[i].tu = tu_tv(ds.instances[i].credal);
        });
        break;
      case Measure::au:
        timed_pass("au", [&](std::size_t i) {
          const CredalSet& cs = ds.instances[i].credal;
          const double cap = 1.0 - 1.0 / static_cast<double>(cs.dimension());
          const double lo = std::clamp(au_tv_lower(cs), 0.0, cap);
          result.rows[i].au_lo = lo;
          result.rows[i].au_hi = std::clamp(au_tv_upper(cs), lo, cap);
        });
        break;
      case Measure::eu:
        timed_pass("eu", [&](std::size_t i) {
          result.rows[i].eu = eu_tv(ds.instances[i].credal);
        });
        break;
      case Measure::entropy:
        timed_pass("entropy", [&](std::size_t i) {
          const CredalSet& cs = ds.instances[i].credal;
          const SolveReport upper = entropy_upper_report(cs, options.entropy);
          const double lower = entropy_lower(cs);
          result.rows[i].entropy_lower = lower;
          result.rows[i].entropy_upper = upper.optimum;
          result.rows[i].entropy_epistemic = upper.optimum - lower;
          result.rows[i].entropy_warning = upper.gap_warning;
        });
        break;
      case Measure::hartley:
        timed_pass("hartley", [&](std::size_t i) {
          const CredalSet& cs = ds.instances[i].credal;
          const double gh = generalized_hartley(cs, options.hartley);
          if (gh < -1e-9) {
            // Lower envelopes of finitely generated sets are not always
            // 2-monotone; surface the soft-check violation instead of
            // silently clamping.
            std::cerr << "warning: GH = " << gh << " < 0 for instance "
                      << ds.instances[i].id << "\n";
          }
          result.rows[i].gh = gh;
          result.rows[i].hartley_au =
              entropy_upper(cs, options.entropy) - gh;
        });
        break;
    }
  }
  return result;
}

std::vector<double> score_key(const ReportRow& row, const std::string& component,
                              const std::string& measure) {
  auto need = [&](const std::optional<double>& field, const char* name) {
    if (!field) {
      throw Error(ErrorCode::invalid_argument,
                  std::string("report row lacks field \"") + name +
                      "\" required for component=" + component + " measure=" + measure);
    }
    return *field;
  };
  if (component == "tu") {
    if (measure == "tv") return {need(row.tu, "tu")};
    if (measure == "entropy") return {need(row.entropy_upper, "entropy_upper")};
  } else if (component == "au") {
    if (measure == "tv") return {need(row.au_lo, "au_lo"), need(row.au_hi, "au_hi")};
    if (measure == "entropy") return {need(row.entropy_lower, "entropy_lower")};
    if (measure == "hartley") return {need(row.hartley_au, "hartley_au")};
  } else if (component == "eu") {
    if (measure == "tv") return {need(row.eu, "eu")};
    if (measure == "entropy") return {need(row.entropy_epistemic, "entropy_epistemic")};
    if (measure == "hartley") return {need(row.gh, "gh")};
  }
  throw Error(ErrorCode::invalid_argument,
              "unsupported ranking: component=" + component + " measure=" + measure +
                  " (components tu|au|eu; measures tv|entropy|hartley)");
}

std::string report_to_jsonl(const std::vector<ReportRow>& rows) {
  std::string out;
  for (const ReportRow& row : rows) {
    out += "{\"id\":";
    out += json(row.id).dump();
    if (row.label) {
      out += ",\"label\":";
      out += std::to_string(*row.label);
    }
    out += ",\"predicted\":";
    out += std::to_string(row.predicted);
    auto emit = [&](const char* name, const std::optional<double>& v) {
      if (!v) return;
      out += ",\"";
      out += name;
      out += "\":";
      out += fmt17(*v);
    };
    emit("tu", row.tu);
    emit("au_lo", row.au_lo);
    emit("au_hi", row.au_hi);
    emit("eu", row.eu);
    emit("entropy_lower", row.entropy_lower);
    emit("entropy_upper", row.entropy_upper);
    emit("entropy_epistemic", row.entropy_epistemic);
    if (row.entropy_upper) {
      out += ",\"entropy_warning\":";
      out += row.entropy_warning ? "true" : "false";
    }
    emit("gh", row.gh);
    emit("hartley_au", row.hartley_au);
    out += "}\n";
  }
  return out;
}

std::vector<ReportRow> report_from_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::parse, "cannot open " + path);
  }
  std::vector<ReportRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::parse,
                  "line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("id") || !doc.contains("predicted")) {
      throw Error(ErrorCode::parse, "line " + std::to_string(line_no) +
                                        ": not a report row (needs id and predicted)");
    }
    ReportRow row;
    row.id = doc["id"].get<std::string>();
    row.predicted = doc["predicted"].get<std::size_t>();
    if (doc.contains("label") && !doc["label"].is_null()) {
      row.label = doc["label"].get<std::size_t>();
    }
    auto grab = [&](const char* name, std::optional<double>& field) {
      if (doc.contains(name)) field = doc[name].get<double>();
    };
    grab("tu", row.tu);
    grab("au_lo", row.au_lo);
    grab("au_hi", row.au_hi);
    grab("eu", row.eu);
    grab("entropy_lower", row.entropy_lower);
    grab("entropy_upper", row.entropy_upper);
    grab("entropy_epistemic", row.entropy_epistemic);
    grab("gh", row.gh);
    grab("hartley_au", row.hartley_au);
    if (doc.contains("entropy_warning")) {
      row.entropy_warning = doc["entropy_warning"].get<bool>();
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::parse, "empty report: " + path);
  }
  return rows;
}

}  // namespace creduq
