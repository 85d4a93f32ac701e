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

// Command-line front end. Everything substantive goes through the C API of
// the creduq shared library; this file only parses arguments, shuttles
// files, and maps statuses to exit codes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "creduq.h"

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int fail(creduq_status status) {
  std::cerr << "error: " << creduq_last_error() << "\n";
  return static_cast<int>(status);
}

// --threads beats CREDAL_UQ_THREADS beats one-per-core.
int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CREDAL_UQ_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 0;  // library default: all cores
}

struct DatasetGuard {
  creduq_dataset* ds = nullptr;
  ~DatasetGuard() { creduq_dataset_free(ds); }
};

struct ReportGuard {
  creduq_report* report = nullptr;
  ~ReportGuard() { creduq_report_free(report); }
};

struct CurveGuard {
  creduq_arcurve* curve = nullptr;
  ~CurveGuard() { creduq_arcurve_free(curve); }
};

creduq_status load_dataset(const std::string& path, const std::string& format, bool strict,
                           creduq_dataset** out) {
  if (format == "csv") return creduq_dataset_load_csv(path.c_str(), strict, out);
  return creduq_dataset_load_jsonl(path.c_str(), strict, out);
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(std::stoi(token));
  }
  return out;
}

int cmd_validate(const std::string& input, const std::string& format, bool strict) {
  char* diagnostics = nullptr;
  const creduq_status status =
      creduq_validate_file(input.c_str(), format == "csv" ? 1 : 0, strict ? 1 : 0,
                           &diagnostics);
  if (diagnostics) {
    std::cerr << diagnostics;
    creduq_string_free(diagnostics);
  } else if (status != CREDUQ_OK) {
    std::cerr << "error: " << creduq_last_error() << "\n";
  }
  if (status == CREDUQ_OK) std::cerr << input << ": ok\n";
  return static_cast<int>(status);
}

int cmd_measure(const std::string& input, const std::string& format, bool strict,
                const std::string& measures, double alpha, bool has_alpha,
                const std::string& manifest_path, int inject_dirac, int threads,
                int hartley_k_max, const std::string& out_path) {
  DatasetGuard ds;
  if (const auto st = load_dataset(input, format, strict, &ds.ds)) return fail(st);
  if (!manifest_path.empty()) {
    if (const auto st = creduq_dataset_apply_manifest(ds.ds, manifest_path.c_str()))
      return fail(st);
  }
  if (has_alpha) {
    DatasetGuard filtered;
    if (const auto st = creduq_dataset_filter_likelihood(ds.ds, alpha, &filtered.ds))
      return fail(st);
    std::swap(ds.ds, filtered.ds);
  }
  if (inject_dirac >= 0) {
    DatasetGuard injected;
    if (const auto st = creduq_dataset_inject_dirac(ds.ds, inject_dirac, &injected.ds))
      return fail(st);
    std::swap(ds.ds, injected.ds);
  }

  ReportGuard report;
  if (const auto st = creduq_evaluate(ds.ds, measures.c_str(), resolve_threads(threads),
                                      hartley_k_max, &report.report)) {
    return fail(st);
  }

  nlohmann::ordered_json manifest;
  manifest["tool"] = "creduq";
  manifest["version"] = creduq_version();
  manifest["input"] = input;
  manifest["format"] = format;
  manifest["measures"] = measures;
  manifest["strict"] = strict;
  if (has_alpha) manifest["alpha"] = alpha;
  if (!manifest_path.empty()) manifest["model_manifest"] = manifest_path;
  if (inject_dirac >= 0) manifest["inject_dirac"] = inject_dirac;
  manifest["hartley_k_max"] = hartley_k_max > 0 ? hartley_k_max : 14;
  if (const auto st = creduq_report_write_jsonl(report.report, out_path.c_str(),
                                                manifest.dump().c_str())) {
    return fail(st);
  }
  std::cerr << "wrote " << out_path << " (" << creduq_report_size(report.report)
            << " rows) and " << out_path << ".manifest.json\n";
  return 0;
}

int cmd_arc(const std::string& input, bool from_input, const std::string& format,
            bool strict, std::string measures, bool measures_set,
            const std::string& component, const std::string& measure, int bins,
            int threads, const std::string& out_path) {
  ReportGuard report;
  if (from_input) {
    if (!measures_set) {
      // Compute just the family the ranking needs.
      measures = (measure == "tv") ? "tu,au,eu" : (measure == "entropy") ? "entropy"
                                                                         : "hartley";
    }
    DatasetGuard ds;
    if (const auto st = load_dataset(input, format, strict, &ds.ds)) return fail(st);
    if (const auto st = creduq_evaluate(ds.ds, measures.c_str(), resolve_threads(threads),
                                        0, &report.report)) {
      return fail(st);
    }
  } else {
    if (const auto st = creduq_report_load_jsonl(input.c_str(), &report.report))
      return fail(st);
  }

  CurveGuard curve;
  if (const auto st = creduq_arc_from_report(report.report, component.c_str(),
                                             measure.c_str(), bins, &curve.curve)) {
    return fail(st);
  }
  if (const auto st = creduq_arcurve_write_csv(curve.curve, out_path.c_str())) {
    return fail(st);
  }

  std::string summary = "{\"component\":\"" + component + "\",\"measure\":\"" + measure +
                        "\",\"bins\":" + std::to_string(creduq_arcurve_bins(curve.curve)) +
                        ",\"auc\":" + fmt17(creduq_arcurve_auc(curve.curve)) +
                        ",\"mr\":" + fmt17(creduq_arcurve_mr(curve.curve)) +
                        ",\"tie_fraction\":" + fmt17(creduq_arcurve_tie_fraction(curve.curve)) +
                        ",\"input\":" + nlohmann::json(input).dump() + "}";
  std::cout << summary << "\n";
  std::ofstream sf(out_path + ".summary.json", std::ios::binary);
  if (!sf || !(sf << summary << "\n").flush()) {
    std::cerr << "error: cannot write " << out_path << ".summary.json\n";
    return 2;
  }
  return 0;
}

int cmd_bench(const std::string& k_list, const std::string& m_list, int n, double noise,
              std::uint64_t seed, const std::string& measures, int threads) {
  std::cout << "measure,k,m,n,seconds\n";
  for (int k : parse_int_list(k_list)) {
    for (int m : parse_int_list(m_list)) {
      DatasetGuard ds;
      if (const auto st = creduq_dataset_synthetic(k, n, m, noise, seed, &ds.ds))
        return fail(st);

      // Hartley drops out of the grid above its cap, mirroring how results
      // tables mark it unavailable for large K.
      std::string selected;
      std::stringstream ss(measures);
      std::string token;
      while (std::getline(ss, token, ',')) {
        if (token == "hartley" && k > 14) {
          std::cout << "hartley," << k << ',' << m << ',' << n << ",--\n";
          continue;
        }
        if (!selected.empty()) selected += ',';
        selected += token;
      }
      if (selected.empty()) continue;

      ReportGuard report;
      if (const auto st = creduq_evaluate(ds.ds, selected.c_str(), resolve_threads(threads),
                                          0, &report.report)) {
        return fail(st);
      }
      std::stringstream names(selected);
      while (std::getline(names, token, ',')) {
        double seconds = 0.0;
        if (creduq_report_timing(report.report, token.c_str(), &seconds) == CREDUQ_OK) {
          std::cout << token << ',' << k << ',' << m << ',' << n << ',' << fmt17(seconds)
                    << "\n";
        }
      }
    }
  }
  return 0;
}

int cmd_synth(int k, long long n, int m, double noise, std::uint64_t seed,
              const std::string& out_path) {
  DatasetGuard ds;
  if (const auto st = creduq_dataset_synthetic(k, n, m, noise, seed, &ds.ds))
    return fail(st);
  if (const auto st = creduq_dataset_save_jsonl(ds.ds, out_path.c_str())) return fail(st);
  std::cerr << "wrote " << out_path << " (" << creduq_dataset_size(ds.ds) << " instances, M="
            << creduq_dataset_num_models(ds.ds) << ", K=" << creduq_dataset_num_classes(ds.ds)
            << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"creduq: uncertainty quantification for finitely generated credal sets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(creduq_version()));

  std::string input, format = "jsonl", out_path, manifest_path;
  std::string measures = "tu,au,eu";
  std::string component = "tu", measure = "tv";
  bool strict = false, from_input = false;
  double alpha = 0.0, noise = 0.5;
  int threads = 0, bins = 30, hartley_k_max = 0, inject_dirac = -1;
  int k = 10, m = 10;
  long long n = 1000;
  std::uint64_t seed = 0;
  std::string k_list = "10,100", m_list = "5,10";

  auto* validate = app.add_subcommand("validate", "check a dataset file, reporting every violation");
  validate->add_option("input", input, "dataset path")->required();
  validate->add_option("--format", format, "jsonl|csv")->check(CLI::IsMember({"jsonl", "csv"}));
  validate->add_flag("--strict", strict, "reject rows that would need renormalization");

  auto* measure_cmd = app.add_subcommand("measure", "score every instance and write a report");
  measure_cmd->add_option("input", input, "dataset path")->required();
  measure_cmd->add_option("--format", format, "jsonl|csv")->check(CLI::IsMember({"jsonl", "csv"}));
  measure_cmd->add_flag("--strict", strict, "reject rows that would need renormalization");
  measure_cmd->add_option("--measures", measures, "comma list of tu,au,eu,entropy,hartley");
  auto* alpha_opt = measure_cmd->add_option("--alpha", alpha,
                                            "relative-likelihood threshold in [0,1]");
  measure_cmd->add_option("--manifest", manifest_path,
                          "model manifest json (ids + likelihood ratios)");
  measure_cmd->add_option("--inject-dirac", inject_dirac,
                          "append a constant-class model predicting this label");
  measure_cmd->add_option("--threads", threads, "worker threads (default: all cores)");
  measure_cmd->add_option("--hartley-k-max", hartley_k_max, "class cap for hartley (default 14)");
  measure_cmd->add_option("--out", out_path, "report path")->required();

  auto* arc = app.add_subcommand("arc", "accuracy-rejection curve from a report or dataset");
  arc->add_option("input", input, "report path (or dataset path with --from-input)")->required();
  arc->add_flag("--from-input", from_input, "treat input as a dataset and score it first");
  arc->add_option("--format", format, "jsonl|csv dataset format for --from-input")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  arc->add_flag("--strict", strict, "strict validation for --from-input");
  auto* arc_measures =
      arc->add_option("--measures", measures, "measures to compute with --from-input");
  arc->add_option("--component", component, "tu|au|eu")
      ->check(CLI::IsMember({"tu", "au", "eu"}));
  arc->add_option("--measure", measure, "tv|entropy|hartley")
      ->check(CLI::IsMember({"tv", "entropy", "hartley"}));
  arc->add_option("--bins", bins, "bin count (default 30)");
  arc->add_option("--threads", threads, "worker threads for --from-input");
  arc->add_option("--out", out_path, "curve csv path")->required();

  auto* bench = app.add_subcommand("bench", "time each measure across a (K, M) grid");
  bench->add_option("--k", k_list, "comma list of class counts");
  bench->add_option("--m", m_list, "comma list of ensemble sizes");
  bench->add_option("--n", n, "instances per grid point");
  bench->add_option("--noise", noise, "synthetic perturbation scale");
  bench->add_option("--seed", seed, "rng seed");
  bench->add_option("--measures", measures, "measures to time");
  bench->add_option("--threads", threads, "worker threads");

  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset as jsonl");
  synth->add_option("--k", k, "class count")->required();
  synth->add_option("--n", n, "instance count")->required();
  synth->add_option("--m", m, "ensemble size")->required();
  synth->add_option("--noise", noise, "perturbation scale");
  synth->add_option("--seed", seed, "rng seed");
  synth->add_option("--out", out_path, "output jsonl path")->required();

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return cmd_validate(input, format, strict);
  if (measure_cmd->parsed()) {
    return cmd_measure(input, format, strict, measures, alpha, alpha_opt->count() > 0,
                       manifest_path, inject_dirac, threads, hartley_k_max, out_path);
  }
  if (arc->parsed()) {
    return cmd_arc(input, from_input, format, strict, measures, arc_measures->count() > 0,
                   component, measure, bins, threads, out_path);
  }
  if (bench->parsed()) return cmd_bench(k_list, m_list, static_cast<int>(n), noise, seed,
                                        measures, threads);
  if (synth->parsed()) return cmd_synth(k, n, m, noise, seed, out_path);
  return 1;
}
