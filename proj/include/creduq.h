/*
 * Copyright 2026 the creduq authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the creduq shared library.
 *
 * All functions return a creduq_status; 0 is success. On failure a
 * human-readable message is available from creduq_last_error() (thread
 * local). Objects returned through out-parameters are owned by the caller
 * and released with the matching *_free function. Probability matrices are
 * passed row-major with one generator per row (M rows of K entries).
 */

#ifndef CREDUQ_H
#define CREDUQ_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#define CREDUQ_API __declspec(dllexport)
#else
#define CREDUQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum creduq_status {
  CREDUQ_OK = 0,
  CREDUQ_ERR_PARSE = 2,
  CREDUQ_ERR_SHAPE = 3,
  CREDUQ_ERR_SIMPLEX = 4,
  CREDUQ_ERR_CAPABILITY = 5, /* e.g. Hartley requested above its K cap */
  CREDUQ_ERR_MISSING_LABELS = 6,
  CREDUQ_ERR_INVALID_ARGUMENT = 7,
  CREDUQ_ERR_SOLVER = 8,
  CREDUQ_ERR_INTERNAL = 9
} creduq_status;

typedef struct creduq_dataset creduq_dataset;
typedef struct creduq_report creduq_report;
typedef struct creduq_arcurve creduq_arcurve;

CREDUQ_API const char* creduq_version(void);

/* Message of the most recent failure on this thread; never NULL. */
CREDUQ_API const char* creduq_last_error(void);

/* ------------------------------------------------------------------ */
/* Datasets                                                            */
/* ------------------------------------------------------------------ */

/* strict != 0 rejects rows needing renormalization instead of fixing them. */
CREDUQ_API creduq_status creduq_dataset_load_jsonl(const char* path, int strict,
                                                   creduq_dataset** out);
CREDUQ_API creduq_status creduq_dataset_load_csv(const char* path, int strict,
                                                 creduq_dataset** out);

/* Scans a file and returns every violation as newline-separated text via
 * *diagnostics (free with creduq_string_free; NULL when clean). The return
 * value is the worst violation category, CREDUQ_OK when clean. */
CREDUQ_API creduq_status creduq_validate_file(const char* path, int csv, int strict,
                                              char** diagnostics);

/* Attaches {"model_ids": [...], "likelihood_ratios": [...]} to a dataset. */
CREDUQ_API creduq_status creduq_dataset_apply_manifest(creduq_dataset* ds,
                                                       const char* path);

CREDUQ_API creduq_status creduq_dataset_filter_likelihood(const creduq_dataset* ds,
                                                          double alpha,
                                                          creduq_dataset** out);

CREDUQ_API creduq_status creduq_dataset_inject_dirac(const creduq_dataset* ds,
                                                     int32_t label,
                                                     creduq_dataset** out);

CREDUQ_API creduq_status creduq_dataset_save_jsonl(const creduq_dataset* ds,
                                                   const char* path);

CREDUQ_API creduq_status creduq_dataset_synthetic(int32_t k, int64_t n, int32_t m,
                                                  double noise, uint64_t seed,
                                                  creduq_dataset** out);

CREDUQ_API int64_t creduq_dataset_size(const creduq_dataset* ds);
CREDUQ_API int32_t creduq_dataset_num_models(const creduq_dataset* ds);
CREDUQ_API int32_t creduq_dataset_num_classes(const creduq_dataset* ds);
CREDUQ_API int creduq_dataset_all_labeled(const creduq_dataset* ds);

CREDUQ_API void creduq_dataset_free(creduq_dataset* ds);

/* ------------------------------------------------------------------ */
/* Measure evaluation                                                  */
/* ------------------------------------------------------------------ */

/* measures: comma-separated subset of "tu,au,eu,entropy,hartley".
 * threads <= 0 picks one worker per core. hartley_k_max <= 0 keeps the
 * default cap of 14. */
CREDUQ_API creduq_status creduq_evaluate(const creduq_dataset* ds, const char* measures,
                                         int threads, int hartley_k_max,
                                         creduq_report** out);

/* Reads rows previously written by creduq_report_write_jsonl. */
CREDUQ_API creduq_status creduq_report_load_jsonl(const char* path, creduq_report** out);

CREDUQ_API int64_t creduq_report_size(const creduq_report* report);

/* Fields: "tu", "au_lo", "au_hi", "eu", "entropy_lower", "entropy_upper",
 * "entropy_epistemic", "gh", "hartley_au". Missing fields return
 * CREDUQ_ERR_INVALID_ARGUMENT. */
CREDUQ_API creduq_status creduq_report_value(const creduq_report* report, int64_t row,
                                             const char* field, double* out);
CREDUQ_API const char* creduq_report_id(const creduq_report* report, int64_t row);
CREDUQ_API creduq_status creduq_report_predicted(const creduq_report* report,
                                                 int64_t row, int32_t* out);
/* CREDUQ_ERR_MISSING_LABELS when the instance carries no true label. */
CREDUQ_API creduq_status creduq_report_label(const creduq_report* report, int64_t row,
                                             int32_t* out);
/* Whole-set wall-clock seconds for one measure pass ("tu", ..., "predict"). */
CREDUQ_API creduq_status creduq_report_timing(const creduq_report* report,
                                              const char* measure, double* seconds);

/* Writes rows as deterministic JSONL; when manifest_json is non-NULL it is
 * augmented with the per-measure timings and written next to the report as
 * "<path>.manifest.json". */
CREDUQ_API creduq_status creduq_report_write_jsonl(const creduq_report* report,
                                                   const char* path,
                                                   const char* manifest_json);

CREDUQ_API void creduq_report_free(creduq_report* report);

/* ------------------------------------------------------------------ */
/* Accuracy-rejection curves                                           */
/* ------------------------------------------------------------------ */

/* Ranks rows of a report by the given component ("tu"|"au"|"eu") and
 * measure family ("tv"|"entropy"|"hartley"), then bins the accuracy of
 * predicted vs true labels. Every row must carry a true label. */
CREDUQ_API creduq_status creduq_arc_from_report(const creduq_report* report,
                                                const char* component,
                                                const char* measure, int bins,
                                                creduq_arcurve** out);

/* Same harness on raw arrays: keys is n x key_width (row-major score
 * tuples, ranked descending lexicographically). */
CREDUQ_API creduq_status creduq_arc_compute(const double* keys, int32_t key_width,
                                            const int32_t* predicted,
                                            const int32_t* labels, int64_t n,
                                            int bins, creduq_arcurve** out);

CREDUQ_API int32_t creduq_arcurve_bins(const creduq_arcurve* curve);
CREDUQ_API creduq_status creduq_arcurve_point(const creduq_arcurve* curve, int32_t bin,
                                              double* rejection, double* accuracy);
CREDUQ_API double creduq_arcurve_auc(const creduq_arcurve* curve);
CREDUQ_API double creduq_arcurve_mr(const creduq_arcurve* curve);
CREDUQ_API double creduq_arcurve_tie_fraction(const creduq_arcurve* curve);

/* CSV with header "rejection_fraction,accuracy". */
CREDUQ_API creduq_status creduq_arcurve_write_csv(const creduq_arcurve* curve,
                                                  const char* path);

CREDUQ_API void creduq_arcurve_free(creduq_arcurve* curve);

/* ------------------------------------------------------------------ */
/* Direct measure entry points on raw arrays                           */
/* ------------------------------------------------------------------ */

/* out = { tu, au_lo, au_hi, eu }. */
CREDUQ_API creduq_status creduq_tv_evaluate(const double* probs, int32_t m, int32_t k,
                                            double out[4]);

/* gap_warning may be NULL. */
CREDUQ_API creduq_status creduq_entropy_evaluate(const double* probs, int32_t m,
                                                 int32_t k, double* s_lower,
                                                 double* s_upper, double* gap,
                                                 int* gap_warning);

CREDUQ_API creduq_status creduq_hartley_evaluate(const double* probs, int32_t m,
                                                 int32_t k, int32_t k_max, double* gh);

CREDUQ_API creduq_status creduq_tv_distance(const double* p, const double* q, int32_t k,
                                            double* out);

CREDUQ_API void creduq_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CREDUQ_H */
