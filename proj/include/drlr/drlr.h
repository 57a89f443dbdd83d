/* Copyright 2026 The drlr Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the drlr library.
 *
 * Objects are opaque handles created by drlr_*_create / load functions and
 * released with the matching drlr_*_destroy. Every fallible call returns a
 * drlr_status; on failure drlr_last_error() describes the problem (the text
 * is thread-local and valid until the next failing call on that thread).
 * Strings returned through char** are heap copies owned by the caller and
 * released with drlr_string_free.
 */

#ifndef DRLR_DRLR_H_
#define DRLR_DRLR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DRLR_API __declspec(dllexport)
#else
#define DRLR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drlr_status {
  DRLR_OK = 0,
  DRLR_INVALID_ARGUMENT = 1,
  DRLR_DIMENSION_MISMATCH = 2,
  DRLR_PARSE_ERROR = 3,
  DRLR_IO_ERROR = 4,
  DRLR_NUMERIC_ERROR = 5,
  DRLR_INTERNAL_ERROR = 6,
  /* Training finished without meeting its tolerance; the model is still
   * returned. */
  DRLR_NOT_CONVERGED = 7
} drlr_status;

typedef struct drlr_config drlr_config;
typedef struct drlr_dataset drlr_dataset;
typedef struct drlr_model drlr_model;
typedef struct drlr_report drlr_report;

typedef struct drlr_risk_bounds {
  double risk_min;
  double risk_max;
  double lambda_star_min;
  double lambda_star_max;
  double epsilon;
  double kappa;
} drlr_risk_bounds;

typedef struct drlr_decomposition {
  double reg_term;
  double empirical_logloss;
  double label_uncertainty_term;
} drlr_decomposition;

DRLR_API const char* drlr_version(void);
DRLR_API const char* drlr_last_error(void);
DRLR_API const char* drlr_status_name(drlr_status status);
DRLR_API void drlr_string_free(char* text);

/* Run configuration: string keys with defaults (see README). */
DRLR_API drlr_status drlr_config_create(drlr_config** out);
DRLR_API void drlr_config_destroy(drlr_config* config);
DRLR_API drlr_status drlr_config_set(drlr_config* config, const char* key,
                                     const char* value);
DRLR_API drlr_status drlr_config_load_file(drlr_config* config,
                                           const char* path);
DRLR_API drlr_status drlr_config_get(const drlr_config* config,
                                     const char* key, char** out);
DRLR_API drlr_status drlr_config_to_json(const drlr_config* config,
                                         char** out);
/* Number of known keys and the i-th key name, default and help text. */
DRLR_API size_t drlr_config_key_count(void);
DRLR_API const char* drlr_config_key_name(size_t index);
DRLR_API const char* drlr_config_key_default(size_t index);
DRLR_API const char* drlr_config_key_help(size_t index);

/* Datasets. `features` is row-major count x dim; labels are -1 or +1. */
DRLR_API drlr_status drlr_dataset_create(size_t dim, size_t count,
                                         const double* features,
                                         const int* labels,
                                         drlr_dataset** out);
DRLR_API drlr_status drlr_dataset_load_csv(const char* path,
                                           const char* label_column,
                                           int has_header,
                                           const char* label_map,
                                           int standardize,
                                           drlr_dataset** out);
/* Synthetic draw from the generator keys of `config` (synth.*, seed). */
DRLR_API drlr_status drlr_dataset_generate(const drlr_config* config,
                                           size_t count, uint64_t stream,
                                           drlr_dataset** out);
/* Training and test sets described by `config` (data.*, synth.*, seed). */
DRLR_API drlr_status drlr_dataset_from_config(const drlr_config* config,
                                              drlr_dataset** train,
                                              drlr_dataset** test);
DRLR_API drlr_status drlr_dataset_save_csv(const drlr_dataset* data,
                                           const char* path);
DRLR_API size_t drlr_dataset_size(const drlr_dataset* data);
DRLR_API size_t drlr_dataset_dim(const drlr_dataset* data);
DRLR_API void drlr_dataset_destroy(drlr_dataset* data);

/* Trains with epsilon, metric.* and solver.* from `config`. A model that
 * exhausted its budget is still stored in *out and DRLR_NOT_CONVERGED is
 * returned. */
DRLR_API drlr_status drlr_train(const drlr_dataset* train,
                                const drlr_config* config, drlr_model** out);
DRLR_API void drlr_model_destroy(drlr_model* model);
DRLR_API int drlr_model_converged(const drlr_model* model);
DRLR_API size_t drlr_model_dim(const drlr_model* model);
/* Copies min(len, dim) coefficients. */
DRLR_API size_t drlr_model_beta(const drlr_model* model, double* out,
                                size_t len);
DRLR_API double drlr_model_lambda(const drlr_model* model);
DRLR_API double drlr_model_j_hat(const drlr_model* model);
DRLR_API drlr_status drlr_model_mode(const drlr_model* model, char** out);
/* `train` may be NULL; with it the JSON carries the loss decomposition. */
DRLR_API drlr_status drlr_model_to_json(const drlr_model* model,
                                        const drlr_dataset* train, char** out);
DRLR_API drlr_status drlr_model_from_json(const char* json, drlr_model** out);
DRLR_API drlr_status drlr_model_save(const drlr_model* model,
                                     const drlr_dataset* train,
                                     const char* path);
DRLR_API drlr_status drlr_model_load(const char* path, drlr_model** out);
DRLR_API drlr_status drlr_model_decompose(const drlr_model* model,
                                          const drlr_dataset* train,
                                          drlr_decomposition* out);

/* Evaluation summary as JSON. alphas may be NULL for the default levels. */
DRLR_API drlr_status drlr_evaluate_json(const drlr_model* model,
                                        const drlr_dataset* test,
                                        const double* alphas, size_t n_alphas,
                                        char** out);
/* Risk bounds of the model's classifier with the model's metric. */
DRLR_API drlr_status drlr_risk_bounds_compute(const drlr_model* model,
                                              const drlr_dataset* train,
                                              double epsilon,
                                              drlr_risk_bounds* out);
DRLR_API drlr_status drlr_radius_formula(size_t sample_size, double a,
                                         double c1, double c2, double c3,
                                         size_t dim, double eta, double* out);

/* Reports: named CSV tables plus a JSON manifest. */
DRLR_API drlr_status drlr_calibrate(const drlr_config* config,
                                    drlr_report** out);
DRLR_API drlr_status drlr_experiment(int which, const drlr_config* config,
                                     drlr_report** out);
/* `test` may be NULL. */
DRLR_API drlr_status drlr_risk_sweep(const drlr_model* model,
                                     const drlr_dataset* train,
                                     const drlr_dataset* test,
                                     const drlr_config* config,
                                     drlr_report** out);
DRLR_API void drlr_report_destroy(drlr_report* report);
DRLR_API size_t drlr_report_table_count(const drlr_report* report);
/* Owned by the report. */
DRLR_API const char* drlr_report_table_name(const drlr_report* report,
                                            size_t index);
DRLR_API drlr_status drlr_report_table_csv(const drlr_report* report,
                                           const char* name, char** out);
DRLR_API drlr_status drlr_report_manifest(const drlr_report* report,
                                          char** out);
DRLR_API drlr_status drlr_report_write(const drlr_report* report,
                                       const char* dir);

#ifdef __cplusplus
}
#endif

#endif /* DRLR_DRLR_H_ */
