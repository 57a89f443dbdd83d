// Copyright 2026 The drlr Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drlr/drlr.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "drlr/calibration.hpp"
#include "drlr/data_lab.hpp"
#include "drlr/experiments.hpp"
#include "drlr/metrics.hpp"
#include "drlr/risk_bounds.hpp"
#include "drlr/run_config.hpp"
#include "drlr/serialize.hpp"
#include "drlr/solver.hpp"

struct drlr_config {
  drlr::RunConfig value;
};
struct drlr_dataset {
  drlr::Dataset value;
};
struct drlr_model {
  drlr::TrainedModel value;
};
struct drlr_report {
  drlr::Report value;
};

namespace {

thread_local std::string last_error;

drlr_status ToStatus(drlr::ErrorCode code) {
  switch (code) {
    case drlr::ErrorCode::kInvalidArgument:
      return DRLR_INVALID_ARGUMENT;
    case drlr::ErrorCode::kDimensionMismatch:
      return DRLR_DIMENSION_MISMATCH;
    case drlr::ErrorCode::kParse:
      return DRLR_PARSE_ERROR;
    case drlr::ErrorCode::kIo:
      return DRLR_IO_ERROR;
    case drlr::ErrorCode::kNumeric:
      return DRLR_NUMERIC_ERROR;
    case drlr::ErrorCode::kInternal:
      return DRLR_INTERNAL_ERROR;
  }
  return DRLR_INTERNAL_ERROR;
}

drlr_status SetError(drlr_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
drlr_status Guard(Body&& body) {
  try {
    return body();
  } catch (const drlr::Error& e) {
    return SetError(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(DRLR_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return SetError(DRLR_INTERNAL_ERROR, e.what());
  } catch (...) {
    return SetError(DRLR_INTERNAL_ERROR, "unknown error");
  }
}

char* Copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define DRLR_REQUIRE_ARG(cond, what)                         \
  do {                                                       \
    if (!(cond)) return SetError(DRLR_INVALID_ARGUMENT, what); \
  } while (0)

}  // namespace

extern "C" {

const char* drlr_version(void) { return "0.1.0"; }

const char* drlr_last_error(void) { return last_error.c_str(); }

const char* drlr_status_name(drlr_status status) {
  switch (status) {
    case DRLR_OK: return "ok";
    case DRLR_INVALID_ARGUMENT: return "invalid argument";
    case DRLR_DIMENSION_MISMATCH: return "dimension mismatch";
    case DRLR_PARSE_ERROR: return "parse error";
    case DRLR_IO_ERROR: return "i/o error";
    case DRLR_NUMERIC_ERROR: return "numeric error";
    case DRLR_INTERNAL_ERROR: return "internal error";
    case DRLR_NOT_CONVERGED: return "not converged";
  }
  return "unknown status";
}

void drlr_string_free(char* text) { std::free(text); }

drlr_status drlr_config_create(drlr_config** out) {
  DRLR_REQUIRE_ARG(out, "out is null");
  return Guard([&] {
    *out = new drlr_config{};
    return DRLR_OK;
  });
}

void drlr_config_destroy(drlr_config* config) { delete config; }

drlr_status drlr_config_set(drlr_config* config, const char* key,
                            const char* value) {
  DRLR_REQUIRE_ARG(config && key && value, "null argument");
  return Guard([&] {
    config->value.Set(key, value);
    return DRLR_OK;
  });
}

drlr_status drlr_config_load_file(drlr_config* config, const char* path) {
  DRLR_REQUIRE_ARG(config && path, "null argument");
  return Guard([&] {
    config->value.LoadFile(path);
    return DRLR_OK;
  });
}

drlr_status drlr_config_get(const drlr_config* config, const char* key,
                            char** out) {
  DRLR_REQUIRE_ARG(config && key && out, "null argument");
  return Guard([&] {
    *out = Copy(config->value.Get(key));
    return DRLR_OK;
  });
}

drlr_status drlr_config_to_json(const drlr_config* config, char** out) {
  DRLR_REQUIRE_ARG(config && out, "null argument");
  return Guard([&] {
    *out = Copy(config->value.ToJson());
    return DRLR_OK;
  });
}

size_t drlr_config_key_count(void) { return drlr::RunConfig::Keys().size(); }

const char* drlr_config_key_name(size_t index) {
  const auto& keys = drlr::RunConfig::Keys();
  return index < keys.size() ? keys[index].key.c_str() : nullptr;
}

const char* drlr_config_key_default(size_t index) {
  const auto& keys = drlr::RunConfig::Keys();
  return index < keys.size() ? keys[index].default_value.c_str() : nullptr;
}

const char* drlr_config_key_help(size_t index) {
  const auto& keys = drlr::RunConfig::Keys();
  return index < keys.size() ? keys[index].help.c_str() : nullptr;
}

drlr_status drlr_dataset_create(size_t dim, size_t count,
                                const double* features, const int* labels,
                                drlr_dataset** out) {
  DRLR_REQUIRE_ARG(out && features && labels, "null argument");
  return Guard([&] {
    std::vector<drlr::Label> y(count);
    for (size_t i = 0; i < count; ++i) y[i] = drlr::LabelFromInt(labels[i]);
    drlr::Vector x(features, features + dim * count);
    *out = new drlr_dataset{drlr::Dataset(dim, std::move(x), std::move(y))};
    return DRLR_OK;
  });
}

drlr_status drlr_dataset_load_csv(const char* path, const char* label_column,
                                  int has_header, const char* label_map,
                                  int standardize, drlr_dataset** out) {
  DRLR_REQUIRE_ARG(path && out, "null argument");
  return Guard([&] {
    drlr::CsvSchema schema;
    if (label_column) schema.label_column = label_column;
    schema.has_header = has_header != 0;
    if (label_map) schema.label_map = label_map;
    schema.standardize = standardize != 0;
    *out = new drlr_dataset{drlr::LoadCsv(path, schema)};
    return DRLR_OK;
  });
}

drlr_status drlr_dataset_generate(const drlr_config* config, size_t count,
                                  uint64_t stream, drlr_dataset** out) {
  DRLR_REQUIRE_ARG(config && out, "null argument");
  return Guard([&] {
    const drlr::SyntheticSpec spec = drlr::MakeSyntheticSpec(config->value);
    *out = new drlr_dataset{drlr::Generate(spec, count, stream)};
    return DRLR_OK;
  });
}

drlr_status drlr_dataset_from_config(const drlr_config* config,
                                     drlr_dataset** train,
                                     drlr_dataset** test) {
  DRLR_REQUIRE_ARG(config && train && test, "null argument");
  return Guard([&] {
    auto parts = drlr::LoadTrainTest(config->value);
    auto* a = new drlr_dataset{std::move(parts.first)};
    try {
      *test = new drlr_dataset{std::move(parts.second)};
    } catch (...) {
      delete a;
      throw;
    }
    *train = a;
    return DRLR_OK;
  });
}

drlr_status drlr_dataset_save_csv(const drlr_dataset* data, const char* path) {
  DRLR_REQUIRE_ARG(data && path, "null argument");
  return Guard([&] {
    drlr::SaveCsv(data->value, path);
    return DRLR_OK;
  });
}

size_t drlr_dataset_size(const drlr_dataset* data) {
  return data ? data->value.size() : 0;
}

size_t drlr_dataset_dim(const drlr_dataset* data) {
  return data ? data->value.dim() : 0;
}

void drlr_dataset_destroy(drlr_dataset* data) { delete data; }

drlr_status drlr_train(const drlr_dataset* train, const drlr_config* config,
                       drlr_model** out) {
  DRLR_REQUIRE_ARG(train && config && out, "null argument");
  return Guard([&] {
    const drlr::TrainConfig c =
        drlr::MakeTrainConfig(config->value, drlr::RunKind::kTrain);
    *out = new drlr_model{drlr::TrainDrlr(train->value, c)};
    if (!(*out)->value.converged) {
      return SetError(DRLR_NOT_CONVERGED,
                      "solver stopped at its iteration budget before meeting "
                      "the tolerance");
    }
    return DRLR_OK;
  });
}

void drlr_model_destroy(drlr_model* model) { delete model; }

int drlr_model_converged(const drlr_model* model) {
  return model && model->value.converged ? 1 : 0;
}

size_t drlr_model_dim(const drlr_model* model) {
  return model ? model->value.beta.size() : 0;
}

size_t drlr_model_beta(const drlr_model* model, double* out, size_t len) {
  if (!model || !out) return 0;
  const size_t k = std::min(len, model->value.beta.size());
  std::copy_n(model->value.beta.begin(), k, out);
  return k;
}

double drlr_model_lambda(const drlr_model* model) {
  return model ? model->value.lambda : 0.0;
}

double drlr_model_j_hat(const drlr_model* model) {
  return model ? model->value.j_hat : 0.0;
}

drlr_status drlr_model_mode(const drlr_model* model, char** out) {
  DRLR_REQUIRE_ARG(model && out, "null argument");
  return Guard([&] {
    *out = Copy(drlr::ModeName(model->value.config));
    return DRLR_OK;
  });
}

drlr_status drlr_model_to_json(const drlr_model* model,
                               const drlr_dataset* train, char** out) {
  DRLR_REQUIRE_ARG(model && out, "null argument");
  return Guard([&] {
    *out = Copy(drlr::ModelToJson(model->value, train ? &train->value : nullptr));
    return DRLR_OK;
  });
}

drlr_status drlr_model_from_json(const char* json, drlr_model** out) {
  DRLR_REQUIRE_ARG(json && out, "null argument");
  return Guard([&] {
    *out = new drlr_model{drlr::ModelFromJson(json)};
    return DRLR_OK;
  });
}

drlr_status drlr_model_save(const drlr_model* model, const drlr_dataset* train,
                            const char* path) {
  DRLR_REQUIRE_ARG(model && path, "null argument");
  return Guard([&] {
    drlr::SaveModel(model->value, path, train ? &train->value : nullptr);
    return DRLR_OK;
  });
}

drlr_status drlr_model_load(const char* path, drlr_model** out) {
  DRLR_REQUIRE_ARG(path && out, "null argument");
  return Guard([&] {
    *out = new drlr_model{drlr::LoadModel(path)};
    return DRLR_OK;
  });
}

drlr_status drlr_model_decompose(const drlr_model* model,
                                 const drlr_dataset* train,
                                 drlr_decomposition* out) {
  DRLR_REQUIRE_ARG(model && train && out, "null argument");
  return Guard([&] {
    const auto d = drlr::DecomposeWorstCaseLoss(model->value, train->value);
    *out = {d.reg_term, d.empirical_logloss, d.label_uncertainty_term};
    return DRLR_OK;
  });
}

drlr_status drlr_evaluate_json(const drlr_model* model,
                               const drlr_dataset* test, const double* alphas,
                               size_t n_alphas, char** out) {
  DRLR_REQUIRE_ARG(model && test && out, "null argument");
  DRLR_REQUIRE_ARG(alphas || n_alphas == 0, "alphas is null");
  return Guard([&] {
    std::vector<double> levels = alphas && n_alphas
                                     ? std::vector<double>(alphas, alphas + n_alphas)
                                     : drlr::DefaultAlphas();
    *out = Copy(drlr::EvalSummaryToJson(
        drlr::Evaluate(model->value.beta, test->value, levels)));
    return DRLR_OK;
  });
}

drlr_status drlr_risk_bounds_compute(const drlr_model* model,
                                     const drlr_dataset* train, double epsilon,
                                     drlr_risk_bounds* out) {
  DRLR_REQUIRE_ARG(model && train && out, "null argument");
  return Guard([&] {
    const auto b = drlr::ComputeRiskBounds(model->value.beta, train->value,
                                           epsilon, model->value.config.metric);
    *out = {b.risk_min, b.risk_max, b.lambda_star_min, b.lambda_star_max,
            b.epsilon, b.kappa};
    return DRLR_OK;
  });
}

drlr_status drlr_radius_formula(size_t sample_size, double a, double c1,
                                double c2, double c3, size_t dim, double eta,
                                double* out) {
  DRLR_REQUIRE_ARG(out, "null argument");
  return Guard([&] {
    drlr::RadiusFormulaParams p;
    p.a = a;
    p.c1 = c1;
    p.c2 = c2;
    p.c3 = c3;
    p.n = dim;
    p.eta = eta;
    *out = drlr::RadiusFormula(sample_size, p);
    return DRLR_OK;
  });
}

drlr_status drlr_calibrate(const drlr_config* config, drlr_report** out) {
  DRLR_REQUIRE_ARG(config && out, "null argument");
  return Guard([&] {
    *out = new drlr_report{drlr::RunCalibration(config->value)};
    return DRLR_OK;
  });
}

drlr_status drlr_experiment(int which, const drlr_config* config,
                            drlr_report** out) {
  DRLR_REQUIRE_ARG(config && out, "null argument");
  return Guard([&] {
    *out = new drlr_report{drlr::RunExperiment(which, config->value)};
    return DRLR_OK;
  });
}

drlr_status drlr_risk_sweep(const drlr_model* model, const drlr_dataset* train,
                            const drlr_dataset* test, const drlr_config* config,
                            drlr_report** out) {
  DRLR_REQUIRE_ARG(model && train && config && out, "null argument");
  return Guard([&] {
    *out = new drlr_report{drlr::RunRiskSweep(
        config->value, model->value, train->value, test ? &test->value : nullptr)};
    return DRLR_OK;
  });
}

void drlr_report_destroy(drlr_report* report) { delete report; }

size_t drlr_report_table_count(const drlr_report* report) {
  return report ? report->value.tables.size() : 0;
}

const char* drlr_report_table_name(const drlr_report* report, size_t index) {
  if (!report || index >= report->value.tables.size()) return nullptr;
  return report->value.tables[index].name.c_str();
}

drlr_status drlr_report_table_csv(const drlr_report* report, const char* name,
                                  char** out) {
  DRLR_REQUIRE_ARG(report && name && out, "null argument");
  return Guard([&] {
    const drlr::Table* t = report->value.Find(name);
    if (t == nullptr) {
      return SetError(DRLR_INVALID_ARGUMENT,
                      std::string("no table named '") + name + "'");
    }
    *out = Copy(t->ToCsv());
    return DRLR_OK;
  });
}

drlr_status drlr_report_manifest(const drlr_report* report, char** out) {
  DRLR_REQUIRE_ARG(report && out, "null argument");
  return Guard([&] {
    *out = Copy(report->value.manifest_json);
    return DRLR_OK;
  });
}

drlr_status drlr_report_write(const drlr_report* report, const char* dir) {
  DRLR_REQUIRE_ARG(report && dir, "null argument");
  return Guard([&] {
    report->value.WriteTo(dir);
    return DRLR_OK;
  });
}

}  // extern "C"
