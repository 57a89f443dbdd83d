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

// drlr command-line front end. Talks to the library through the C API only.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drlr/drlr.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kNumeric = 2, kIo = 3 };

int ExitFor(drlr_status s) {
  switch (s) {
    case DRLR_OK:
      return kOk;
    case DRLR_NUMERIC_ERROR:
    case DRLR_NOT_CONVERGED:
      return kNumeric;
    case DRLR_IO_ERROR:
    case DRLR_PARSE_ERROR:
      return kIo;
    default:
      return kUsage;
  }
}

// Carries a failing status out of a subcommand.
struct Failure {
  drlr_status status;
  std::string message;
};

void Check(drlr_status s) {
  if (s != DRLR_OK) throw Failure{s, drlr_last_error()};
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using ConfigPtr =
    std::unique_ptr<drlr_config, Deleter<drlr_config, drlr_config_destroy>>;
using DatasetPtr =
    std::unique_ptr<drlr_dataset, Deleter<drlr_dataset, drlr_dataset_destroy>>;
using ModelPtr =
    std::unique_ptr<drlr_model, Deleter<drlr_model, drlr_model_destroy>>;
using ReportPtr =
    std::unique_ptr<drlr_report, Deleter<drlr_report, drlr_report_destroy>>;

std::string TakeString(char* s) {
  std::string out = s ? s : "";
  drlr_string_free(s);
  return out;
}

std::string ConfigValue(const drlr_config* c, const std::string& key) {
  char* out = nullptr;
  Check(drlr_config_get(c, key.c_str(), &out));
  return TakeString(out);
}

Json ConfigJson(const drlr_config* c) {
  char* out = nullptr;
  Check(drlr_config_to_json(c, &out));
  return Json::parse(TakeString(out));
}

std::filesystem::path OutDir(const drlr_config* c) {
  std::filesystem::path dir = ConfigValue(c, "out_dir");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Failure{DRLR_IO_ERROR,
                  "cannot create output directory '" + dir.string() +
                      "': " + ec.message()};
  }
  return dir;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure{DRLR_IO_ERROR, "cannot write '" + path.string() + "'"};
}

void WriteReport(const drlr_report* report, const drlr_config* c) {
  const auto dir = OutDir(c);
  Check(drlr_report_write(report, dir.string().c_str()));
  std::cout << "wrote";
  for (size_t i = 0; i < drlr_report_table_count(report); ++i) {
    std::cout << ' ' << drlr_report_table_name(report, i) << ".csv";
  }
  std::cout << " manifest.json to " << dir.string() << '\n';
}

std::pair<DatasetPtr, DatasetPtr> LoadData(const drlr_config* c) {
  drlr_dataset* train = nullptr;
  drlr_dataset* test = nullptr;
  Check(drlr_dataset_from_config(c, &train, &test));
  return {DatasetPtr(train), DatasetPtr(test)};
}

int CmdTrain(const drlr_config* c) {
  auto [train, test] = LoadData(c);
  drlr_model* raw = nullptr;
  const drlr_status status = drlr_train(train.get(), c, &raw);
  if (status != DRLR_OK && status != DRLR_NOT_CONVERGED) Check(status);
  ModelPtr model(raw);

  const auto dir = OutDir(c);
  char* text = nullptr;
  Check(drlr_model_to_json(model.get(), train.get(), &text));
  Json model_json = Json::parse(TakeString(text));
  Json run = {{"kind", "train"}, {"config", ConfigJson(c)}};
  model_json["run"] = run;
  WriteText(dir / "model.json", model_json.dump(2) + "\n");

  Check(drlr_evaluate_json(model.get(), test.get(), nullptr, 0, &text));
  Json eval = Json::parse(TakeString(text));
  Json eval_doc = {{"test_size", drlr_dataset_size(test.get())},
                   {"summary", eval},
                   {"run", run}};
  WriteText(dir / "eval.json", eval_doc.dump(2) + "\n");

  Check(drlr_model_mode(model.get(), &text));
  std::printf("mode=%s j_hat=%.17g lambda=%.17g converged=%d\n",
              TakeString(text).c_str(), drlr_model_j_hat(model.get()),
              drlr_model_lambda(model.get()),
              drlr_model_converged(model.get()));
  std::printf("test mean_logloss=%.17g ccr=%.17g\n",
              eval.value("mean_logloss", 0.0), eval.value("ccr", 0.0));
  std::cout << "wrote model.json eval.json to " << dir.string() << '\n';
  if (status == DRLR_NOT_CONVERGED) {
    std::cerr << "drlr: " << drlr_last_error() << '\n';
    return kNumeric;
  }
  return kOk;
}

int CmdRisk(const drlr_config* c) {
  const std::string path = ConfigValue(c, "model");
  if (path.empty()) {
    throw Failure{DRLR_INVALID_ARGUMENT,
                  "risk needs a trained model: pass --model <model.json>"};
  }
  drlr_model* raw = nullptr;
  Check(drlr_model_load(path.c_str(), &raw));
  ModelPtr model(raw);
  auto [train, test] = LoadData(c);
  drlr_report* report = nullptr;
  Check(drlr_risk_sweep(model.get(), train.get(), test.get(), c, &report));
  ReportPtr owned(report);
  WriteReport(report, c);
  return kOk;
}

int CmdExperiment(const drlr_config* c, int which) {
  drlr_report* report = nullptr;
  Check(drlr_experiment(which, c, &report));
  ReportPtr owned(report);
  WriteReport(report, c);
  return kOk;
}

int CmdCalibrate(const drlr_config* c) {
  drlr_report* report = nullptr;
  Check(drlr_calibrate(c, &report));
  ReportPtr owned(report);
  WriteReport(report, c);
  return kOk;
}

int CmdGenerate(const drlr_config* c) {
  auto [train, test] = LoadData(c);
  const auto dir = OutDir(c);
  Check(drlr_dataset_save_csv(train.get(), (dir / "train.csv").string().c_str()));
  Check(drlr_dataset_save_csv(test.get(), (dir / "test.csv").string().c_str()));
  Json manifest = {{"kind", "generate"},
                   {"train_size", drlr_dataset_size(train.get())},
                   {"test_size", drlr_dataset_size(test.get())},
                   {"dim", drlr_dataset_dim(train.get())},
                   {"config", ConfigJson(c)}};
  WriteText(dir / "manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote train.csv test.csv manifest.json to " << dir.string()
            << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein distributionally robust logistic regression"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", drlr_version());

  std::string config_file;
  std::vector<std::string> sets;
  app.add_option("--config", config_file, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--set", sets, "override as key=value (repeatable)");

  // One --<key> option per configuration key; a few get dashed aliases.
  const std::map<std::string, std::string> aliases = {
      {"out_dir", "--out-dir"}, {"cvar_alpha", "--cvar-alpha"}};
  std::map<std::string, std::string> overrides;
  std::vector<std::pair<std::string, CLI::Option*>> key_options;
  for (size_t i = 0; i < drlr_config_key_count(); ++i) {
    const std::string key = drlr_config_key_name(i);
    std::string names = "--" + key;
    if (auto it = aliases.find(key); it != aliases.end()) {
      names += "," + it->second;
    }
    std::string help = drlr_config_key_help(i);
    help += " [default: ";
    help += drlr_config_key_default(i);
    help += "]";
    auto* opt = app.add_option(names, overrides[key], help);
    opt->group(key == "seed" || key == "out_dir" || key == "threads"
                   ? "Global"
                   : "Configuration keys");
    key_options.emplace_back(key, opt);
  }

  auto* train = app.add_subcommand("train", "fit a model and evaluate it");
  auto* risk =
      app.add_subcommand("risk", "worst/best-case risk over the epsilon grid");
  int which = 0;
  auto* experiment =
      app.add_subcommand("experiment", "run experiment 1, 2 or 3");
  experiment->add_option("which", which, "experiment number")
      ->required()
      ->check(CLI::Range(1, 3));
  auto* calibrate =
      app.add_subcommand("calibrate", "choose epsilon by simulated coverage");
  auto* generate =
      app.add_subcommand("generate", "write synthetic train/test CSV files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    drlr_config* raw = nullptr;
    Check(drlr_config_create(&raw));
    ConfigPtr config(raw);
    if (!config_file.empty()) {
      const drlr_status s =
          drlr_config_load_file(config.get(), config_file.c_str());
      // A malformed config file is a configuration error, not an I/O one.
      if (s == DRLR_PARSE_ERROR) throw Failure{DRLR_INVALID_ARGUMENT, drlr_last_error()};
      Check(s);
    }
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw Failure{DRLR_INVALID_ARGUMENT,
                      "--set expects key=value, got '" + s + "'"};
      }
      Check(drlr_config_set(config.get(), s.substr(0, eq).c_str(),
                            s.substr(eq + 1).c_str()));
    }
    for (const auto& [key, opt] : key_options) {
      if (opt->count() > 0) {
        Check(drlr_config_set(config.get(), key.c_str(),
                              overrides[key].c_str()));
      }
    }

    if (*train) return CmdTrain(config.get());
    if (*risk) return CmdRisk(config.get());
    if (*experiment) return CmdExperiment(config.get(), which);
    if (*calibrate) return CmdCalibrate(config.get());
    if (*generate) return CmdGenerate(config.get());
    return kUsage;
  } catch (const Failure& f) {
    std::cerr << "drlr: " << drlr_status_name(f.status) << ": " << f.message
              << '\n';
    return ExitFor(f.status);
  } catch (const std::exception& e) {
    std::cerr << "drlr: " << e.what() << '\n';
    return kUsage;
  }
}
