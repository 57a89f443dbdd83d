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

// Declarative run configuration: a fixed set of string keys with defaults.
//
// File format, one setting per line:
//
//   # comment
//   key = value
//
// Unknown keys are rejected. Lists are comma-separated. Typed getters
// validate on access.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "drlr/calibration.hpp"
#include "drlr/data_lab.hpp"
#include "drlr/solver.hpp"

namespace drlr {

class RunConfig {
 public:
  RunConfig();

  // Known keys with their defaults and one-line help.
  struct KeyInfo {
    std::string key;
    std::string default_value;
    std::string help;
  };
  static const std::vector<KeyInfo>& Keys();

  void Set(const std::string& key, const std::string& value);
  void LoadFile(const std::string& path);
  void LoadText(const std::string& text, const std::string& source = "<text>");

  const std::string& Get(const std::string& key) const;
  double GetDouble(const std::string& key) const;
  // Accepts "inf".
  double GetExtendedDouble(const std::string& key) const;
  long long GetInt(const std::string& key) const;
  std::uint64_t GetUint64(const std::string& key) const;
  bool GetBool(const std::string& key) const;
  std::vector<double> GetDoubleList(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  // Flat JSON object of every key.
  std::string ToJson() const;

 private:
  std::map<std::string, std::string> values_;
};

// Norm used when metric.norm is "auto": l_inf for Experiment 1 and
// calibration, l2 for Experiment 2 and plain training, l1 for Experiment 3.
enum class RunKind { kTrain, kRisk, kCalibrate, kExperiment1, kExperiment2,
                     kExperiment3, kGenerate };
NormKind ResolveNorm(const RunConfig& config, RunKind kind);

// 30 log-spaced radii in [1e-4, 1].
std::vector<double> DefaultEpsilonGrid();
// epsilon_grid, or the default grid when it is "default".
std::vector<double> EpsilonGrid(const RunConfig& config);

TrainConfig MakeTrainConfig(const RunConfig& config, RunKind kind);
SyntheticSpec MakeSyntheticSpec(const RunConfig& config);
CsvSchema MakeCsvSchema(const RunConfig& config);

// Training and test sets described by the config:
//  * synthetic: synth.train_size and synth.test_size draws on streams 1 and 2
//    with seed `seed`;
//  * csv: data.test_path when given, otherwise a seeded split of data.path by
//    data.train_fraction. Standardization statistics come from the training
//    part.
std::pair<Dataset, Dataset> LoadTrainTest(const RunConfig& config);

}  // namespace drlr
