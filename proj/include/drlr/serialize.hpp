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

// JSON forms of models and evaluation summaries. Doubles are written with
// round-trip precision, so a model read back is bit-identical. An infinite
// kappa is written as the string "inf".

#pragma once

#include <string>

#include "drlr/metrics.hpp"
#include "drlr/solver.hpp"

namespace drlr {

// With `train` the loss decomposition is included.
std::string ModelToJson(const TrainedModel& model,
                        const Dataset* train = nullptr);
TrainedModel ModelFromJson(const std::string& text);

void SaveModel(const TrainedModel& model, const std::string& path,
               const Dataset* train = nullptr);
TrainedModel LoadModel(const std::string& path);

std::string EvalSummaryToJson(const EvalSummary& summary);

std::string TrainConfigToJson(const TrainConfig& config);

}  // namespace drlr
