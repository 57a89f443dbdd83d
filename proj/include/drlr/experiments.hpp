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

// Seeded experiment protocols. Each returns CSV tables plus a JSON manifest
// that echoes the resolved configuration, the seeds and the wall-clock time.
//
//  1  coverage and CCR against the radius for several training sizes
//     (synthetic, beta_true = (10, 0, ..., 0)).
//  2  out-of-sample logloss distribution against the radius (synthetic,
//     beta_true drawn from the unit sphere in every run).
//  3  classical, regularized and robust fits on repeated random splits of a
//     user-supplied CSV, plus risk bounds for one robust fit.
//
// Grids used by the experiments always contain eps = 0.

#pragma once

#include "drlr/report.hpp"
#include "drlr/run_config.hpp"
#include "drlr/solver.hpp"

namespace drlr {

Report RunExperiment(int which, const RunConfig& config);
Report RunExperiment1(const RunConfig& config);
Report RunExperiment2(const RunConfig& config);
Report RunExperiment3(const RunConfig& config);

// Coverage calibration on the synthetic generator described by `config`.
Report RunCalibration(const RunConfig& config);

// Worst- and best-case risk of `model` over the epsilon grid, with the
// empirical risk on `train` and, when given, on `test`.
Report RunRiskSweep(const RunConfig& config, const TrainedModel& model,
                    const Dataset& train, const Dataset* test);

}  // namespace drlr
