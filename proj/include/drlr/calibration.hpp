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

// Choosing the Wasserstein radius.
//
// RadiusFormula is the a-priori finite-sample rule for light-tailed data:
//
//   eps_N = (log(c1/eta) / (c2 N))^(1/a)   if N <  log(c1/eta) / (c2 c3)
//   eps_N = (log(c1/eta) / (c2 N))^(1/n)   otherwise
//
// with the constants supplied by the caller. CalibrateByCoverage measures
// instead how often the fitted worst-case loss bounds the out-of-sample
// logloss across simulated training sets.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drlr/data_lab.hpp"
#include "drlr/metrics.hpp"
#include "drlr/solver.hpp"

namespace drlr {

struct RadiusFormulaParams {
  double a = 2.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
  std::size_t n = 1;
  double eta = 0.05;

  // Also requires log(c1 / eta) > 0 so the radius is positive.
  void Validate() const;
};

// Sample size at which the large-N branch takes over.
double RadiusRegimeThreshold(const RadiusFormulaParams& params);
double RadiusFormula(std::size_t sample_size, const RadiusFormulaParams& params);

// One simulated trial: a fresh training set, a fresh test set and one fit per
// grid radius.
struct TrialOutcome {
  double epsilon = 0.0;
  double j_hat = 0.0;
  double test_logloss = 0.0;
  double ccr = 0.0;
  double beta_norm2 = 0.0;
  std::map<double, double> cvar;
  bool converged = true;
};

struct TrialPlan {
  SyntheticSpec generator;
  std::size_t train_size = 100;
  std::size_t test_size = 10000;
  std::vector<double> epsilon_grid;
  int runs = 100;
  std::uint64_t seed = 0;
  TrainConfig train;  // epsilon is overwritten per grid point
  std::vector<double> alphas = DefaultAlphas();
  int threads = 1;

  void Validate() const;
};

// outcomes[trial][grid index]. Trial t draws its data with seed
// DeriveSeed(plan.seed, t) (train on stream 1, test on stream 2), so the
// result does not depend on the thread count.
std::vector<std::vector<TrialOutcome>> SimulateTrials(const TrialPlan& plan);

// Whether the trial's test logloss stays within the certified bound J.
bool Covered(const TrialOutcome& outcome);

struct CoveragePoint {
  double epsilon = 0.0;
  double coverage = 0.0;           // fraction of trials with test logloss <= J
  double smoothed_coverage = 0.0;  // isotonic fit, nondecreasing in epsilon
  double mean_ccr = 0.0;
  double mean_logloss = 0.0;
  double mean_j_hat = 0.0;
  int nonconverged = 0;
};

struct CalibrationReport {
  std::vector<CoveragePoint> grid;
  std::optional<double> chosen_epsilon;
  double target_confidence = 0.95;
  // Largest decrease of raw coverage along the grid, and the tolerance it
  // is held to: 3 sqrt(p (1 - p) / runs) at the pooled level p.
  double worst_drop = 0.0;
  double drop_tolerance = 0.0;
  bool monotone = true;
  std::string diagnostic;
  std::size_t train_size = 0;
  int runs = 0;
  std::uint64_t seed = 0;
};

// Nondecreasing least-squares fit with equal weights.
std::vector<double> IsotonicIncreasing(const std::vector<double>& values);

// `eta_target` is the allowed failure rate: the chosen radius is the smallest
// grid point with coverage >= 1 - eta_target.
CalibrationReport CalibrateByCoverage(const TrialPlan& plan, double eta_target);
CalibrationReport SummarizeCoverage(
    const TrialPlan& plan, double eta_target,
    const std::vector<std::vector<TrialOutcome>>& outcomes);

std::string CalibrationReportJson(const CalibrationReport& report);
// Columns: epsilon,coverage,mean_ccr,mean_logloss (plus smoothed coverage
// and mean J).
std::string CalibrationReportCsv(const CalibrationReport& report);

}  // namespace drlr
