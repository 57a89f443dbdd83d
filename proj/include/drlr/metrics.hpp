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

// Out-of-sample evaluation of a fitted linear classifier.
//
// CVaR at level alpha over M losses sorted in decreasing order l_(1) >= ...:
// with k = alpha * M, q = floor(k),
//
//   CVaR_alpha = ( sum_{j <= q} l_(j) + (k - q) * l_(q+1) ) / k
//
// i.e. the tail holds probability mass exactly alpha and the boundary order
// statistic carries the fractional weight.

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "drlr/model_core.hpp"

namespace drlr {

inline const std::vector<double>& DefaultAlphas() {
  static const std::vector<double> alphas = {0.05, 0.1, 0.25, 0.5, 1.0};
  return alphas;
}

struct EvalSummary {
  double mean_logloss = 0.0;
  double ccr = 0.0;
  std::map<double, double> cvar;
  std::optional<Vector> logloss_samples;
};

// Per-sample logloss of beta on `data`.
Vector Losses(ConstSpan beta, const Dataset& data);

// Requires a nonempty loss vector and alpha in (0, 1].
double Cvar(std::span<const double> losses, double alpha);

EvalSummary Evaluate(ConstSpan beta, const Dataset& test,
                     std::span<const double> alphas = DefaultAlphas(),
                     bool keep_samples = false);

// Fraction of test points whose classification matches the label.
double CorrectClassificationRate(ConstSpan beta, const Dataset& test);

// (threshold, fraction of losses <= threshold) for every threshold.
std::vector<std::pair<double, double>> LossCdf(ConstSpan beta,
                                               const Dataset& test,
                                               std::span<const double> grid);

}  // namespace drlr
