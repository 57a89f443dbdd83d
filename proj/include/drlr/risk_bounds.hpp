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

// Worst- and best-case misclassification risk of a fixed linear classifier
// over a Wasserstein ball around the training sample.
//
// Both are linear programs in (lambda, s, r, t). For fixed lambda the per
// sample variables separate and have closed-form optima, leaving
//
//   g(lambda) = lambda * eps + (1/N) sum_i max(0, 1 - lambda * c_i)
//
// where c_i is the cheapest transport cost that changes sample i's
// indicator: min(m_i / ||beta||_*, kappa) for a sample on the "good" side
// with margin m_i = y_i <beta, x_i>, and 0 (never fixable) otherwise. g is
// convex piecewise linear with breakpoints at 1 / c_i, so its minimum over
// lambda >= 0 is attained at 0 or at a breakpoint and is found exactly.

#pragma once

#include <vector>

#include "drlr/model_core.hpp"

namespace drlr {

struct RiskBound {
  double value = 0.0;
  double lambda = 0.0;
};

struct RiskBounds {
  double risk_min = 0.0;
  double risk_max = 1.0;
  double lambda_star_min = 0.0;
  double lambda_star_max = 0.0;
  double epsilon = 0.0;
  double kappa = 1.0;
};

// sup over the ball of P[y <beta, x> <= 0].
RiskBound WorstCaseRisk(ConstSpan beta, const Dataset& data, double epsilon,
                        const MetricParams& metric);
// inf over the ball of P[y <beta, x> < 0].
RiskBound BestCaseRisk(ConstSpan beta, const Dataset& data, double epsilon,
                       const MetricParams& metric);
RiskBounds ComputeRiskBounds(ConstSpan beta, const Dataset& data,
                             double epsilon, const MetricParams& metric);

// Fraction of samples with y <beta, x> <= 0.
double EmpiricalRisk(ConstSpan beta, const Dataset& data);

// The reduced one-dimensional objective g(lambda) for the worst case
// (best_case == false) or for the minimization inside the best case.
// Exposed for certificate checks.
double ReducedRiskObjective(ConstSpan beta, const Dataset& data,
                            double epsilon, const MetricParams& metric,
                            bool best_case, double lambda);

}  // namespace drlr
