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

#include "drlr/risk_bounds.hpp"

#include <algorithm>
#include <functional>

namespace drlr {
namespace {

void CheckInputs(ConstSpan beta, const Dataset& data, double epsilon,
                 const MetricParams& metric) {
  Require(beta.size() == data.dim(), ErrorCode::kDimensionMismatch,
          "risk: beta dimension does not match data");
  if (!(epsilon >= 0.0) || std::isinf(epsilon)) {
    Fail(ErrorCode::kInvalidArgument, "risk: epsilon must be finite and >= 0");
  }
  metric.Validate();
}

// Transport cost that flips sample i's indicator, or 0 when it is already
// counted (boundary samples included) and cannot be moved out.
Vector FlipCosts(ConstSpan beta, const Dataset& data,
                 const MetricParams& metric, bool best_case) {
  const double dual = DualNorm(beta, metric.norm);
  Vector costs(data.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double m = Sign(data.y(i)) * Dot(beta, data.x(i));
    const double good_side = best_case ? -m : m;
    if (good_side > 0.0) costs[i] = std::min(good_side / dual, metric.kappa);
  }
  return costs;
}

struct Reduced {
  RiskBound bound;
  std::size_t stuck = 0;  // samples with zero flip cost
};

// Exact minimum of g(lambda) = lambda eps + (1/N) sum_i max(0, 1 - lambda c_i)
// by a sweep over breakpoints 1 / c_i in increasing order.
Reduced MinimizeReduced(Vector costs, double epsilon) {
  const double count = static_cast<double>(costs.size());
  std::sort(costs.begin(), costs.end(), std::greater<>());
  const auto first_zero =
      std::find_if(costs.begin(), costs.end(), [](double c) { return c <= 0.0; });
  const std::size_t positive = first_zero - costs.begin();
  const double stuck = count - static_cast<double>(positive);

  RiskBound best{1.0, 0.0};  // g(0)
  double remaining_sum = 0.0;
  for (std::size_t k = 0; k < positive; ++k) remaining_sum += costs[k];
  double remaining = static_cast<double>(positive);

  double last_lambda = 0.0;
  std::size_t k = 0;
  while (k < positive) {
    const double lambda = 1.0 / costs[k];
    // Retire every sample whose breakpoint is (numerically) at this lambda.
    while (k < positive &&
           1.0 / costs[k] <= lambda * (1.0 + 1e-12)) {
      remaining_sum -= costs[k];
      remaining -= 1.0;
      ++k;
    }
    if (remaining <= 0.0) remaining_sum = 0.0;
    const double value =
        lambda * epsilon + (stuck + remaining - lambda * remaining_sum) / count;
    if (value < best.value) best = {value, lambda};
    last_lambda = lambda;
  }
  // Past the last breakpoint g grows with slope eps.
  const double tail_lambda = 2.0 * last_lambda + 1.0;
  const double tail = tail_lambda * epsilon + stuck / count;
  if (tail < best.value) best = {tail, tail_lambda};
  // With eps = 0, g is nonincreasing and its infimum is the exact count ratio.
  if (epsilon == 0.0) best = {stuck / count, tail_lambda};

  best.value = std::clamp(best.value, 0.0, 1.0);
  return {best, costs.size() - positive};
}

}  // namespace

RiskBound WorstCaseRisk(ConstSpan beta, const Dataset& data, double epsilon,
                        const MetricParams& metric) {
  CheckInputs(beta, data, epsilon, metric);
  // beta == 0: every sample sits on the boundary and counts as misclassified.
  if (DualNorm(beta, metric.norm) == 0.0) return {1.0, 0.0};
  return MinimizeReduced(FlipCosts(beta, data, metric, false), epsilon).bound;
}

RiskBound BestCaseRisk(ConstSpan beta, const Dataset& data, double epsilon,
                       const MetricParams& metric) {
  CheckInputs(beta, data, epsilon, metric);
  if (DualNorm(beta, metric.norm) == 0.0) return {0.0, 0.0};
  const Reduced inner =
      MinimizeReduced(FlipCosts(beta, data, metric, true), epsilon);
  if (epsilon == 0.0) {
    const std::size_t n = data.size();
    return {static_cast<double>(n - inner.stuck) / static_cast<double>(n),
            inner.bound.lambda};
  }
  return {1.0 - inner.bound.value, inner.bound.lambda};
}

RiskBounds ComputeRiskBounds(ConstSpan beta, const Dataset& data,
                             double epsilon, const MetricParams& metric) {
  const RiskBound upper = WorstCaseRisk(beta, data, epsilon, metric);
  const RiskBound lower = BestCaseRisk(beta, data, epsilon, metric);
  RiskBounds out;
  out.risk_max = upper.value;
  out.risk_min = std::min(lower.value, upper.value);
  out.lambda_star_max = upper.lambda;
  out.lambda_star_min = lower.lambda;
  out.epsilon = epsilon;
  out.kappa = metric.kappa;
  return out;
}

double EmpiricalRisk(ConstSpan beta, const Dataset& data) {
  Require(beta.size() == data.dim(), ErrorCode::kDimensionMismatch,
          "empirical risk: beta dimension does not match data");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (Sign(data.y(i)) * Dot(beta, data.x(i)) <= 0.0) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(data.size());
}

double ReducedRiskObjective(ConstSpan beta, const Dataset& data,
                            double epsilon, const MetricParams& metric,
                            bool best_case, double lambda) {
  CheckInputs(beta, data, epsilon, metric);
  Require(lambda >= 0.0, ErrorCode::kInvalidArgument, "lambda must be >= 0");
  if (DualNorm(beta, metric.norm) == 0.0) return lambda * epsilon + 1.0;
  const Vector costs = FlipCosts(beta, data, metric, best_case);
  double acc = 0.0;
  for (double c : costs) acc += std::max(0.0, 1.0 - lambda * c);
  return lambda * epsilon + acc / static_cast<double>(costs.size());
}

}  // namespace drlr
