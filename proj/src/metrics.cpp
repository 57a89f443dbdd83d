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

#include "drlr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace drlr {

Vector Losses(ConstSpan beta, const Dataset& data) {
  Require(beta.size() == data.dim(), ErrorCode::kDimensionMismatch,
          "evaluate: beta dimension does not match data");
  Vector out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[i] = Logloss(beta, data.x(i), data.y(i));
  }
  return out;
}

double Cvar(std::span<const double> losses, double alpha) {
  Require(!losses.empty(), ErrorCode::kInvalidArgument, "cvar: no losses");
  Require(alpha > 0.0 && alpha <= 1.0, ErrorCode::kInvalidArgument,
          "cvar: alpha must lie in (0, 1]");
  Vector sorted(losses.begin(), losses.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double m = static_cast<double>(sorted.size());
  if (alpha == 1.0) {
    return std::accumulate(sorted.begin(), sorted.end(), 0.0) / m;
  }
  const double k = alpha * m;
  const auto whole = static_cast<std::size_t>(std::floor(k));
  double acc = 0.0;
  for (std::size_t j = 0; j < whole; ++j) acc += sorted[j];
  const double frac = k - static_cast<double>(whole);
  if (frac > 0.0 && whole < sorted.size()) acc += frac * sorted[whole];
  return acc / k;
}

double CorrectClassificationRate(ConstSpan beta, const Dataset& test) {
  Require(beta.size() == test.dim(), ErrorCode::kDimensionMismatch,
          "evaluate: beta dimension does not match data");
  Require(test.size() > 0, ErrorCode::kInvalidArgument, "evaluate: empty test set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (Classify(beta, test.x(i)) == test.y(i)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

EvalSummary Evaluate(ConstSpan beta, const Dataset& test,
                     std::span<const double> alphas, bool keep_samples) {
  Vector losses = Losses(beta, test);
  EvalSummary out;
  out.mean_logloss = std::accumulate(losses.begin(), losses.end(), 0.0) /
                     static_cast<double>(losses.size());
  out.ccr = CorrectClassificationRate(beta, test);
  for (double a : alphas) out.cvar[a] = Cvar(losses, a);
  if (keep_samples) out.logloss_samples = std::move(losses);
  return out;
}

std::vector<std::pair<double, double>> LossCdf(ConstSpan beta,
                                               const Dataset& test,
                                               std::span<const double> grid) {
  Vector losses = Losses(beta, test);
  std::sort(losses.begin(), losses.end());
  const double m = static_cast<double>(losses.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double t : grid) {
    const auto below = std::upper_bound(losses.begin(), losses.end(), t);
    out.emplace_back(t, static_cast<double>(below - losses.begin()) / m);
  }
  return out;
}

}  // namespace drlr
