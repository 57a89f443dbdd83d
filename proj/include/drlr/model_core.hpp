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

// Domain types and the scalar/vector primitives shared by the solver, the
// risk certifier and the evaluation code.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drlr/error.hpp"

namespace drlr {

using Vector = std::vector<double>;
using ConstSpan = std::span<const double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Binary label. Stored as +/-1 only; 0/1 encodings are converted on ingest.
enum class Label : int { kNegative = -1, kPositive = 1 };

inline double Sign(Label y) { return static_cast<double>(static_cast<int>(y)); }
inline Label Flip(Label y) {
  return y == Label::kPositive ? Label::kNegative : Label::kPositive;
}
Label LabelFromInt(int value);

// Norm on the feature space used by the transport cost. The solver and the
// risk certifier only ever need its dual.
enum class NormKind { kL1, kL2, kLinf };

NormKind Dual(NormKind norm);
std::string_view ToString(NormKind norm);
NormKind ParseNormKind(std::string_view text);

// Parameters of the feature-label transport cost
//   d((x, y), (x', y')) = ||x - x'|| + kappa * |y - y'| / 2.
// kappa == +inf forbids moving mass across labels.
struct MetricParams {
  NormKind norm = NormKind::kL2;
  double kappa = 1.0;

  bool kappa_infinite() const { return std::isinf(kappa); }
  void Validate() const;
};

// Cost of moving unit mass between two feature-label points.
double TransportCost(const MetricParams& metric, ConstSpan x, Label y,
                     ConstSpan x_prime, Label y_prime);

// Empirical distribution: N samples of dimension n, each carrying mass 1/N.
class Dataset {
 public:
  Dataset() = default;
  // Throws on empty input, ragged rows or non-finite features.
  Dataset(std::size_t dim, Vector features, std::vector<Label> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }

  ConstSpan x(std::size_t i) const {
    return {features_.data() + i * dim_, dim_};
  }
  Label y(std::size_t i) const { return labels_[i]; }

  const Vector& features() const { return features_; }
  const std::vector<Label>& labels() const { return labels_; }

  Dataset Subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t dim_ = 0;
  Vector features_;
  std::vector<Label> labels_;
};

double Dot(ConstSpan a, ConstSpan b);

// softplus(u) = log(1 + exp(u)), finite for every finite u.
inline double Softplus(double u) {
  return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

// Logistic function 1 / (1 + exp(-u)) without overflow.
inline double Logistic(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

// log(1 + exp(-y <beta, x>)).
double Logloss(ConstSpan beta, ConstSpan x, Label y);
// Gradient of Logloss with respect to beta: -y * sigma(-y <beta, x>) * x.
Vector LoglossGradient(ConstSpan beta, ConstSpan x, Label y);

double NormValue(ConstSpan v, NormKind norm);
// ||v||_* for the dual of `norm`: Linf for L1, L2 for L2, L1 for Linf.
double DualNorm(ConstSpan v, NormKind norm);

// Euclidean projection of (beta, lambda) onto
//   { (b, l) : DualNorm(b, norm) <= l }  (which forces l >= 0).
std::pair<Vector, double> ProjectEpigraph(ConstSpan beta, double lambda,
                                          NormKind norm);

// +1 when <beta, x> > 0, otherwise -1 (ties go to -1).
Label Classify(ConstSpan beta, ConstSpan x);

}  // namespace drlr
