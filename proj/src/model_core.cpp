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

#include "drlr/model_core.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace drlr {

Label LabelFromInt(int value) {
  if (value == 1) return Label::kPositive;
  if (value == -1) return Label::kNegative;
  Fail(ErrorCode::kInvalidArgument,
       "label must be -1 or +1, got " + std::to_string(value));
}

NormKind Dual(NormKind norm) {
  switch (norm) {
    case NormKind::kL1:
      return NormKind::kLinf;
    case NormKind::kL2:
      return NormKind::kL2;
    case NormKind::kLinf:
      return NormKind::kL1;
  }
  return NormKind::kL2;
}

std::string_view ToString(NormKind norm) {
  switch (norm) {
    case NormKind::kL1:
      return "l1";
    case NormKind::kL2:
      return "l2";
    case NormKind::kLinf:
      return "linf";
  }
  return "l2";
}

NormKind ParseNormKind(std::string_view text) {
  if (text == "l1" || text == "L1") return NormKind::kL1;
  if (text == "l2" || text == "L2") return NormKind::kL2;
  if (text == "linf" || text == "Linf" || text == "inf") return NormKind::kLinf;
  Fail(ErrorCode::kInvalidArgument,
       "unknown norm '" + std::string(text) + "' (expected l1, l2 or linf)");
}

void MetricParams::Validate() const {
  if (std::isnan(kappa) || kappa <= 0.0) {
    Fail(ErrorCode::kInvalidArgument, "kappa must be positive (or inf)");
  }
}

double TransportCost(const MetricParams& metric, ConstSpan x, Label y,
                     ConstSpan x_prime, Label y_prime) {
  Require(x.size() == x_prime.size(), ErrorCode::kDimensionMismatch,
          "transport cost: dimension mismatch");
  Vector diff(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) diff[j] = x[j] - x_prime[j];
  double cost = NormValue(diff, metric.norm);
  if (y != y_prime) cost += metric.kappa;
  return cost;
}

Dataset::Dataset(std::size_t dim, Vector features, std::vector<Label> labels)
    : dim_(dim), features_(std::move(features)), labels_(std::move(labels)) {
  Require(dim_ >= 1, ErrorCode::kInvalidArgument,
          "dataset: feature dimension must be >= 1");
  Require(!labels_.empty(), ErrorCode::kInvalidArgument,
          "dataset: at least one sample is required");
  Require(features_.size() == dim_ * labels_.size(),
          ErrorCode::kDimensionMismatch,
          "dataset: feature buffer does not match size * dim");
  for (std::size_t k = 0; k < features_.size(); ++k) {
    if (!std::isfinite(features_[k])) {
      Fail(ErrorCode::kNumeric, "dataset: non-finite feature in sample " +
                                    std::to_string(k / dim_));
    }
  }
  for (Label y : labels_) {
    Require(y == Label::kPositive || y == Label::kNegative,
            ErrorCode::kInvalidArgument, "dataset: labels must be +/-1");
  }
}

Dataset Dataset::Subset(std::span<const std::size_t> indices) const {
  Vector features;
  features.reserve(indices.size() * dim_);
  std::vector<Label> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    Require(i < size(), ErrorCode::kInvalidArgument,
            "dataset subset: index out of range");
    const ConstSpan row = x(i);
    features.insert(features.end(), row.begin(), row.end());
    labels.push_back(labels_[i]);
  }
  return Dataset(dim_, std::move(features), std::move(labels));
}

double Dot(ConstSpan a, ConstSpan b) {
  Require(a.size() == b.size(), ErrorCode::kDimensionMismatch,
          "dot product: dimension mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double Logloss(ConstSpan beta, ConstSpan x, Label y) {
  return Softplus(-Sign(y) * Dot(beta, x));
}

Vector LoglossGradient(ConstSpan beta, ConstSpan x, Label y) {
  const double s = Sign(y);
  const double scale = -s * Logistic(-s * Dot(beta, x));
  Vector g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) g[j] = scale * x[j];
  return g;
}

double NormValue(ConstSpan v, NormKind norm) {
  switch (norm) {
    case NormKind::kL1: {
      double s = 0.0;
      for (double e : v) s += std::abs(e);
      return s;
    }
    case NormKind::kL2: {
      double s = 0.0;
      for (double e : v) s += e * e;
      return std::sqrt(s);
    }
    case NormKind::kLinf: {
      double m = 0.0;
      for (double e : v) m = std::max(m, std::abs(e));
      return m;
    }
  }
  return 0.0;
}

double DualNorm(ConstSpan v, NormKind norm) { return NormValue(v, Dual(norm)); }

namespace {

// Projection onto { (b, l) : ||b||_inf <= l }. The optimal level t solves
// t = l + sum_i (|b_i| - t)_+, found by scanning the sorted magnitudes.
std::pair<Vector, double> ProjectLinfEpigraph(ConstSpan b, double l) {
  Vector mags(b.size());
  std::transform(b.begin(), b.end(), mags.begin(),
                 [](double e) { return std::abs(e); });
  std::sort(mags.begin(), mags.end(), std::greater<>());

  double t = l;
  double partial = 0.0;
  for (std::size_t k = 0; k <= mags.size(); ++k) {
    t = (l + partial) / static_cast<double>(k + 1);
    if (k == mags.size() || t >= mags[k]) break;
    partial += mags[k];
  }
  t = std::max(t, 0.0);

  Vector out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) out[j] = std::clamp(b[j], -t, t);
  return {std::move(out), t};
}

// Moreau: the polar of epi(||.||_1) is -epi(||.||_inf), so
// P(v) = v + P_{epi inf}(-v).
std::pair<Vector, double> ProjectL1Epigraph(ConstSpan b, double l) {
  Vector neg(b.size());
  std::transform(b.begin(), b.end(), neg.begin(),
                 [](double e) { return -e; });
  auto [polar_b, polar_l] = ProjectLinfEpigraph(neg, -l);
  Vector out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) out[j] = b[j] + polar_b[j];
  return {std::move(out), std::max(l + polar_l, 0.0)};
}

std::pair<Vector, double> ProjectSecondOrderCone(ConstSpan b, double l) {
  const double r = NormValue(b, NormKind::kL2);
  if (r <= l) return {Vector(b.begin(), b.end()), l};
  if (r <= -l) return {Vector(b.size(), 0.0), 0.0};
  const double level = 0.5 * (r + l);
  Vector out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) out[j] = level * b[j] / r;
  return {std::move(out), level};
}

}  // namespace

std::pair<Vector, double> ProjectEpigraph(ConstSpan beta, double lambda,
                                          NormKind norm) {
  switch (Dual(norm)) {
    case NormKind::kL1:
      return ProjectL1Epigraph(beta, lambda);
    case NormKind::kL2:
      return ProjectSecondOrderCone(beta, lambda);
    case NormKind::kLinf:
      return ProjectLinfEpigraph(beta, lambda);
  }
  return ProjectSecondOrderCone(beta, lambda);
}

Label Classify(ConstSpan beta, ConstSpan x) {
  return Dot(beta, x) > 0.0 ? Label::kPositive : Label::kNegative;
}

}  // namespace drlr
