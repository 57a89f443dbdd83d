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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "drlr/metrics.hpp"
#include "drlr/risk_bounds.hpp"
#include "oracles.hpp"
#include "property.hpp"

using namespace drlr;

namespace {

MetricParams Metric(NormKind norm, double kappa) {
  MetricParams m;
  m.norm = norm;
  m.kappa = kappa;
  return m;
}

struct Instance {
  Dataset data;
  Vector beta;
  MetricParams metric;
  double eps;
};

Instance RandomInstance(CounterRng& rng, std::size_t max_count) {
  const std::size_t n = prop::Index(rng, 1, 4);
  Instance in{prop::NoisyData(rng, n, prop::Index(rng, 1, max_count)),
              prop::Vec(rng, n, -2, 2),
              Metric(prop::AnyNorm(rng), prop::AnyKappa(rng)),
              prop::LogUniform(rng, 1e-3, 2.0)};
  return in;
}

}  // namespace

TEST_CASE("zero classifier") {
  CounterRng rng(41, 0);
  const Dataset d = prop::NoisyData(rng, 3, 20);
  const Vector zero(3, 0.0);
  for (double eps : {0.0, 0.1, 5.0}) {
    const RiskBounds b = ComputeRiskBounds(zero, d, eps, Metric(NormKind::kL2, 1.0));
    CHECK(b.risk_max == 1.0);
    CHECK(b.risk_min == 0.0);
  }
  CHECK(EmpiricalRisk(zero, d) == 1.0);
}

TEST_CASE("zero radius gives the empirical risk") {
  CounterRng rng(42, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const Dataset d = prop::NoisyData(rng, 4, 50);
    const Vector beta = prop::Vec(rng, 4, -2, 2);
    const RiskBounds b = ComputeRiskBounds(beta, d, 0.0, Metric(prop::AnyNorm(rng), prop::AnyKappa(rng)));
    CHECK(b.risk_max == EmpiricalRisk(beta, d));
    CHECK(b.risk_min == EmpiricalRisk(beta, d));
  }
}

TEST_CASE("boundary samples widen the interval at zero radius") {
  const Dataset d(1, {0.0, 1.0, -1.0}, {Label::kPositive, Label::kPositive, Label::kPositive});
  const RiskBounds b = ComputeRiskBounds(Vector{1.0}, d, 0.0, Metric(NormKind::kL2, 1.0));
  CHECK(b.risk_max == doctest::Approx(2.0 / 3.0));
  CHECK(b.risk_min == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("very large radius") {
  CounterRng rng(43, 0);
  const Dataset d = prop::NoisyData(rng, 2, 15);
  const Vector beta{1.0, -0.5};
  const RiskBounds b = ComputeRiskBounds(beta, d, 1e6, Metric(NormKind::kL1, 1.0));
  CHECK(b.risk_max == 1.0);
  CHECK(b.risk_min == 0.0);
}

TEST_CASE("separating classifier") {
  const Dataset d(1, {1.0, 2.0, -1.0}, {Label::kPositive, Label::kPositive, Label::kNegative});
  CHECK(EmpiricalRisk(Vector{1.0}, d) == 0.0);
  CHECK(CorrectClassificationRate(Vector{1.0}, d) == 1.0);
}

TEST_CASE("argument errors") {
  const Dataset d(1, {1.0}, {Label::kPositive});
  CHECK_THROWS_AS(WorstCaseRisk(Vector{1.0}, d, -0.1, MetricParams{}), Error);
  CHECK_THROWS_AS(WorstCaseRisk(Vector{1.0}, d, kInfinity, MetricParams{}), Error);
  CHECK_THROWS_AS(BestCaseRisk(Vector{1.0, 2.0}, d, 0.1, MetricParams{}), Error);
  CHECK_THROWS_AS(EmpiricalRisk(Vector{1.0, 2.0}, d), Error);
}

TEST_CASE("reduction matches a lambda grid") {
  prop::ForAll(44, [](CounterRng& rng) {
    // Integer-friendly data keeps the breakpoints inside a short grid.
    const std::size_t count = prop::Index(rng, 1, 20);
    Vector x(count);
    std::vector<Label> y(count);
    for (std::size_t i = 0; i < count; ++i) {
      x[i] = std::round(prop::Uniform(rng, -4, 4) * 4) / 4 + 0.125;
      y[i] = prop::AnyLabel(rng);
    }
    const Dataset d(1, x, y);
    const Vector beta{1.0};
    const MetricParams m = Metric(prop::AnyNorm(rng), prop::AnyKappa(rng));
    const double eps = prop::Uniform(rng, 0.0, 0.5);
    // Breakpoints 1 / c_i <= max(8, 1 / kappa) for |x| >= 0.125.
    const double hi = 10.0;
    const double w = WorstCaseRisk(beta, d, eps, m).value;
    const double b = BestCaseRisk(beta, d, eps, m).value;
    CHECK(std::fabs(w - oracle::RiskLambdaGrid(beta, d, eps, m.norm, m.kappa, false, hi, 1e-3)) <= 1e-4);
    CHECK(std::fabs(b - oracle::RiskLambdaGrid(beta, d, eps, m.norm, m.kappa, true, hi, 1e-3)) <= 1e-4);
  }, 40);
}

TEST_CASE("property: reduction equals the dense linear program") {
  prop::ForAll(45, [](CounterRng& rng) {
    const Instance in = RandomInstance(rng, 10);
    const double w = WorstCaseRisk(in.beta, in.data, in.eps, in.metric).value;
    const double b = BestCaseRisk(in.beta, in.data, in.eps, in.metric).value;
    CHECK(std::fabs(w - oracle::RiskLp(in.beta, in.data, in.eps, in.metric.norm,
                                       in.metric.kappa, false)) <= 1e-6);
    CHECK(std::fabs(b - oracle::RiskLp(in.beta, in.data, in.eps, in.metric.norm,
                                       in.metric.kappa, true)) <= 1e-6);
  });
}

TEST_CASE("property: returned optimum is certified over lambda") {
  prop::ForAll(46, [](CounterRng& rng) {
    const Instance in = RandomInstance(rng, 30);
    for (bool best : {false, true}) {
      const RiskBound r = best ? BestCaseRisk(in.beta, in.data, in.eps, in.metric)
                               : WorstCaseRisk(in.beta, in.data, in.eps, in.metric);
      const double opt = best ? 1.0 - r.value : r.value;
      const double at_star = ReducedRiskObjective(in.beta, in.data, in.eps, in.metric, best, r.lambda);
      CHECK(std::clamp(at_star, 0.0, 1.0) == doctest::Approx(opt).epsilon(1e-9));
      for (int k = 0; k < 20; ++k) {
        const double lambda = prop::LogUniform(rng, 1e-4, 1e4) * (k == 0 ? 0.0 : 1.0);
        const double g = ReducedRiskObjective(in.beta, in.data, in.eps, in.metric, best, lambda);
        CHECK(g >= opt - 1e-12);
        CHECK(g == doctest::Approx(oracle::RiskReducedAt(in.beta, in.data, in.eps, in.metric.norm,
                                                         in.metric.kappa, best, lambda)).epsilon(1e-12));
      }
    }
  });
}

TEST_CASE("property: interval is ordered, contains the empirical risk and nests") {
  prop::ForAll(47, [](CounterRng& rng) {
    const Instance in = RandomInstance(rng, 40);
    std::vector<double> grid = {0.0};
    for (int k = 0; k < 12; ++k) grid.push_back(prop::LogUniform(rng, 1e-4, 2.0));
    std::sort(grid.begin(), grid.end());
    const double emp = EmpiricalRisk(in.beta, in.data);
    RiskBounds prev = ComputeRiskBounds(in.beta, in.data, 0.0, in.metric);
    for (double eps : grid) {
      const RiskBounds b = ComputeRiskBounds(in.beta, in.data, eps, in.metric);
      CHECK(0.0 <= b.risk_min);
      CHECK(b.risk_min <= b.risk_max);
      CHECK(b.risk_max <= 1.0);
      CHECK(b.risk_max >= emp);
      CHECK(b.risk_min <= emp);
      CHECK(b.risk_max >= prev.risk_max);
      CHECK(b.risk_min <= prev.risk_min);
      // Concave in eps: lambda* at the smaller radius is a supergradient.
      CHECK(b.risk_max - prev.risk_max <= (eps - prev.epsilon) * prev.lambda_star_max + 1e-12);
      prev = b;
    }
  });
}

TEST_CASE("property: bounds are invariant under positive rescaling of beta") {
  prop::ForAll(48, [](CounterRng& rng) {
    const Instance in = RandomInstance(rng, 40);
    const double c = prop::LogUniform(rng, 1e-3, 1e3);
    Vector scaled = in.beta;
    for (double& v : scaled) v *= c;
    const RiskBounds a = ComputeRiskBounds(in.beta, in.data, in.eps, in.metric);
    const RiskBounds b = ComputeRiskBounds(scaled, in.data, in.eps, in.metric);
    CHECK(std::fabs(a.risk_max - b.risk_max) <= 1e-9);
    CHECK(std::fabs(a.risk_min - b.risk_min) <= 1e-9);
  });
}

TEST_CASE("property: empirical risk complements the classification rate") {
  prop::ForAll(49, [](CounterRng& rng) {
    const std::size_t n = prop::Index(rng, 1, 5);
    const Dataset d = prop::NoisyData(rng, n, prop::Index(rng, 1, 60));
    const Vector beta = prop::Vec(rng, n, -2, 2);
    CHECK(EmpiricalRisk(beta, d) + CorrectClassificationRate(beta, d) ==
          doctest::Approx(1.0).epsilon(1e-15));
  });
}
