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
#include "drlr/calibration.hpp"
#include "json.hpp"
#include "property.hpp"

using namespace drlr;

namespace {

RadiusFormulaParams Params(double a, double c1, double c2, double c3,
                           std::size_t n, double eta) {
  RadiusFormulaParams p;
  p.a = a;
  p.c1 = c1;
  p.c2 = c2;
  p.c3 = c3;
  p.n = n;
  p.eta = eta;
  return p;
}

TrialPlan SmallPlan() {
  TrialPlan plan;
  plan.generator.n = 3;
  plan.train_size = 20;
  plan.test_size = 300;
  plan.epsilon_grid = {0.0, 0.01, 0.1};
  plan.runs = 4;
  plan.seed = 5;
  plan.train.metric.norm = NormKind::kLinf;
  return plan;
}

}  // namespace

TEST_CASE("radius formula examples") {
  const double eta = 0.05;
  // log(c1 / eta) = 1 and c3 = 0.5 put N = 1 in the small-sample branch.
  RadiusFormulaParams p = Params(2.0, std::exp(1.0) * eta, 1.0, 0.5, 10, eta);
  CHECK(RadiusRegimeThreshold(p) == doctest::Approx(2.0));
  CHECK(RadiusFormula(1, p) == doctest::Approx(1.0).epsilon(1e-14));
  // Small-sample branch: doubling N scales by 2^(-1/a).
  p = Params(3.0, 1.0, 1.0, 1e-3, 4, eta);
  CHECK(RadiusFormula(20, p) / RadiusFormula(10, p) ==
        doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-12));
  // Large-sample branch uses the dimension exponent.
  p = Params(3.0, 1.0, 1.0, 1.0, 4, eta);
  const double t = RadiusRegimeThreshold(p);
  const std::size_t big = static_cast<std::size_t>(std::ceil(t)) + 5;
  CHECK(RadiusFormula(big, p) ==
        doctest::Approx(std::pow(std::log(1.0 / eta) / big, 0.25)).epsilon(1e-12));
}

TEST_CASE("regime switch convention") {
  // Exactly representable threshold: log(c1/eta) / (c2 c3) with c1 = eta e^L.
  const double eta = 0.5;
  const RadiusFormulaParams p = Params(2.0, eta * std::exp(4.0), 1.0, 1.0, 3, eta);
  const double t = RadiusRegimeThreshold(p);
  const double level = std::log(p.c1 / p.eta);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 6u}) {
    const double base = level / (p.c2 * n);
    const double expect = std::pow(base, static_cast<double>(n) < t ? 1.0 / p.a : 1.0 / p.n);
    CHECK(RadiusFormula(n, p) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("radius formula argument errors") {
  CHECK_THROWS_AS(RadiusFormula(10, Params(2, 1, 1, 1, 1, 0.0)), Error);
  CHECK_THROWS_AS(RadiusFormula(10, Params(2, 1, 1, 1, 1, 1.5)), Error);
  CHECK_THROWS_AS(RadiusFormula(10, Params(1, 1, 1, 1, 1, 0.05)), Error);
  CHECK_THROWS_AS(RadiusFormula(10, Params(2, -1, 1, 1, 1, 0.05)), Error);
  CHECK_THROWS_AS(RadiusFormula(10, Params(2, 1, 0, 1, 1, 0.05)), Error);
  CHECK_THROWS_AS(RadiusFormula(10, Params(2, 1, 1, 1, 0, 0.05)), Error);
  CHECK_THROWS_AS(RadiusFormula(0, Params(2, 1, 1, 1, 1, 0.05)), Error);
  // c1 <= eta gives a nonpositive log level.
  CHECK_THROWS_AS(RadiusFormula(10, Params(2, 0.01, 1, 1, 1, 0.05)), Error);
}

TEST_CASE("property: radius decreases in N and in eta within a regime") {
  prop::ForAll(71, [](CounterRng& rng) {
    const RadiusFormulaParams p =
        Params(prop::Uniform(rng, 1.1, 5.0), prop::LogUniform(rng, 1.0, 100.0),
               prop::LogUniform(rng, 0.01, 10.0), prop::LogUniform(rng, 0.01, 10.0),
               prop::Index(rng, 1, 20), prop::Uniform(rng, 0.01, 0.99));
    const double t = RadiusRegimeThreshold(p);
    const std::size_t n1 = prop::Index(rng, 1, 5000);
    const std::size_t n2 = n1 + prop::Index(rng, 1, 5000);
    if ((n1 < t) == (n2 < t)) CHECK(RadiusFormula(n2, p) < RadiusFormula(n1, p));
    RadiusFormulaParams q = p;
    q.eta = p.eta * prop::Uniform(rng, 0.1, 0.99);
    if ((n1 < t) == (n1 < RadiusRegimeThreshold(q))) {
      CHECK(RadiusFormula(n1, q) > RadiusFormula(n1, p));
    }
  });
}

TEST_CASE("isotonic regression examples") {
  CHECK(IsotonicIncreasing({1, 3, 2, 4}) == std::vector<double>{1, 2.5, 2.5, 4});
  CHECK(IsotonicIncreasing({3, 2, 1}) == std::vector<double>{2, 2, 2});
  CHECK(IsotonicIncreasing({}).empty());
}

TEST_CASE("property: isotonic fit is monotone, mean preserving and optimal") {
  prop::ForAll(72, [](CounterRng& rng) {
    const std::size_t n = prop::Index(rng, 1, 40);
    const std::vector<double> v = prop::Vec(rng, n, 0, 1);
    const std::vector<double> fit = IsotonicIncreasing(v);
    REQUIRE(fit.size() == n);
    double sv = 0.0, sf = 0.0, best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) CHECK(fit[i] >= fit[i - 1] - 1e-15);
      sv += v[i];
      sf += fit[i];
      best += (v[i] - fit[i]) * (v[i] - fit[i]);
    }
    CHECK(sf == doctest::Approx(sv).epsilon(1e-12));
    for (int k = 0; k < 10; ++k) {
      std::vector<double> z = prop::Vec(rng, n, 0, 1);
      std::sort(z.begin(), z.end());
      double other = 0.0;
      for (std::size_t i = 0; i < n; ++i) other += (v[i] - z[i]) * (v[i] - z[i]);
      CHECK(best <= other + 1e-12);
    }
    CHECK(IsotonicIncreasing(fit) == fit);
  });
}

TEST_CASE("trials do not depend on the thread count") {
  TrialPlan plan = SmallPlan();
  const auto one = SimulateTrials(plan);
  plan.threads = 3;
  const auto three = SimulateTrials(plan);
  REQUIRE(one.size() == 4);
  for (std::size_t t = 0; t < one.size(); ++t) {
    REQUIRE(one[t].size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(one[t][k].j_hat == three[t][k].j_hat);
      CHECK(one[t][k].test_logloss == three[t][k].test_logloss);
      CHECK(one[t][k].cvar == three[t][k].cvar);
    }
  }
  // Trials see different data.
  CHECK(one[0][1].j_hat != one[1][1].j_hat);
}

TEST_CASE("calibration is bit reproducible") {
  const TrialPlan plan = SmallPlan();
  const auto a = CalibrateByCoverage(plan, 0.05);
  const auto b = CalibrateByCoverage(plan, 0.05);
  CHECK(CalibrationReportJson(a) == CalibrationReportJson(b));
  CHECK(CalibrationReportCsv(a) == CalibrationReportCsv(b));
  const auto header = CalibrationReportCsv(a).substr(0, CalibrationReportCsv(a).find('\n'));
  CHECK(header.rfind("epsilon,coverage,mean_ccr,mean_logloss", 0) == 0);
  const auto json = nlohmann::json::parse(CalibrationReportJson(a));
  CHECK(json["grid"].size() == 3);
  CHECK(json.contains("chosen_epsilon"));
  CHECK(json["target_confidence"] == 0.95);
}

TEST_CASE("zero radius rarely covers, a huge radius always does") {
  TrialPlan plan;
  plan.generator.n = 10;
  plan.train_size = 100;
  plan.test_size = 10000;
  plan.epsilon_grid = {0.0, 50.0};
  plan.runs = 100;
  plan.seed = 17;
  plan.train.metric.norm = NormKind::kLinf;
  const auto report = CalibrateByCoverage(plan, 0.05);
  CHECK(report.grid[0].coverage <= 0.2);
  CHECK(report.grid[1].coverage == 1.0);
  REQUIRE(report.chosen_epsilon.has_value());
  CHECK(*report.chosen_epsilon == 50.0);
  CHECK(report.monotone);
}

TEST_CASE("no grid point reaching the target leaves the choice unset") {
  TrialPlan plan = SmallPlan();
  plan.epsilon_grid = {0.0};
  plan.runs = 10;
  const auto report = CalibrateByCoverage(plan, 0.05);
  CHECK_FALSE(report.chosen_epsilon.has_value());
  CHECK_FALSE(report.diagnostic.empty());
  const auto json = nlohmann::json::parse(CalibrationReportJson(report));
  CHECK(json["chosen_epsilon"].is_null());
}

TEST_CASE("coverage summary flags large raw drops") {
  TrialPlan plan = SmallPlan();
  plan.runs = 50;
  std::vector<std::vector<TrialOutcome>> outcomes(50, std::vector<TrialOutcome>(3));
  for (int t = 0; t < 50; ++t) {
    for (int k = 0; k < 3; ++k) {
      TrialOutcome& o = outcomes[t][k];
      o.epsilon = plan.epsilon_grid[k];
      o.j_hat = 1.0;
      // Coverage 1.0, then 0.2, then 1.0.
      o.test_logloss = (k == 1 && t >= 10) ? 2.0 : 0.5;
    }
  }
  const auto report = SummarizeCoverage(plan, 0.05, outcomes);
  CHECK(report.grid[1].coverage == doctest::Approx(0.2));
  CHECK_FALSE(report.monotone);
  CHECK(report.worst_drop == doctest::Approx(0.8));
  for (std::size_t k = 1; k < report.grid.size(); ++k) {
    CHECK(report.grid[k].smoothed_coverage >= report.grid[k - 1].smoothed_coverage);
  }
}

TEST_CASE("covered tolerates rounding ties only") {
  TrialOutcome o;
  o.j_hat = std::log(2.0);
  o.test_logloss = std::log(2.0) * (1 + 1e-15);
  CHECK(Covered(o));
  o.test_logloss = std::log(2.0) * (1 + 1e-9);
  CHECK_FALSE(Covered(o));
}

TEST_CASE("plan validation") {
  TrialPlan plan = SmallPlan();
  plan.epsilon_grid = {0.1, 0.01};
  CHECK_THROWS_AS(CalibrateByCoverage(plan, 0.05), Error);
  plan = SmallPlan();
  plan.runs = 0;
  CHECK_THROWS_AS(CalibrateByCoverage(plan, 0.05), Error);
  plan = SmallPlan();
  plan.epsilon_grid.clear();
  CHECK_THROWS_AS(CalibrateByCoverage(plan, 0.05), Error);
  CHECK_THROWS_AS(CalibrateByCoverage(SmallPlan(), 1.5), Error);
}
