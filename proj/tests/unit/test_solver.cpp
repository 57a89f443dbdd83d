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
#include "drlr/solver.hpp"
#include "oracles.hpp"
#include "property.hpp"

using namespace drlr;

namespace {

const double kLog2 = std::log(2.0);

TrainConfig Config(double eps, NormKind norm, double kappa) {
  TrainConfig c;
  c.epsilon = eps;
  c.metric.norm = norm;
  c.metric.kappa = kappa;
  return c;
}

double MeanLogloss(const Dataset& d, const Vector& beta) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) acc += Logloss(beta, d.x(i), d.y(i));
  return acc / d.size();
}

double Rel(double a, double b) {
  return std::fabs(a - b) / std::max(1.0, std::fabs(b));
}

void CheckFeasible(const TrainedModel& m, const Dataset& d, double tol) {
  CHECK(DualNorm(m.beta, m.config.metric.norm) <= m.lambda + tol);
  REQUIRE(m.slacks.size() == d.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(m.slacks[i] >= Logloss(m.beta, d.x(i), d.y(i)) - tol);
    if (!m.config.metric.kappa_infinite()) {
      CHECK(m.slacks[i] >= Logloss(m.beta, d.x(i), Flip(d.y(i))) -
                               m.lambda * m.config.metric.kappa - tol);
    }
    sum += m.slacks[i];
  }
  CHECK(m.j_hat == doctest::Approx(m.lambda * m.config.epsilon + sum / d.size())
                       .epsilon(1e-9));
}

Dataset OneDim(std::initializer_list<std::pair<double, int>> rows) {
  Vector x;
  std::vector<Label> y;
  for (auto [xi, yi] : rows) {
    x.push_back(xi);
    y.push_back(LabelFromInt(yi));
  }
  return Dataset(1, x, y);
}

}  // namespace

TEST_CASE("configuration is validated") {
  const Dataset d = OneDim({{1.0, 1}, {-1.0, -1}});
  TrainConfig c;
  c.epsilon = -0.1;
  CHECK_THROWS_AS(TrainDrlr(d, c), Error);
  c = TrainConfig{};
  c.obj_tol = 0.0;
  CHECK_THROWS_AS(TrainDrlr(d, c), Error);
  c = TrainConfig{};
  c.feas_tol = -1.0;
  CHECK_THROWS_AS(TrainDrlr(d, c), Error);
  c = TrainConfig{};
  c.metric.kappa = -1.0;
  CHECK_THROWS_AS(TrainDrlr(d, c), Error);
  c = TrainConfig{};
  c.max_iters = 0;
  CHECK_THROWS_AS(TrainDrlr(d, c), Error);
  CHECK(ParseSolverMethod("barrier") == SolverMethod::kBarrier);
  CHECK(ParseSolverMethod("smoothed") == SolverMethod::kSmoothed);
  CHECK(ParseSolverMethod("subgradient") == SolverMethod::kSubgradient);
  CHECK(ParseStepRule("fixed") == StepRule::kFixed);
  CHECK_THROWS_AS(ParseSolverMethod("newton"), Error);
}

TEST_CASE("mode names") {
  CHECK(ModeName(Config(0.0, NormKind::kL2, 1.0)) == "classical");
  CHECK(ModeName(Config(0.1, NormKind::kL2, kInfinity)) == "regularized");
  CHECK(ModeName(Config(0.1, NormKind::kL2, 1.0)) == "drlr");
}

TEST_CASE("two-point instance matches the grid oracle") {
  const Dataset d = OneDim({{1.0, 1}, {-1.0, 1}});
  const TrainedModel m = TrainDrlr(d, Config(0.1, NormKind::kL2, 1.0));
  const auto grid = oracle::GridWorstCaseLoss1D(d, 0.1, 1.0, 10.0, 1e-3);
  CHECK(m.converged);
  CHECK(std::fabs(m.j_hat - grid.value) <= 2e-3);
  // Decomposition recomputed directly from (beta, lambda).
  const auto parts = DecomposeWorstCaseLoss(m, d);
  double flip = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double margin = Sign(d.y(i)) * m.beta[0] * d.x(i)[0];
    flip += std::max(0.0, margin - m.lambda * 1.0);
  }
  CHECK(parts.reg_term == doctest::Approx(m.lambda * 0.1));
  CHECK(parts.empirical_logloss == doctest::Approx(MeanLogloss(d, m.beta)));
  CHECK(parts.label_uncertainty_term == doctest::Approx(flip / 2.0));
  CHECK(parts.total() == doctest::Approx(m.j_hat).epsilon(1e-6));
}

TEST_CASE("classical fit matches gradient descent") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CounterRng rng(21, seed);
    const Dataset d = prop::NoisyData(rng, 4, 60);
    const auto gd = oracle::GradientDescentLogistic(d);
    REQUIRE(gd.converged);
    const TrainedModel m = TrainClassical(d);
    CHECK(m.converged);
    CHECK(ModeName(m.config) == "classical");
    CHECK(Rel(m.j_hat, gd.objective) <= 1e-6);
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::fabs(m.beta[j] - gd.beta[j]) < 1e-4);
  }
}

TEST_CASE("regularized fit matches the proximal oracle for every norm") {
  for (NormKind norm : {NormKind::kL1, NormKind::kL2, NormKind::kLinf}) {
    CounterRng rng(22, static_cast<int>(norm));
    const Dataset d = prop::NoisyData(rng, 5, 50);
    for (double eps : {0.01, 0.05, 0.2}) {
      const auto prox = oracle::ProximalRegularized(d, eps, norm);
      REQUIRE(prox.converged);
      const TrainedModel m = TrainRegularized(d, eps, norm);
      CHECK(m.converged);
      CHECK(ModeName(m.config) == "regularized");
      CHECK(std::fabs(m.j_hat - prox.objective) <= 1e-6);
      CHECK(m.lambda == doctest::Approx(DualNorm(m.beta, norm)).epsilon(1e-6));
      CHECK(DecomposeWorstCaseLoss(m, d).label_uncertainty_term == 0.0);
    }
  }
}

TEST_CASE("regularized with zero radius is the classical fit") {
  CounterRng rng(23, 0);
  const Dataset d = prop::NoisyData(rng, 3, 40);
  const TrainedModel a = TrainRegularized(d, 0.0, NormKind::kL1);
  const TrainedModel b = TrainClassical(d);
  for (std::size_t j = 0; j < 3; ++j) CHECK(std::fabs(a.beta[j] - b.beta[j]) < 1e-6);
}

TEST_CASE("a very large radius forces the zero classifier") {
  CounterRng rng(24, 0);
  const Dataset d = prop::NoisyData(rng, 3, 30);
  for (double kappa : {1.0, kInfinity}) {
    const TrainedModel m = TrainDrlr(d, Config(1e3, NormKind::kL2, kappa));
    CHECK(DualNorm(m.beta, NormKind::kL2) < 1e-6);
    CHECK(m.lambda < 1e-6);
    CHECK(m.j_hat == doctest::Approx(kLog2).epsilon(1e-6));
    const auto parts = DecomposeWorstCaseLoss(m, d);
    CHECK(parts.empirical_logloss == doctest::Approx(kLog2).epsilon(1e-6));
    CHECK(parts.label_uncertainty_term == doctest::Approx(0.0));
  }
}

TEST_CASE("decomposition of the zero model") {
  const Dataset d = OneDim({{1.0, 1}, {2.0, -1}});
  TrainedModel m;
  m.beta = {0.0};
  m.lambda = 0.0;
  m.config = Config(0.3, NormKind::kL2, 1.0);
  const auto parts = DecomposeWorstCaseLoss(m, d);
  CHECK(parts.reg_term == 0.0);
  CHECK(parts.empirical_logloss == doctest::Approx(kLog2));
  CHECK(parts.label_uncertainty_term == 0.0);
  const Dataset wrong(2, {1.0, 2.0}, {Label::kPositive});
  CHECK_THROWS_AS(DecomposeWorstCaseLoss(m, wrong), Error);
}

TEST_CASE("separable data stops without diverging") {
  const Dataset d = OneDim({{1.0, 1}, {2.0, 1}, {-1.0, -1}, {-3.0, -1}});
  const TrainedModel m = TrainClassical(d);
  CHECK(std::isfinite(m.j_hat));
  CHECK(m.j_hat < 1e-6);
  CHECK(std::isfinite(m.beta[0]));
  CHECK(m.beta[0] > 0.0);
  CHECK((m.converged || m.hit_beta_cap));
}

TEST_CASE("an exhausted budget is reported, not hidden") {
  CounterRng rng(25, 0);
  const Dataset d = prop::NoisyData(rng, 4, 40);
  for (SolverMethod method : {SolverMethod::kBarrier, SolverMethod::kSmoothed,
                              SolverMethod::kSubgradient}) {
    TrainConfig c = Config(0.05, NormKind::kL2, 1.0);
    c.method = method;
    c.max_iters = 2;
    const TrainedModel m = TrainDrlr(d, c);
    CHECK_FALSE(m.converged);
    CHECK(std::isfinite(m.j_hat));
  }
}

TEST_CASE("solver methods agree on small instances") {
  prop::ForAll(26, [](CounterRng& rng) {
    const Dataset d = prop::NoisyData(rng, prop::Index(rng, 1, 3), prop::Index(rng, 5, 20));
    TrainConfig c = Config(prop::LogUniform(rng, 1e-2, 0.5), prop::AnyNorm(rng),
                           prop::AnyKappa(rng));
    const TrainedModel barrier = TrainDrlr(d, c);
    c.method = SolverMethod::kSmoothed;
    const TrainedModel smoothed = TrainDrlr(d, c);
    CHECK(std::fabs(barrier.j_hat - smoothed.j_hat) <= 1e-3);
    CHECK(barrier.j_hat <= smoothed.j_hat + 1e-6);
    c.method = SolverMethod::kSubgradient;
    c.max_iters = 20000;
    const TrainedModel sub = TrainDrlr(d, c);
    CHECK(barrier.j_hat <= sub.j_hat + 1e-6);
    CHECK(std::fabs(barrier.j_hat - sub.j_hat) <= 1e-2);
  }, 20);
}

TEST_CASE("path fits match independent fits") {
  CounterRng rng(27, 0);
  const Dataset d = prop::NoisyData(rng, 3, 30);
  const TrainConfig c = Config(0.0, NormKind::kLinf, 1.0);
  const std::vector<double> eps = {0.3, 0.0, 0.01, 0.1, 0.001};
  const auto path = TrainPath(d, c, eps);
  REQUIRE(path.size() == eps.size());
  for (std::size_t k = 0; k < eps.size(); ++k) {
    TrainConfig ck = c;
    ck.epsilon = eps[k];
    CHECK(path[k].config.epsilon == eps[k]);
    CHECK(Rel(path[k].j_hat, TrainDrlr(d, ck).j_hat) <= 1e-7);
  }
}

TEST_CASE("property: grid-oracle equivalence for one feature") {
  prop::ForAll(31, [](CounterRng& rng) {
    const std::size_t count = prop::Index(rng, 1, 3);
    Vector x(count);
    std::vector<Label> y(count);
    for (std::size_t i = 0; i < count; ++i) {
      x[i] = prop::Uniform(rng, 0.2, 2.0) * (rng.Below(2) ? 1.0 : -1.0);
      y[i] = prop::AnyLabel(rng);
    }
    const Dataset d(1, x, y);
    const double eps = prop::Uniform(rng, 0.02, 1.0);
    const double kappa = std::array<double, 3>{0.5, 1.0, kInfinity}[rng.Below(3)];
    const TrainedModel m = TrainDrlr(d, Config(eps, prop::AnyNorm(rng), kappa));
    const auto grid = oracle::GridWorstCaseLoss1D(d, eps, kappa, 50.0, 1e-2);
    CHECK(std::fabs(m.j_hat - grid.value) <= 2e-3);
    CHECK(m.j_hat <= grid.value + 1e-7);
  });
}

TEST_CASE("property: worst-case loss bounds the empirical loss and is feasible") {
  prop::ForAll(32, [](CounterRng& rng) {
    const Dataset d = prop::NoisyData(rng, prop::Index(rng, 1, 4), prop::Index(rng, 3, 25));
    const TrainConfig c = Config(prop::LogUniform(rng, 1e-3, 1.0), prop::AnyNorm(rng),
                                 prop::AnyKappa(rng));
    const TrainedModel m = TrainDrlr(d, c);
    CHECK(m.converged);
    CHECK(m.j_hat >= MeanLogloss(d, m.beta) - 1e-12);
    CheckFeasible(m, d, c.feas_tol);
    CHECK(Rel(DecomposeWorstCaseLoss(m, d).total(), m.j_hat) <= 1e-6);
    CHECK(DecomposeWorstCaseLoss(m, d).label_uncertainty_term >= 0.0);
    CHECK(Rel(WorstCaseObjective(d, c.epsilon, c.metric, m.beta, m.lambda), m.j_hat) <= 1e-9);
  });
}

TEST_CASE("property: worst-case loss is nondecreasing in the radius") {
  prop::ForAll(33, [](CounterRng& rng) {
    const Dataset d = prop::NoisyData(rng, prop::Index(rng, 1, 4), prop::Index(rng, 3, 25));
    const NormKind norm = prop::AnyNorm(rng);
    const double kappa = prop::AnyKappa(rng);
    const double e1 = prop::LogUniform(rng, 1e-4, 1.0);
    const double e2 = e1 * prop::LogUniform(rng, 1.0, 10.0);
    const double j0 = TrainDrlr(d, Config(0.0, norm, kappa)).j_hat;
    const double j1 = TrainDrlr(d, Config(e1, norm, kappa)).j_hat;
    const double j2 = TrainDrlr(d, Config(e2, norm, kappa)).j_hat;
    CHECK(j0 <= j1 + 1e-7 * std::max(1.0, j1));
    CHECK(j1 <= j2 + 1e-7 * std::max(1.0, j2));
  });
}

TEST_CASE("property: worst-case loss is nonincreasing in kappa") {
  prop::ForAll(34, [](CounterRng& rng) {
    const Dataset d = prop::NoisyData(rng, prop::Index(rng, 1, 4), prop::Index(rng, 3, 25));
    const NormKind norm = prop::AnyNorm(rng);
    const double eps = prop::LogUniform(rng, 1e-3, 1.0);
    const double k1 = prop::LogUniform(rng, 0.1, 5.0);
    const double k2 = k1 * prop::LogUniform(rng, 1.0, 10.0);
    const double j1 = TrainDrlr(d, Config(eps, norm, k1)).j_hat;
    const double j2 = TrainDrlr(d, Config(eps, norm, k2)).j_hat;
    const double ji = TrainDrlr(d, Config(eps, norm, kInfinity)).j_hat;
    CHECK(j2 <= j1 + 1e-7 * std::max(1.0, j1));
    CHECK(ji <= j2 + 1e-7 * std::max(1.0, j2));
  });
}

TEST_CASE("property: perturbed distributions inside the ball stay below the bound") {
  prop::ForAll(35, [](CounterRng& rng) {
    const std::size_t n = prop::Index(rng, 1, 4);
    const Dataset d = prop::NoisyData(rng, n, prop::Index(rng, 3, 25));
    const TrainConfig c = Config(prop::LogUniform(rng, 1e-3, 0.5), prop::AnyNorm(rng),
                                 prop::AnyKappa(rng));
    const TrainedModel m = TrainDrlr(d, c);
    // Every atom moves by a random shift, possibly with its label flipped;
    // a fraction theta of the mass is transported so the budget is met.
    double cost = 0.0;
    double moved_loss = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      Vector x(d.x(i).begin(), d.x(i).end());
      Vector shift = prop::Vec(rng, n, -1, 1);
      // Push against the classifier half the time.
      if (rng.Below(2)) {
        for (std::size_t j = 0; j < n; ++j) {
          shift[j] = -Sign(d.y(i)) * std::copysign(std::fabs(shift[j]), m.beta[j]);
        }
      }
      Label y = d.y(i);
      const bool flip = !c.metric.kappa_infinite() && rng.Below(3) == 0;
      if (flip) y = Flip(y);
      for (std::size_t j = 0; j < n; ++j) x[j] += shift[j];
      cost += TransportCost(c.metric, d.x(i), d.y(i), x, y);
      moved_loss += Logloss(m.beta, x, y);
    }
    cost /= d.size();
    moved_loss /= d.size();
    const double theta = cost > 0.0 ? std::min(1.0, c.epsilon / cost) : 1.0;
    const double expected = (1.0 - theta) * MeanLogloss(d, m.beta) + theta * moved_loss;
    CHECK(expected <= m.j_hat + 1e-6);
  });
}
