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

// Training of Wasserstein distributionally robust logistic regression.
//
// The worst-case expected logloss over the Wasserstein ball of radius eps
// around the empirical distribution equals the convex program
//
//   min  lambda * eps + (1/N) sum_i s_i
//   s.t. logloss(beta, x_i,  y_i)                  <= s_i
//        logloss(beta, x_i, -y_i) - lambda * kappa <= s_i
//        ||beta||_* <= lambda.
//
// Eliminating the slacks leaves
//
//   F(beta, lambda) = lambda * eps
//                   + (1/N) sum_i [ logloss_i(beta) + max(0, m_i - lambda * kappa) ]
//
// over the epigraph cone of the dual norm, with margins m_i = y_i <beta, x_i>
// (logloss(beta, x, -y) - logloss(beta, x, y) = m exactly). Three numerical
// methods are provided:
//
//  * kBarrier (default): a log-barrier interior-point method on the
//    equivalent program with one auxiliary variable per sample for the max
//    term. Newton steps eliminate the auxiliaries by a Schur complement, so
//    each step costs O(N p^2) with p <= 2n + 1.
//  * kSmoothed: the max is replaced by tau * softplus((m - lambda kappa) / tau)
//    and the smooth problem is solved by accelerated projected gradient
//    (FISTA with adaptive restart), with tau driven from tau_initial down to
//    tau_final. The smoothing bias is at most tau * log(2) per sample.
//  * kSubgradient: projected subgradient on F itself with diminishing steps
//    and best-iterate tracking.
//
// eps == 0 is solved directly as classical logistic regression (damped
// Newton under kBarrier, FISTA otherwise), and kappa == +inf as
// logloss + eps * ||beta||_* with lambda = ||beta||_*.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drlr/model_core.hpp"

namespace drlr {

enum class SolverMethod { kBarrier, kSmoothed, kSubgradient };
enum class StepRule { kFixed, kBacktracking };

std::string_view ToString(SolverMethod method);
std::string_view ToString(StepRule rule);
SolverMethod ParseSolverMethod(std::string_view text);
StepRule ParseStepRule(std::string_view text);

struct TrainConfig {
  double epsilon = 0.0;
  MetricParams metric;
  int max_iters = 50000;
  // First-order methods stop when the objective decrease over `patience`
  // iterations falls below obj_tol * max(1, |objective|). The barrier method
  // stops when its duality-gap bound falls below the same quantity.
  double obj_tol = 1e-8;
  int patience = 50;
  double feas_tol = 1e-8;
  StepRule step_rule = StepRule::kBacktracking;
  SolverMethod method = SolverMethod::kBarrier;
  double tau_initial = 1e-1;
  double tau_final = 1e-5;
  // Iterates with ||beta||_2 above this are scaled back and flagged; classical
  // logistic regression has no finite minimizer on separable data.
  double beta_cap = 1e6;

  void Validate() const;
};

// "classical" (eps == 0), "regularized" (kappa == inf) or "drlr".
std::string ModeName(const TrainConfig& config);

struct TrainedModel {
  Vector beta;
  double lambda = 0.0;
  Vector slacks;
  double j_hat = 0.0;
  TrainConfig config;

  bool converged = false;
  bool hit_beta_cap = false;
  int iterations = 0;
};

struct LossDecomposition {
  double reg_term = 0.0;
  double empirical_logloss = 0.0;
  double label_uncertainty_term = 0.0;

  double total() const {
    return reg_term + empirical_logloss + label_uncertainty_term;
  }
};

// Eliminated objective F(beta, lambda). Does not check the cone constraint.
double WorstCaseObjective(const Dataset& data, double epsilon,
                          const MetricParams& metric, ConstSpan beta,
                          double lambda);

// Solves the robust program. Throws on invalid configuration. A run that
// exhausts max_iters returns with converged == false.
TrainedModel TrainDrlr(const Dataset& data, const TrainConfig& config,
                       const TrainedModel* warm_start = nullptr);

// eps == 0.
TrainedModel TrainClassical(const Dataset& data, TrainConfig config = {});
// kappa == inf; the penalty is eps * ||beta||_* with the dual of `norm`.
TrainedModel TrainRegularized(const Dataset& data, double epsilon,
                              NormKind norm, TrainConfig config = {});

// Fits every radius in `epsilons` (any order), warm-starting each fit from the
// solution at the nearest smaller radius. Output order matches the input.
std::vector<TrainedModel> TrainPath(const Dataset& data,
                                    const TrainConfig& config,
                                    std::span<const double> epsilons);

// lambda * eps + empirical logloss + label-uncertainty term. Their sum is the
// worst-case loss evaluated at the model's (beta, lambda).
LossDecomposition DecomposeWorstCaseLoss(const TrainedModel& model,
                                         const Dataset& data);

}  // namespace drlr
