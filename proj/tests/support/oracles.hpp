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

// Reference solvers used only as test oracles. They share the Dataset
// container with the library but none of its numerical code.

#pragma once

#include <utility>
#include <vector>

#include "drlr/model_core.hpp"

namespace oracle {

using drlr::Dataset;
using drlr::NormKind;
using Vec = std::vector<double>;

double Softplus(double u);
double Margin(const Vec& beta, const Dataset& data, std::size_t i);
// ||v||_* for the dual of the feature norm.
double DualNorm(const Vec& v, NormKind feature_norm);

// Worst-case loss for n = 1 by search over a beta grid of spacing `step` on
// [-range, range]; for each beta the objective is piecewise linear and convex
// in lambda, so lambda is minimized exactly over its breakpoints. The best
// grid point is refined by golden-section search.
struct GridResult {
  double value;
  double beta;
  double lambda;
};
GridResult GridWorstCaseLoss1D(const Dataset& data, double eps, double kappa,
                               double range = 50.0, double step = 1e-3);
// Same objective at a given (beta, lambda) straight from the program with
// slacks: lambda eps + mean max(ll(beta, x, y), ll(beta, x, -y) - lambda kappa).
double WorstCaseObjective(const Dataset& data, double eps, double kappa,
                          const Vec& beta, double lambda);

struct Fit {
  Vec beta;
  double objective;
  int iterations;
  bool converged;
};
// Mean logloss by accelerated gradient descent with restarts.
Fit GradientDescentLogistic(const Dataset& data, double grad_tol = 1e-10,
                            int max_iters = 2000000);
// eps * ||beta||_* + mean logloss by FISTA with the exact prox of the dual
// norm of `feature_norm`.
Fit ProximalRegularized(const Dataset& data, double eps, NormKind feature_norm,
                        double tol = 1e-11, int max_iters = 2000000);

// min c'x s.t. A x <= b, x >= 0 by a dense two-phase simplex (Bland's rule).
struct LpResult {
  bool feasible = false;
  bool bounded = false;
  double value = 0.0;
  Vec x;
};
LpResult SolveLp(const Vec& c, const std::vector<Vec>& a, const Vec& b);
// Worst-case (best_case == false) risk, or best-case risk, built as the dense
// LP in (lambda, s, r, t) and solved with SolveLp.
double RiskLp(const Vec& beta, const Dataset& data, double eps,
              NormKind feature_norm, double kappa, bool best_case);
// Reduced one-dimensional risk objective evaluated on a uniform lambda grid.
double RiskLambdaGrid(const Vec& beta, const Dataset& data, double eps,
                      NormKind feature_norm, double kappa, bool best_case,
                      double lambda_hi, double step);
double RiskReducedAt(const Vec& beta, const Dataset& data, double eps,
                     NormKind feature_norm, double kappa, bool best_case,
                     double lambda);

// Nearest point of the dual-norm epigraph to (beta, lambda) for 2-vectors
// by a grid over beta in [-r, r]^2 with r = ||(beta, lambda)||.
std::pair<Vec, double> ProjectEpigraphGrid(const Vec& beta, double lambda,
                                           NormKind feature_norm,
                                           int cells = 1000);

}  // namespace oracle
