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

// Second-order solvers used by TrainDrlr for SolverMethod::kBarrier.

#pragma once

#include "drlr/model_core.hpp"

namespace drlr::internal {

struct NewtonOptions {
  int max_steps = 50000;
  // Barrier path stops once the duality-gap bound drops below
  // gap_tol * max(1, |objective|).
  double gap_tol = 1e-8;
  double beta_cap = 1e6;
};

struct NewtonOutcome {
  Vector beta;
  double lambda = 0.0;
  int steps = 0;
  bool converged = false;
  bool hit_beta_cap = false;
};

// Log-barrier path-following method on
//
//   min  lambda eps + (1/N) sum_i [ softplus(-m_i) + u_i ]
//   s.t. u_i >= 0,  u_i >= m_i - lambda kappa,  ||beta||_* <= lambda
//
// (the u block is absent when kappa is infinite). Requires eps > 0.
NewtonOutcome SolveBarrier(const Dataset& data, double epsilon,
                           const MetricParams& metric, const Vector& start,
                           const NewtonOptions& options);

// Damped Newton on the average logloss. Stops on a small Newton decrement,
// or flags hit_beta_cap when ||beta||_2 would exceed the cap.
NewtonOutcome SolveLogisticNewton(const Dataset& data, const Vector& start,
                                  const NewtonOptions& options);

}  // namespace drlr::internal
