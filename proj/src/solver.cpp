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

#include "drlr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "barrier.hpp"

namespace drlr {

std::string_view ToString(SolverMethod method) {
  switch (method) {
    case SolverMethod::kBarrier:
      return "barrier";
    case SolverMethod::kSmoothed:
      return "smoothed";
    case SolverMethod::kSubgradient:
      return "subgradient";
  }
  return "barrier";
}

std::string_view ToString(StepRule rule) {
  return rule == StepRule::kFixed ? "fixed" : "backtracking";
}

SolverMethod ParseSolverMethod(std::string_view text) {
  if (text == "barrier") return SolverMethod::kBarrier;
  if (text == "smoothed") return SolverMethod::kSmoothed;
  if (text == "subgradient") return SolverMethod::kSubgradient;
  Fail(ErrorCode::kInvalidArgument,
       "unknown solver method '" + std::string(text) + "'");
}

StepRule ParseStepRule(std::string_view text) {
  if (text == "fixed") return StepRule::kFixed;
  if (text == "backtracking") return StepRule::kBacktracking;
  Fail(ErrorCode::kInvalidArgument,
       "unknown step rule '" + std::string(text) + "'");
}

void TrainConfig::Validate() const {
  if (!(epsilon >= 0.0) || std::isinf(epsilon)) {
    Fail(ErrorCode::kInvalidArgument, "epsilon must be finite and >= 0");
  }
  metric.Validate();
  Require(max_iters > 0, ErrorCode::kInvalidArgument, "max_iters must be > 0");
  Require(patience > 0, ErrorCode::kInvalidArgument, "patience must be > 0");
  Require(obj_tol > 0.0, ErrorCode::kInvalidArgument, "obj_tol must be > 0");
  Require(feas_tol > 0.0, ErrorCode::kInvalidArgument, "feas_tol must be > 0");
  Require(tau_final > 0.0 && tau_initial >= tau_final,
          ErrorCode::kInvalidArgument,
          "smoothing schedule needs 0 < tau_final <= tau_initial");
  Require(beta_cap > 0.0, ErrorCode::kInvalidArgument, "beta_cap must be > 0");
}

std::string ModeName(const TrainConfig& config) {
  if (config.epsilon == 0.0) return "classical";
  if (config.metric.kappa_infinite()) return "regularized";
  return "drlr";
}

namespace {

// Label-folded design matrix: row i holds y_i * x_i, so margins are Y X beta.
class Samples {
 public:
  explicit Samples(const Dataset& data)
      : n_(data.dim()), count_(data.size()), rows_(count_ * n_) {
    for (std::size_t i = 0; i < count_; ++i) {
      const double s = Sign(data.y(i));
      const ConstSpan x = data.x(i);
      for (std::size_t j = 0; j < n_; ++j) rows_[i * n_ + j] = s * x[j];
      sum_row_sq_ += std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    }
  }

  std::size_t dim() const { return n_; }
  std::size_t count() const { return count_; }
  double mean_row_sq() const { return sum_row_sq_ / count_; }

  void Margins(ConstSpan beta, Vector& m) const {
    m.resize(count_);
    for (std::size_t i = 0; i < count_; ++i) {
      const double* row = rows_.data() + i * n_;
      double acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) acc += row[j] * beta[j];
      m[i] = acc;
    }
  }

  // out[j] = (1/N) sum_i w_i * row_i[j]
  void WeightedMean(const Vector& w, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < count_; ++i) {
      if (w[i] == 0.0) continue;
      const double* row = rows_.data() + i * n_;
      for (std::size_t j = 0; j < n_; ++j) out[j] += w[i] * row[j];
    }
    for (double& e : out) e /= static_cast<double>(count_);
  }

 private:
  std::size_t n_;
  std::size_t count_;
  Vector rows_;
  double sum_row_sq_ = 0.0;
};

double MeanSoftplusNeg(const Vector& m) {
  double acc = 0.0;
  for (double v : m) acc += Softplus(-v);
  return acc / static_cast<double>(m.size());
}

double Norm2(ConstSpan v) { return NormValue(v, NormKind::kL2); }

// Subgradient of the dual norm of `norm` at v (deterministic choice at kinks).
Vector DualNormSubgradient(ConstSpan v, NormKind norm) {
  Vector g(v.size(), 0.0);
  switch (Dual(norm)) {
    case NormKind::kL1:
      for (std::size_t j = 0; j < v.size(); ++j) {
        g[j] = v[j] > 0.0 ? 1.0 : (v[j] < 0.0 ? -1.0 : 0.0);
      }
      break;
    case NormKind::kL2: {
      const double r = Norm2(v);
      if (r > 0.0) {
        for (std::size_t j = 0; j < v.size(); ++j) g[j] = v[j] / r;
      }
      break;
    }
    case NormKind::kLinf: {
      std::size_t arg = 0;
      for (std::size_t j = 1; j < v.size(); ++j) {
        if (std::abs(v[j]) > std::abs(v[arg])) arg = j;
      }
      if (v[arg] != 0.0) g[arg] = v[arg] > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  return g;
}

// Projection onto the l1 ball of the given radius (sort-based).
Vector ProjectL1Ball(ConstSpan v, double radius) {
  if (NormValue(v, NormKind::kL1) <= radius) return {v.begin(), v.end()};
  Vector mags(v.size());
  std::transform(v.begin(), v.end(), mags.begin(),
                 [](double e) { return std::abs(e); });
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    cumulative += mags[k];
    const double candidate = (cumulative - radius) / static_cast<double>(k + 1);
    if (mags[k] > candidate) theta = candidate;
  }
  Vector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double shrunk = std::max(std::abs(v[j]) - theta, 0.0);
    out[j] = v[j] >= 0.0 ? shrunk : -shrunk;
  }
  return out;
}

// prox of t * ||.||_* where ||.||_* is the dual of `norm`.
Vector ProxDualNorm(ConstSpan v, double t, NormKind norm) {
  Vector out(v.begin(), v.end());
  switch (Dual(norm)) {
    case NormKind::kL1:
      for (double& e : out) {
        const double shrunk = std::max(std::abs(e) - t, 0.0);
        e = e >= 0.0 ? shrunk : -shrunk;
      }
      break;
    case NormKind::kL2: {
      const double r = Norm2(v);
      const double scale = r > t ? 1.0 - t / r : 0.0;
      for (double& e : out) e *= scale;
      break;
    }
    case NormKind::kLinf: {
      // Moreau: prox_{t||.||_inf}(v) = v - P_{t B_1}(v).
      const Vector p = ProjectL1Ball(v, t);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] -= p[j];
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Objectives. Each exposes the smooth part with gradient, the nonsmooth part
// with its prox, a global Lipschitz bound, the exact objective with a
// subgradient, and the feasible-set projection used by the subgradient method.

class ClassicalObjective {
 public:
  explicit ClassicalObjective(const Samples& s) : s_(s) {}

  std::size_t size() const { return s_.dim(); }

  double Smooth(const Vector& beta, Vector* grad) const {
    s_.Margins(beta, m_);
    if (grad != nullptr) {
      w_.resize(m_.size());
      for (std::size_t i = 0; i < m_.size(); ++i) w_[i] = -Logistic(-m_[i]);
      grad->resize(size());
      s_.WeightedMean(w_, *grad);
    }
    return MeanSoftplusNeg(m_);
  }
  double Nonsmooth(const Vector&) const { return 0.0; }
  Vector Prox(Vector v, double) const { return v; }
  double Lipschitz() const { return 0.25 * s_.mean_row_sq(); }

  double Exact(const Vector& beta) const { return Smooth(beta, nullptr); }
  Vector Subgradient(const Vector& beta) const {
    Vector g;
    Smooth(beta, &g);
    return g;
  }
  Vector Project(Vector v) const { return v; }

 private:
  const Samples& s_;
  mutable Vector m_, w_;
};

class RegularizedObjective {
 public:
  RegularizedObjective(const Samples& s, double epsilon, NormKind norm)
      : base_(s), epsilon_(epsilon), norm_(norm) {}

  std::size_t size() const { return base_.size(); }

  double Smooth(const Vector& beta, Vector* grad) const {
    return base_.Smooth(beta, grad);
  }
  double Nonsmooth(const Vector& beta) const {
    return epsilon_ * DualNorm(beta, norm_);
  }
  Vector Prox(Vector v, double step) const {
    return ProxDualNorm(v, step * epsilon_, norm_);
  }
  double Lipschitz() const { return base_.Lipschitz(); }

  double Exact(const Vector& beta) const {
    return Smooth(beta, nullptr) + Nonsmooth(beta);
  }
  Vector Subgradient(const Vector& beta) const {
    Vector g;
    Smooth(beta, &g);
    const Vector d = DualNormSubgradient(beta, norm_);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += epsilon_ * d[j];
    return g;
  }
  Vector Project(Vector v) const { return v; }

 private:
  ClassicalObjective base_;
  double epsilon_;
  NormKind norm_;
};

// Variables z = (beta, lambda).
class DrlrObjective {
 public:
  DrlrObjective(const Samples& s, double epsilon, const MetricParams& metric)
      : s_(s), epsilon_(epsilon), metric_(metric) {}

  std::size_t size() const { return s_.dim() + 1; }
  void set_tau(double tau) { tau_ = tau; }

  double Smooth(const Vector& z, Vector* grad) const {
    const std::size_t n = s_.dim();
    const double lambda = z[n];
    const double kappa = metric_.kappa;
    s_.Margins(ConstSpan(z.data(), n), m_);
    double acc = 0.0;
    w_.resize(m_.size());
    double flip_weight = 0.0;
    for (std::size_t i = 0; i < m_.size(); ++i) {
      const double u = (m_[i] - lambda * kappa) / tau_;
      acc += Softplus(-m_[i]) + tau_ * Softplus(u);
      const double active = Logistic(u);
      w_[i] = -Logistic(-m_[i]) + active;
      flip_weight += active;
    }
    const double count = static_cast<double>(m_.size());
    if (grad != nullptr) {
      grad->resize(size());
      s_.WeightedMean(w_, std::span<double>(grad->data(), n));
      (*grad)[n] = epsilon_ - kappa * flip_weight / count;
    }
    return lambda * epsilon_ + acc / count;
  }
  double Nonsmooth(const Vector&) const { return 0.0; }
  Vector Prox(Vector v, double) const { return Project(std::move(v)); }
  double Lipschitz() const {
    const double rows = s_.mean_row_sq();
    const double k2 = metric_.kappa * metric_.kappa;
    return 0.25 * (rows + (rows + k2) / tau_);
  }

  double Exact(const Vector& z) const {
    const std::size_t n = s_.dim();
    const double lambda = z[n];
    s_.Margins(ConstSpan(z.data(), n), m_);
    double acc = 0.0;
    for (double m : m_) {
      acc += Softplus(-m) + std::max(0.0, m - lambda * metric_.kappa);
    }
    return lambda * epsilon_ + acc / static_cast<double>(m_.size());
  }
  Vector Subgradient(const Vector& z) const {
    const std::size_t n = s_.dim();
    const double lambda = z[n];
    s_.Margins(ConstSpan(z.data(), n), m_);
    w_.resize(m_.size());
    double flip_weight = 0.0;
    for (std::size_t i = 0; i < m_.size(); ++i) {
      const double gap = m_[i] - lambda * metric_.kappa;
      // Both branches active: take the midpoint of the two gradients.
      const double active = gap > 0.0 ? 1.0 : (gap == 0.0 ? 0.5 : 0.0);
      w_[i] = -Logistic(-m_[i]) + active;
      flip_weight += active;
    }
    Vector g(size());
    s_.WeightedMean(w_, std::span<double>(g.data(), n));
    g[n] = epsilon_ - metric_.kappa * flip_weight / static_cast<double>(m_.size());
    return g;
  }
  Vector Project(Vector v) const {
    const std::size_t n = s_.dim();
    auto [beta, lambda] =
        ProjectEpigraph(ConstSpan(v.data(), n), v[n], metric_.norm);
    std::copy(beta.begin(), beta.end(), v.begin());
    v[n] = lambda;
    return v;
  }

 private:
  const Samples& s_;
  double epsilon_;
  MetricParams metric_;
  double tau_ = 1e-1;
  mutable Vector m_, w_;
};

// ---------------------------------------------------------------------------
// Iteration engines.

struct Budget {
  int max_iters = 0;
  int patience = 50;
  double tol = 1e-8;
  bool backtracking = true;
  double beta_cap = 1e6;
  std::size_t beta_dim = 0;
};

struct RunStats {
  int iterations = 0;
  bool converged = false;
  bool hit_beta_cap = false;
};

bool CapBeta(Vector& z, const Budget& budget) {
  const ConstSpan beta(z.data(), budget.beta_dim);
  const double r = Norm2(beta);
  if (r <= budget.beta_cap) return false;
  const double scale = budget.beta_cap / r;
  for (std::size_t j = 0; j < budget.beta_dim; ++j) z[j] *= scale;
  return true;
}

bool Stalled(const std::vector<double>& history, int patience, double tol) {
  if (history.size() <= static_cast<std::size_t>(patience)) return false;
  const double now = history.back();
  const double then = history[history.size() - 1 - patience];
  return then - now <= tol * std::max(1.0, std::abs(now));
}

// Monotone FISTA: a step that increases the composite objective is rejected
// and the momentum restarted from the last accepted point.
template <class Objective>
RunStats RunFista(const Objective& obj, Vector& z, const Budget& budget,
                  double& lipschitz) {
  RunStats stats;
  const std::size_t dim = obj.size();
  Vector y = z;
  Vector grad(dim), trial(dim), diff(dim);
  double momentum = 1.0;
  double current = obj.Smooth(z, nullptr) + obj.Nonsmooth(z);
  std::vector<double> history{current};
  double L = budget.backtracking ? lipschitz : obj.Lipschitz();

  for (int it = 0; it < budget.max_iters; ++it) {
    stats.iterations = it + 1;
    const double fy = obj.Smooth(y, &grad);
    double f_trial = 0.0;
    for (int guard = 0;; ++guard) {
      for (std::size_t j = 0; j < dim; ++j) trial[j] = y[j] - grad[j] / L;
      trial = obj.Prox(std::move(trial), 1.0 / L);
      if (CapBeta(trial, budget)) stats.hit_beta_cap = true;
      f_trial = obj.Smooth(trial, nullptr);
      if (!budget.backtracking || guard > 60) break;
      double lin = 0.0, sq = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        diff[j] = trial[j] - y[j];
        lin += grad[j] * diff[j];
        sq += diff[j] * diff[j];
      }
      const double model = fy + lin + 0.5 * L * sq;
      if (f_trial <= model + 1e-12 * std::max(1.0, std::abs(f_trial))) break;
      L *= 2.0;
    }
    if (budget.backtracking) L *= 0.9;
    const double composite = f_trial + obj.Nonsmooth(trial);
    if (composite <= current) {
      const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      const double beta = (momentum - 1.0) / next;
      for (std::size_t j = 0; j < dim; ++j) {
        y[j] = trial[j] + beta * (trial[j] - z[j]);
      }
      z = trial;
      momentum = next;
      current = composite;
    } else {
      y = z;
      momentum = 1.0;
    }
    history.push_back(current);
    if (Stalled(history, budget.patience, budget.tol)) {
      stats.converged = true;
      break;
    }
  }
  lipschitz = L;
  return stats;
}

// Projected subgradient with normalized diminishing steps
// alpha_k = alpha0 / sqrt(k + 1). Under kBacktracking the step scale is halved
// and the iteration restarted from the best point whenever the best value has
// not improved over a window; the run converges once the scale collapses.
template <class Objective>
RunStats RunSubgradient(const Objective& obj, Vector& z, const Budget& budget,
                        double initial_step) {
  RunStats stats;
  Vector best = z;
  double best_value = obj.Exact(z);
  std::vector<double> history{best_value};
  double alpha0 = initial_step;
  int k = 0;
  int since_improvement = 0;
  const int window = 4 * budget.patience;

  for (int it = 0; it < budget.max_iters; ++it) {
    stats.iterations = it + 1;
    const Vector g = obj.Subgradient(z);
    const double gnorm = Norm2(g);
    if (gnorm == 0.0) {
      stats.converged = true;
      break;
    }
    const double step = alpha0 / std::sqrt(static_cast<double>(k + 1)) / gnorm;
    for (std::size_t j = 0; j < z.size(); ++j) z[j] -= step * g[j];
    z = obj.Project(std::move(z));
    if (CapBeta(z, budget)) stats.hit_beta_cap = true;
    ++k;

    const double value = obj.Exact(z);
    if (value < best_value) {
      best_value = value;
      best = z;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    history.push_back(best_value);

    if (budget.backtracking) {
      if (since_improvement >= window) {
        alpha0 *= 0.5;
        k = 0;
        z = best;
        since_improvement = 0;
        if (alpha0 < 1e-10 * std::max(1.0, Norm2(best))) {
          stats.converged = true;
          break;
        }
      }
    } else if (Stalled(history, 20 * budget.patience, budget.tol)) {
      stats.converged = true;
      break;
    }
  }
  z = best;
  return stats;
}

// ---------------------------------------------------------------------------

TrainedModel Finish(const Dataset& data, const TrainConfig& config,
                    Vector beta, double lambda, const RunStats& stats) {
  TrainedModel model;
  model.config = config;
  model.converged = stats.converged;
  model.hit_beta_cap = stats.hit_beta_cap;
  model.iterations = stats.iterations;

  Vector margins(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    margins[i] = Sign(data.y(i)) * Dot(beta, data.x(i));
  }

  const bool flip_free =
      config.epsilon == 0.0 || config.metric.kappa_infinite();
  if (flip_free) {
    lambda = DualNorm(beta, config.metric.norm);
    if (config.epsilon == 0.0 && !config.metric.kappa_infinite()) {
      // Any lambda with lambda * kappa >= max margin keeps the flip branch
      // inactive; at eps == 0 it costs nothing.
      const double top = *std::max_element(margins.begin(), margins.end());
      lambda = std::max(lambda, top / config.metric.kappa);
    }
  }
  lambda = std::max(lambda, 0.0);

  model.slacks.resize(data.size());
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double s = Softplus(-margins[i]);
    if (!config.metric.kappa_infinite()) {
      s = std::max(s, Softplus(margins[i]) - lambda * config.metric.kappa);
    }
    model.slacks[i] = s;
    total += s;
  }
  model.beta = std::move(beta);
  model.lambda = lambda;
  model.j_hat = lambda * config.epsilon + total / static_cast<double>(data.size());
  return model;
}

Budget MakeBudget(const TrainConfig& config, std::size_t beta_dim) {
  Budget b;
  b.max_iters = config.max_iters;
  b.patience = config.patience;
  b.tol = config.obj_tol;
  b.backtracking = config.step_rule == StepRule::kBacktracking;
  b.beta_cap = config.beta_cap;
  b.beta_dim = beta_dim;
  return b;
}

template <class Objective>
RunStats Minimize(const Objective& obj, Vector& z, const TrainConfig& config,
                  std::size_t beta_dim) {
  const Budget budget = MakeBudget(config, beta_dim);
  if (config.method == SolverMethod::kSubgradient) {
    return RunSubgradient(obj, z, budget, 1.0);
  }
  double lipschitz = std::min(obj.Lipschitz(), 1.0);
  return RunFista(obj, z, budget, lipschitz);
}

TrainedModel SolveFlipFree(const Dataset& data, const Samples& samples,
                           const TrainConfig& config, Vector beta) {
  RunStats stats;
  if (config.epsilon == 0.0) {
    stats = Minimize(ClassicalObjective(samples), beta, config, data.dim());
  } else {
    stats = Minimize(
        RegularizedObjective(samples, config.epsilon, config.metric.norm),
        beta, config, data.dim());
  }
  return Finish(data, config, std::move(beta), 0.0, stats);
}

TrainedModel SolveNewton(const Dataset& data, const TrainConfig& config,
                         const Vector& beta) {
  internal::NewtonOptions options;
  options.max_steps = config.max_iters;
  options.gap_tol = config.obj_tol;
  options.beta_cap = config.beta_cap;
  const internal::NewtonOutcome out =
      config.epsilon == 0.0
          ? internal::SolveLogisticNewton(data, beta, options)
          : internal::SolveBarrier(data, config.epsilon, config.metric, beta,
                                   options);
  RunStats stats;
  stats.iterations = out.steps;
  stats.converged = out.converged;
  stats.hit_beta_cap = out.hit_beta_cap;
  return Finish(data, config, out.beta, out.lambda, stats);
}

TrainedModel SolveDrlr(const Dataset& data, const Samples& samples,
                       const TrainConfig& config, Vector z, bool warm) {
  const std::size_t n = data.dim();
  DrlrObjective obj(samples, config.epsilon, config.metric);
  z = obj.Project(std::move(z));

  if (config.method == SolverMethod::kSubgradient) {
    const RunStats stats = RunSubgradient(obj, z, MakeBudget(config, n), 1.0);
    const double lambda = z[n];
    z.resize(n);
    return Finish(data, config, std::move(z), lambda, stats);
  }

  // Smoothing continuation. Intermediate stages only need to land near the
  // smoothed optimum; the last one runs to the configured tolerance.
  double tau = warm ? std::max(config.tau_final, config.tau_initial * 1e-2)
                    : config.tau_initial;
  RunStats total;
  int remaining = config.max_iters;
  obj.set_tau(tau);
  double lipschitz = std::min(obj.Lipschitz(), 1.0);
  Vector best = z;
  double best_value = obj.Exact(z);
  for (;;) {
    obj.set_tau(tau);
    const bool last = tau <= config.tau_final * (1.0 + 1e-12);
    Budget budget = MakeBudget(config, n);
    budget.max_iters = remaining;
    budget.tol = last ? config.obj_tol
                      : std::max(config.obj_tol, 0.01 * tau);
    const RunStats stage = RunFista(obj, z, budget, lipschitz);
    remaining -= stage.iterations;
    total.iterations += stage.iterations;
    total.hit_beta_cap = total.hit_beta_cap || stage.hit_beta_cap;
    const double value = obj.Exact(z);
    if (value <= best_value) {
      best_value = value;
      best = z;
    }
    if (last) {
      total.converged = stage.converged;
      break;
    }
    if (remaining <= 0) break;
    tau = std::max(config.tau_final, tau * 0.1);
  }
  const double lambda = best[n];
  best.resize(n);
  return Finish(data, config, std::move(best), lambda, total);
}

}  // namespace

double WorstCaseObjective(const Dataset& data, double epsilon,
                          const MetricParams& metric, ConstSpan beta,
                          double lambda) {
  Require(beta.size() == data.dim(), ErrorCode::kDimensionMismatch,
          "objective: beta dimension does not match data");
  double acc = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double m = Sign(data.y(i)) * Dot(beta, data.x(i));
    acc += Softplus(-m);
    if (!metric.kappa_infinite()) {
      acc += std::max(0.0, m - lambda * metric.kappa);
    }
  }
  return lambda * epsilon + acc / static_cast<double>(data.size());
}

TrainedModel TrainDrlr(const Dataset& data, const TrainConfig& config,
                       const TrainedModel* warm_start) {
  config.Validate();
  const std::size_t n = data.dim();
  if (warm_start != nullptr) {
    Require(warm_start->beta.size() == n, ErrorCode::kDimensionMismatch,
            "warm start dimension does not match data");
  }
  const Samples samples(data);

  Vector beta = warm_start ? warm_start->beta : Vector(n, 0.0);
  if (config.method == SolverMethod::kBarrier) {
    return SolveNewton(data, config, beta);
  }
  if (config.epsilon == 0.0 || config.metric.kappa_infinite()) {
    return SolveFlipFree(data, samples, config, std::move(beta));
  }
  Vector z = std::move(beta);
  z.push_back(warm_start ? warm_start->lambda : 0.0);
  return SolveDrlr(data, samples, config, std::move(z), warm_start != nullptr);
}

TrainedModel TrainClassical(const Dataset& data, TrainConfig config) {
  config.epsilon = 0.0;
  return TrainDrlr(data, config);
}

TrainedModel TrainRegularized(const Dataset& data, double epsilon,
                              NormKind norm, TrainConfig config) {
  config.epsilon = epsilon;
  config.metric.norm = norm;
  config.metric.kappa = kInfinity;
  return TrainDrlr(data, config);
}

std::vector<TrainedModel> TrainPath(const Dataset& data,
                                    const TrainConfig& config,
                                    std::span<const double> epsilons) {
  std::vector<std::size_t> order(epsilons.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return epsilons[a] < epsilons[b];
  });
  std::vector<TrainedModel> out(epsilons.size());
  const TrainedModel* previous = nullptr;
  for (std::size_t idx : order) {
    TrainConfig c = config;
    c.epsilon = epsilons[idx];
    // The eps == 0 solution is a poor start (possibly unbounded), so only
    // robust fits seed their successors.
    out[idx] = TrainDrlr(data, c, previous);
    if (c.epsilon > 0.0) previous = &out[idx];
  }
  return out;
}

LossDecomposition DecomposeWorstCaseLoss(const TrainedModel& model,
                                         const Dataset& data) {
  Require(model.beta.size() == data.dim(), ErrorCode::kDimensionMismatch,
          "decomposition: model and data dimensions differ");
  const MetricParams& metric = model.config.metric;
  LossDecomposition d;
  d.reg_term = model.lambda * model.config.epsilon;
  double logloss = 0.0;
  double flips = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double m = Sign(data.y(i)) * Dot(model.beta, data.x(i));
    logloss += Softplus(-m);
    if (!metric.kappa_infinite()) {
      flips += std::max(0.0, m - model.lambda * metric.kappa);
    }
  }
  const double count = static_cast<double>(data.size());
  d.empirical_logloss = logloss / count;
  d.label_uncertainty_term = flips / count;
  return d;
}

}  // namespace drlr
