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

#include "barrier.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace drlr::internal {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Variables: w = (beta, lambda[, v]) and, for finite kappa, one u per sample.
// With the l1 dual norm, v_j bounds |beta_j| and sum_j v_j <= lambda.
class BarrierProblem {
 public:
  BarrierProblem(const Dataset& data, double epsilon, const MetricParams& metric)
      : n_(data.dim()),
        count_(data.size()),
        epsilon_(epsilon),
        kappa_(metric.kappa),
        has_u_(!metric.kappa_infinite()),
        dual_(Dual(metric.norm)),
        p_(n_ + 1 + (dual_ == NormKind::kL1 ? n_ : 0)),
        rows_(count_, n_) {
    for (std::size_t i = 0; i < count_; ++i) {
      const double s = Sign(data.y(i));
      for (std::size_t j = 0; j < n_; ++j) rows_(i, j) = s * data.x(i)[j];
    }
  }

  std::size_t w_size() const { return p_; }
  std::size_t u_size() const { return has_u_ ? count_ : 0; }

  // Barrier parameter: total number of log terms (the second-order cone
  // contributes 2).
  double Degree() const {
    double cone = 0.0;
    switch (dual_) {
      case NormKind::kL2: cone = 2.0; break;
      case NormKind::kLinf: cone = 2.0 * n_; break;
      case NormKind::kL1: cone = 2.0 * n_ + 1.0; break;
    }
    return cone + (has_u_ ? 2.0 * count_ : 0.0);
  }

  // Strictly feasible start near beta.
  void Start(const Vector& beta, VectorXd& w, VectorXd& u) const {
    w = VectorXd::Zero(p_);
    for (std::size_t j = 0; j < n_; ++j) w[j] = beta[j];
    double lambda = 0.0;
    switch (dual_) {
      case NormKind::kL2: lambda = NormValue(beta, NormKind::kL2) + 1.0; break;
      case NormKind::kLinf: lambda = NormValue(beta, NormKind::kLinf) + 1.0; break;
      case NormKind::kL1: {
        double sum = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
          w[n_ + 1 + j] = std::abs(beta[j]) + 1.0 / static_cast<double>(n_);
          sum += w[n_ + 1 + j];
        }
        lambda = sum + 1.0;
        break;
      }
    }
    w[n_] = lambda;
    u.resize(u_size());
    if (has_u_) {
      const VectorXd m = rows_ * w.head(n_);
      for (std::size_t i = 0; i < count_; ++i) {
        u[i] = std::max(0.0, m[i] - kappa_ * lambda) + 1.0;
      }
    }
  }

  double Objective(const VectorXd& w, const VectorXd& u, const VectorXd& m) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < count_; ++i) acc += Softplus(-m[i]);
    if (has_u_) acc += u.sum();
    return epsilon_ * w[n_] + acc / static_cast<double>(count_);
  }

  // t * objective + barrier, or +inf outside the domain.
  double Potential(double t, const VectorXd& w, const VectorXd& u) const {
    const VectorXd m = rows_ * w.head(n_);
    double barrier = 0.0;
    if (!ConeBarrier(w, &barrier, nullptr, nullptr)) return kInfinity;
    if (has_u_) {
      const double lambda = w[n_];
      for (std::size_t i = 0; i < count_; ++i) {
        const double g = u[i] - m[i] + kappa_ * lambda;
        if (!(u[i] > 0.0) || !(g > 0.0)) return kInfinity;
        barrier -= std::log(u[i]) + std::log(g);
      }
    }
    return t * Objective(w, u, m) + barrier;
  }

  // Newton direction for the centering problem; returns the squared Newton
  // decrement.
  double Direction(double t, const VectorXd& w, const VectorXd& u,
                   VectorXd& dw, VectorXd& du) const {
    const double count = static_cast<double>(count_);
    const VectorXd m = rows_ * w.head(n_);
    const double lambda = w[n_];

    VectorXd grad = VectorXd::Zero(p_);
    MatrixXd hess = MatrixXd::Zero(p_, p_);
    double unused = 0.0;
    ConeBarrier(w, &unused, &grad, &hess);

    // Logloss part: weights on the beta block.
    VectorXd beta_grad_w(count_), beta_hess_w(count_);
    for (std::size_t i = 0; i < count_; ++i) {
      const double s = Logistic(-m[i]);
      beta_grad_w[i] = -t * s / count;
      beta_hess_w[i] = t * s * (1.0 - s) / count;
    }
    grad[n_] += t * epsilon_;

    VectorXd gu(u_size());
    VectorXd u_scale(u_size());  // u^2 / (u^2 + g^2)
    if (has_u_) {
      // Each sample adds c_i = (-a_i, kappa) through g_i = u_i + c_i . w.
      for (std::size_t i = 0; i < count_; ++i) {
        const double g = u[i] - m[i] + kappa_ * lambda;
        gu[i] = t / count - 1.0 / u[i] - 1.0 / g;
        const double uu = u[i] * u[i];
        const double gg = g * g;
        const double reduced = 1.0 / (uu + gg);
        u_scale[i] = uu / (uu + gg);
        // Gradient of -log g wrt w is -c_i / g; the Schur correction adds
        // (h_i gu_i / D_i) c_i to the right-hand side, folded in below.
        const double coeff = -1.0 / g - u_scale[i] * gu[i];
        beta_grad_w[i] += -coeff;  // c_i has -a_i in the beta block
        grad[n_] += coeff * kappa_;
        beta_hess_w[i] += reduced;
        hess(n_, n_) += reduced * kappa_ * kappa_;
        const double cross = -reduced * kappa_;  // beta-lambda coupling
        for (std::size_t j = 0; j < n_; ++j) hess(j, n_) += cross * rows_(i, j);
      }
      for (std::size_t j = 0; j < n_; ++j) hess(n_, j) = hess(j, n_);
    }
    grad.head(n_) += rows_.transpose() * beta_grad_w;
    hess.topLeftCorner(n_, n_) +=
        rows_.transpose() * beta_hess_w.asDiagonal() * rows_;

    // grad now holds the reduced right-hand side with opposite sign.
    Eigen::LLT<MatrixXd> llt(hess);
    if (llt.info() != Eigen::Success) {
      const double ridge = 1e-12 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
      llt.compute(hess + ridge * MatrixXd::Identity(p_, p_));
    }
    dw = -llt.solve(grad);

    double decrement = 0.0;
    du.resize(u_size());
    if (has_u_) {
      const VectorXd cdw = -rows_ * dw.head(n_) +
                           VectorXd::Constant(count_, kappa_ * dw[n_]);
      for (std::size_t i = 0; i < count_; ++i) {
        const double g = u[i] - m[i] + kappa_ * lambda;
        const double h = 1.0 / (g * g);
        const double d = 1.0 / (u[i] * u[i]) + h;
        du[i] = -(gu[i] + h * cdw[i]) / d;
      }
    }
    // Full gradient dotted with the full step.
    VectorXd full_grad_w = FullGradientW(t, w, u, m);
    decrement = -(full_grad_w.dot(dw) + (has_u_ ? gu.dot(du) : 0.0));
    return decrement;
  }

  double Lambda(const VectorXd& w) const { return w[n_]; }
  Vector Beta(const VectorXd& w) const {
    return Vector(w.data(), w.data() + n_);
  }
  double ObjectiveAt(const VectorXd& w, const VectorXd& u) const {
    return Objective(w, u, rows_ * w.head(n_));
  }

 private:
  VectorXd FullGradientW(double t, const VectorXd& w, const VectorXd& u,
                         const VectorXd& m) const {
    const double count = static_cast<double>(count_);
    VectorXd grad = VectorXd::Zero(p_);
    double unused = 0.0;
    ConeBarrier(w, &unused, &grad, nullptr);
    VectorXd weights(count_);
    for (std::size_t i = 0; i < count_; ++i) {
      weights[i] = -t * Logistic(-m[i]) / count;
    }
    grad[n_] += t * epsilon_;
    if (has_u_) {
      for (std::size_t i = 0; i < count_; ++i) {
        const double g = u[i] - m[i] + kappa_ * w[n_];
        weights[i] += 1.0 / g;
        grad[n_] -= kappa_ / g;
      }
    }
    grad.head(n_) += rows_.transpose() * weights;
    return grad;
  }

  // Adds the cone barrier value, gradient and Hessian. Returns false outside
  // the open cone.
  bool ConeBarrier(const VectorXd& w, double* value, VectorXd* grad,
                   MatrixXd* hess) const {
    const double lambda = w[n_];
    // Log term for the slack a * w[j] + w[k] > 0 with a = +-1.
    auto pair = [&](double slack, std::size_t j, double a, std::size_t k) {
      *value -= std::log(slack);
      if (grad == nullptr) return;
      (*grad)[j] -= a / slack;
      (*grad)[k] -= 1.0 / slack;
      if (hess == nullptr) return;
      const double h = 1.0 / (slack * slack);
      (*hess)(j, j) += h;
      (*hess)(k, k) += h;
      (*hess)(j, k) += a * h;
      (*hess)(k, j) += a * h;
    };
    switch (dual_) {
      case NormKind::kL2: {
        const double b2 = w.head(n_).squaredNorm();
        const double s = lambda * lambda - b2;
        if (!(lambda > 0.0) || !(s > 0.0)) return false;
        *value -= std::log(s);
        if (grad != nullptr) {
          grad->head(n_) += 2.0 * w.head(n_) / s;
          (*grad)[n_] -= 2.0 * lambda / s;
        }
        if (hess != nullptr) {
          VectorXd ds(n_ + 1);
          ds.head(n_) = -2.0 * w.head(n_);
          ds[n_] = 2.0 * lambda;
          auto block = hess->topLeftCorner(n_ + 1, n_ + 1);
          block += ds * ds.transpose() / (s * s);
          for (std::size_t j = 0; j < n_; ++j) block(j, j) += 2.0 / s;
          block(n_, n_) -= 2.0 / s;
        }
        return true;
      }
      case NormKind::kLinf:
        for (std::size_t j = 0; j < n_; ++j) {
          const double lo = lambda + w[j];
          const double hi = lambda - w[j];
          if (!(lo > 0.0) || !(hi > 0.0)) return false;
          pair(lo, j, 1.0, n_);
          pair(hi, j, -1.0, n_);
        }
        return true;
      case NormKind::kL1: {
        double sum_v = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
          const std::size_t v = n_ + 1 + j;
          const double lo = w[v] + w[j];
          const double hi = w[v] - w[j];
          if (!(lo > 0.0) || !(hi > 0.0)) return false;
          pair(lo, j, 1.0, v);
          pair(hi, j, -1.0, v);
          sum_v += w[v];
        }
        // lambda - sum_j v_j > 0.
        const double top = lambda - sum_v;
        if (!(top > 0.0)) return false;
        *value -= std::log(top);
        if (grad != nullptr) {
          (*grad)[n_] -= 1.0 / top;
          for (std::size_t j = 0; j < n_; ++j) (*grad)[n_ + 1 + j] += 1.0 / top;
        }
        if (hess != nullptr) {
          VectorXd row = VectorXd::Zero(p_);
          row[n_] = 1.0;
          row.tail(n_).setConstant(-1.0);
          *hess += row * row.transpose() / (top * top);
        }
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::size_t count_;
  double epsilon_;
  double kappa_;
  bool has_u_;
  NormKind dual_;
  std::size_t p_;
  MatrixXd rows_;
};

}  // namespace

NewtonOutcome SolveBarrier(const Dataset& data, double epsilon,
                           const MetricParams& metric, const Vector& start,
                           const NewtonOptions& options) {
  const BarrierProblem problem(data, epsilon, metric);
  VectorXd w, u, dw, du;
  problem.Start(start, w, u);

  const double degree = problem.Degree();
  constexpr double kGrowth = 20.0;
  double t = degree / std::max(problem.ObjectiveAt(w, u), 1e-3);
  NewtonOutcome out;
  for (;;) {
    // Centering.
    for (int inner = 0; inner < 200 && out.steps < options.max_steps; ++inner) {
      const double decrement = problem.Direction(t, w, u, dw, du);
      // Past this the potential (of order t) cannot resolve further progress.
      if (!(decrement > 1e-8)) break;
      ++out.steps;
      const double base = problem.Potential(t, w, u);
      double step = 1.0;
      bool moved = false;
      for (int k = 0; k < 60; ++k, step *= 0.5) {
        const VectorXd w_try = w + step * dw;
        const VectorXd u_try = u + step * du;
        const double value = problem.Potential(t, w_try, u_try);
        if (value <= base - 0.01 * step * decrement) {
          w = w_try;
          u = u_try;
          moved = true;
          break;
        }
      }
      if (!moved) break;  // numerically centered
    }
    const double objective = problem.ObjectiveAt(w, u);
    if (degree / t <= options.gap_tol * std::max(1.0, std::abs(objective))) {
      out.converged = true;
      break;
    }
    if (out.steps >= options.max_steps) break;
    t *= kGrowth;
  }
  out.beta = problem.Beta(w);
  out.lambda = problem.Lambda(w);
  return out;
}

NewtonOutcome SolveLogisticNewton(const Dataset& data, const Vector& start,
                                  const NewtonOptions& options) {
  const std::size_t n = data.dim();
  const std::size_t count = data.size();
  MatrixXd rows(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = Sign(data.y(i));
    for (std::size_t j = 0; j < n; ++j) rows(i, j) = s * data.x(i)[j];
  }
  auto objective = [&](const VectorXd& beta) {
    const VectorXd m = rows * beta;
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += Softplus(-m[i]);
    return acc / static_cast<double>(count);
  };

  VectorXd beta = Eigen::Map<const VectorXd>(start.data(), n);
  double value = objective(beta);
  NewtonOutcome out;
  while (out.steps < options.max_steps) {
    const VectorXd m = rows * beta;
    VectorXd gw(count), hw(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double s = Logistic(-m[i]);
      gw[i] = -s / static_cast<double>(count);
      hw[i] = s * (1.0 - s) / static_cast<double>(count);
    }
    const VectorXd grad = rows.transpose() * gw;
    MatrixXd hess = rows.transpose() * hw.asDiagonal() * rows;
    // A tiny ridge keeps the system solvable when the data separate and the
    // curvature vanishes.
    hess.diagonal().array() += 1e-14 * std::max(1.0, hess.diagonal().maxCoeff());
    const VectorXd dir = -hess.ldlt().solve(grad);
    const double decrement = -grad.dot(dir);
    // decrement / 2 estimates the suboptimality.
    if (!(0.5 * decrement > options.gap_tol * std::max(1.0, value))) {
      // Inside the quadratic region one more full step is nearly free and
      // squares the coefficient error.
      const VectorXd polished = beta + dir;
      if (polished.norm() <= options.beta_cap) {
        const double polished_value = objective(polished);
        if (polished_value <= value) {
          beta = polished;
          value = polished_value;
          ++out.steps;
        }
      }
      out.converged = true;
      break;
    }
    ++out.steps;
    double step = 1.0;
    bool moved = false;
    for (int k = 0; k < 60; ++k, step *= 0.5) {
      VectorXd trial = beta + step * dir;
      const double norm = trial.norm();
      if (norm > options.beta_cap) {
        trial *= options.beta_cap / norm;
        out.hit_beta_cap = true;
      }
      const double trial_value = objective(trial);
      if (trial_value <= value - 0.01 * step * decrement) {
        beta = trial;
        value = trial_value;
        moved = true;
        break;
      }
    }
    if (!moved || out.hit_beta_cap) {
      out.converged = !out.hit_beta_cap;
      break;
    }
  }
  out.beta.assign(beta.data(), beta.data() + n);
  return out;
}

}  // namespace drlr::internal
