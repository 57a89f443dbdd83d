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

#include "drlr/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "drlr/report.hpp"
#include "drlr/rng.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace drlr {

void RadiusFormulaParams::Validate() const {
  Require(a > 1.0, ErrorCode::kInvalidArgument, "radius: a must exceed 1");
  Require(c1 > 0.0 && c2 > 0.0 && c3 > 0.0, ErrorCode::kInvalidArgument,
          "radius: c1, c2, c3 must be positive");
  Require(n >= 1, ErrorCode::kInvalidArgument, "radius: n must be >= 1");
  Require(eta > 0.0 && eta <= 1.0, ErrorCode::kInvalidArgument,
          "radius: eta must lie in (0, 1]");
  Require(std::log(c1 / eta) > 0.0, ErrorCode::kInvalidArgument,
          "radius: log(c1 / eta) must be positive");
}

double RadiusRegimeThreshold(const RadiusFormulaParams& params) {
  params.Validate();
  return std::log(params.c1 / params.eta) / (params.c2 * params.c3);
}

double RadiusFormula(std::size_t sample_size,
                     const RadiusFormulaParams& params) {
  Require(sample_size >= 1, ErrorCode::kInvalidArgument,
          "radius: N must be >= 1");
  const double threshold = RadiusRegimeThreshold(params);
  const double size = static_cast<double>(sample_size);
  const double base = std::log(params.c1 / params.eta) / (params.c2 * size);
  const double exponent =
      size < threshold ? 1.0 / params.a : 1.0 / static_cast<double>(params.n);
  return std::pow(base, exponent);
}

void TrialPlan::Validate() const {
  Require(runs >= 1, ErrorCode::kInvalidArgument, "runs must be >= 1");
  Require(train_size >= 1 && test_size >= 1, ErrorCode::kInvalidArgument,
          "train and test sizes must be >= 1");
  Require(!epsilon_grid.empty(), ErrorCode::kInvalidArgument,
          "epsilon grid is empty");
  for (double e : epsilon_grid) {
    Require(e >= 0.0 && std::isfinite(e), ErrorCode::kInvalidArgument,
            "epsilon grid values must be finite and >= 0");
  }
  Require(std::is_sorted(epsilon_grid.begin(), epsilon_grid.end()),
          ErrorCode::kInvalidArgument, "epsilon grid must be sorted");
  for (double a : alphas) {
    Require(a > 0.0 && a <= 1.0, ErrorCode::kInvalidArgument,
            "alpha values must lie in (0, 1]");
  }
  train.metric.Validate();
  generator.ResolveBeta();
}

std::vector<std::vector<TrialOutcome>> SimulateTrials(const TrialPlan& plan) {
  plan.Validate();
  std::vector<std::vector<TrialOutcome>> outcomes(plan.runs);
  internal::ParallelFor(
      static_cast<std::size_t>(plan.runs), plan.threads, [&](std::size_t t) {
        SyntheticSpec spec = plan.generator;
        spec.seed = DeriveSeed(plan.seed, t);
        const Dataset train = Generate(spec, plan.train_size, 1);
        const Dataset test = Generate(spec, plan.test_size, 2);
        const auto models = TrainPath(train, plan.train, plan.epsilon_grid);
        auto& row = outcomes[t];
        row.reserve(models.size());
        for (std::size_t k = 0; k < models.size(); ++k) {
          const TrainedModel& m = models[k];
          const EvalSummary eval = Evaluate(m.beta, test, plan.alphas);
          TrialOutcome o;
          o.epsilon = plan.epsilon_grid[k];
          o.j_hat = m.j_hat;
          o.test_logloss = eval.mean_logloss;
          o.ccr = eval.ccr;
          o.beta_norm2 = NormValue(m.beta, NormKind::kL2);
          o.cvar = eval.cvar;
          o.converged = m.converged;
          row.push_back(std::move(o));
        }
      });
  return outcomes;
}

std::vector<double> IsotonicIncreasing(const std::vector<double>& values) {
  // Pool adjacent violators.
  std::vector<double> level;
  std::vector<std::size_t> width;
  for (double v : values) {
    level.push_back(v);
    width.push_back(1);
    while (level.size() > 1 && level[level.size() - 2] > level.back()) {
      const std::size_t w = width.back() + width[width.size() - 2];
      const double merged = (level.back() * width.back() +
                             level[level.size() - 2] * width[width.size() - 2]) /
                            static_cast<double>(w);
      level.pop_back();
      width.pop_back();
      level.back() = merged;
      width.back() = w;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t b = 0; b < level.size(); ++b) {
    out.insert(out.end(), width[b], level[b]);
  }
  return out;
}

bool Covered(const TrialOutcome& outcome) {
  // Both sides are averages of the same log(2) once beta vanishes; allow for
  // the rounding of the two sums.
  const double slack = 1e-12 * std::max(1.0, std::abs(outcome.j_hat));
  return outcome.test_logloss <= outcome.j_hat + slack;
}

CalibrationReport SummarizeCoverage(
    const TrialPlan& plan, double eta_target,
    const std::vector<std::vector<TrialOutcome>>& outcomes) {
  Require(eta_target >= 0.0 && eta_target < 1.0, ErrorCode::kInvalidArgument,
          "eta target must lie in [0, 1)");
  CalibrationReport report;
  report.target_confidence = 1.0 - eta_target;
  report.train_size = plan.train_size;
  report.runs = plan.runs;
  report.seed = plan.seed;
  const double runs = static_cast<double>(outcomes.size());
  std::vector<double> raw;
  for (std::size_t k = 0; k < plan.epsilon_grid.size(); ++k) {
    CoveragePoint p;
    p.epsilon = plan.epsilon_grid[k];
    for (const auto& trial : outcomes) {
      const TrialOutcome& o = trial[k];
      if (Covered(o)) p.coverage += 1.0;
      p.mean_ccr += o.ccr;
      p.mean_logloss += o.test_logloss;
      p.mean_j_hat += o.j_hat;
      if (!o.converged) ++p.nonconverged;
    }
    p.coverage /= runs;
    p.mean_ccr /= runs;
    p.mean_logloss /= runs;
    p.mean_j_hat /= runs;
    raw.push_back(p.coverage);
    report.grid.push_back(p);
  }
  const auto smooth = IsotonicIncreasing(raw);
  double running_max = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    report.grid[k].smoothed_coverage = smooth[k];
    running_max = std::max(running_max, raw[k]);
    const double drop = running_max - raw[k];
    if (drop > 0.0) {
      const double pooled = 0.5 * (running_max + raw[k]);
      const double tol = 3.0 * std::sqrt(pooled * (1.0 - pooled) / runs);
      if (drop > report.worst_drop) {
        report.worst_drop = drop;
        report.drop_tolerance = tol;
      }
      if (drop > tol) report.monotone = false;
    }
  }
  for (const CoveragePoint& p : report.grid) {
    if (p.coverage >= report.target_confidence) {
      report.chosen_epsilon = p.epsilon;
      break;
    }
  }
  if (!report.chosen_epsilon) {
    report.diagnostic = "no grid radius reached coverage " +
                        FormatDouble(report.target_confidence) +
                        " (best " +
                        FormatDouble(*std::max_element(raw.begin(), raw.end())) +
                        "); extend the grid toward larger epsilon";
  }
  if (!report.monotone) {
    if (!report.diagnostic.empty()) report.diagnostic += "; ";
    report.diagnostic += "coverage decreases by " +
                         FormatDouble(report.worst_drop) +
                         " along the grid, beyond the Monte-Carlo bound " +
                         FormatDouble(report.drop_tolerance);
  }
  return report;
}

CalibrationReport CalibrateByCoverage(const TrialPlan& plan,
                                      double eta_target) {
  return SummarizeCoverage(plan, eta_target, SimulateTrials(plan));
}

std::string CalibrationReportJson(const CalibrationReport& report) {
  nlohmann::ordered_json j;
  j["target_confidence"] = report.target_confidence;
  j["chosen_epsilon"] = report.chosen_epsilon
                            ? nlohmann::ordered_json(*report.chosen_epsilon)
                            : nlohmann::ordered_json(nullptr);
  j["train_size"] = report.train_size;
  j["runs"] = report.runs;
  j["seed"] = report.seed;
  j["monotone"] = report.monotone;
  j["worst_drop"] = report.worst_drop;
  j["drop_tolerance"] = report.drop_tolerance;
  j["diagnostic"] = report.diagnostic;
  auto& grid = j["grid"] = nlohmann::ordered_json::array();
  for (const CoveragePoint& p : report.grid) {
    grid.push_back({{"epsilon", p.epsilon},
                    {"coverage", p.coverage},
                    {"smoothed_coverage", p.smoothed_coverage},
                    {"mean_ccr", p.mean_ccr},
                    {"mean_logloss", p.mean_logloss},
                    {"mean_j_hat", p.mean_j_hat},
                    {"nonconverged", p.nonconverged}});
  }
  return j.dump(2);
}

std::string CalibrationReportCsv(const CalibrationReport& report) {
  Table t;
  t.columns = {"epsilon",      "coverage",   "mean_ccr",
               "mean_logloss", "smoothed_coverage", "mean_j_hat"};
  for (const CoveragePoint& p : report.grid) {
    t.AddRow({FormatDouble(p.epsilon), FormatDouble(p.coverage),
              FormatDouble(p.mean_ccr), FormatDouble(p.mean_logloss),
              FormatDouble(p.smoothed_coverage), FormatDouble(p.mean_j_hat)});
  }
  return t.ToCsv();
}

}  // namespace drlr
