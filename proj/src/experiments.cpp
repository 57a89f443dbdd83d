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

#include "drlr/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <chrono>
#include <cmath>
#include <ctime>

#include "drlr/calibration.hpp"
#include "drlr/metrics.hpp"
#include "drlr/risk_bounds.hpp"
#include "drlr/rng.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace drlr {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string F(double v) { return FormatDouble(v); }
std::string I(long long v) { return std::to_string(v); }
std::string U(std::uint64_t v) { return std::to_string(v); }

// Column names use the short form: cvar_0.05, not cvar_0.050000000000000003.
std::string AlphaColumn(const std::string& prefix, double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return prefix + buf;
}

std::vector<double> WithZero(std::vector<double> grid) {
  if (grid.empty() || grid.front() != 0.0) grid.insert(grid.begin(), 0.0);
  return grid;
}

std::string UtcNow() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json Manifest(const std::string& kind, const RunConfig& config,
              Clock::time_point start, Json extra) {
  Json j;
  j["kind"] = kind;
  j["started_at"] = UtcNow();
  j["wall_clock_seconds"] =
      std::chrono::duration<double>(Clock::now() - start).count();
  j["config"] = Json::parse(config.ToJson());
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

int Threads(const RunConfig& config) {
  const long long t = config.GetInt("threads");
  Require(t >= 1, ErrorCode::kInvalidArgument, "threads must be >= 1");
  return static_cast<int>(t);
}

int Runs(const RunConfig& config) {
  const long long r = config.GetInt("runs");
  Require(r >= 1, ErrorCode::kInvalidArgument, "runs must be >= 1");
  return static_cast<int>(r);
}

TrialPlan BasePlan(const RunConfig& config, RunKind kind) {
  TrialPlan plan;
  plan.generator = MakeSyntheticSpec(config);
  plan.train_size = static_cast<std::size_t>(config.GetInt("synth.train_size"));
  plan.test_size = static_cast<std::size_t>(config.GetInt("synth.test_size"));
  plan.epsilon_grid = EpsilonGrid(config);
  plan.runs = Runs(config);
  plan.seed = config.GetUint64("seed");
  plan.train = MakeTrainConfig(config, kind);
  plan.alphas = config.GetDoubleList("alphas");
  plan.threads = Threads(config);
  return plan;
}

Json TrialSeeds(std::uint64_t seed, int runs) {
  Json seeds = Json::array();
  for (int t = 0; t < runs; ++t) seeds.push_back(DeriveSeed(seed, t));
  return seeds;
}

Table CoverageTable(const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {"train_size", "epsilon",      "coverage",    "smoothed_coverage",
               "mean_ccr",   "mean_logloss", "mean_j_hat",  "nonconverged"};
  return t;
}

void AppendCoverage(Table& t, const CalibrationReport& r) {
  for (const CoveragePoint& p : r.grid) {
    t.AddRow({U(r.train_size), F(p.epsilon), F(p.coverage),
              F(p.smoothed_coverage), F(p.mean_ccr), F(p.mean_logloss),
              F(p.mean_j_hat), I(p.nonconverged)});
  }
}

Json ReportSummary(const CalibrationReport& r) {
  Json j = Json::parse(CalibrationReportJson(r));
  j.erase("grid");
  return j;
}

}  // namespace

Report RunExperiment1(const RunConfig& config) {
  const auto start = Clock::now();
  TrialPlan plan = BasePlan(config, RunKind::kExperiment1);
  plan.epsilon_grid = WithZero(plan.epsilon_grid);
  const double eta = config.GetDouble("eta");

  Report report;
  report.kind = "experiment1";
  Table per_run;
  per_run.name = "per_run";
  per_run.columns = {"train_size", "run",         "trial_seed", "epsilon",
                     "j_hat",      "test_logloss", "ccr",       "covered",
                     "converged"};
  Table aggregate = CoverageTable("aggregate");
  Table chosen;
  chosen.name = "chosen";
  chosen.columns = {"train_size", "chosen_epsilon", "target_confidence",
                    "monotone", "worst_drop", "drop_tolerance"};
  Json summaries = Json::array();

  for (double size : config.GetDoubleList("train_sizes")) {
    Require(size >= 1.0 && size == std::floor(size), ErrorCode::kInvalidArgument,
            "train_sizes must be positive integers");
    TrialPlan p = plan;
    p.train_size = static_cast<std::size_t>(size);
    p.seed = DeriveSeed(plan.seed, p.train_size);
    const auto outcomes = SimulateTrials(p);
    for (int t = 0; t < p.runs; ++t) {
      for (const TrialOutcome& o : outcomes[t]) {
        per_run.AddRow({U(p.train_size), I(t), U(DeriveSeed(p.seed, t)),
                        F(o.epsilon), F(o.j_hat), F(o.test_logloss), F(o.ccr),
                        I(Covered(o)), I(o.converged)});
      }
    }
    const CalibrationReport r = SummarizeCoverage(p, eta, outcomes);
    AppendCoverage(aggregate, r);
    chosen.AddRow({U(p.train_size),
                   r.chosen_epsilon ? F(*r.chosen_epsilon) : std::string(),
                   F(r.target_confidence), I(r.monotone), F(r.worst_drop),
                   F(r.drop_tolerance)});
    Json s = ReportSummary(r);
    s["trial_seeds"] = TrialSeeds(p.seed, p.runs);
    summaries.push_back(s);
  }
  report.tables = {per_run, aggregate, chosen};
  Json extra;
  extra["norm"] = std::string(ToString(plan.train.metric.norm));
  extra["epsilon_grid"] = plan.epsilon_grid;
  extra["per_size"] = summaries;
  report.manifest_json = Manifest(report.kind, config, start, extra).dump(2);
  return report;
}

Report RunExperiment2(const RunConfig& config) {
  const auto start = Clock::now();
  TrialPlan plan = BasePlan(config, RunKind::kExperiment2);
  if (config.Get("synth.beta") == "auto") {
    plan.generator.kind = BetaKind::kUniformSphere;
  }
  plan.epsilon_grid = WithZero(plan.epsilon_grid);
  const auto outcomes = SimulateTrials(plan);

  Report report;
  report.kind = "experiment2";
  Table per_run;
  per_run.name = "per_run";
  per_run.columns = {"run", "trial_seed", "epsilon", "j_hat", "test_logloss",
                     "ccr", "beta_norm2", "converged"};
  for (double a : plan.alphas) per_run.columns.push_back(AlphaColumn("cvar_", a));
  for (int t = 0; t < plan.runs; ++t) {
    for (const TrialOutcome& o : outcomes[t]) {
      std::vector<std::string> row = {I(t),          U(DeriveSeed(plan.seed, t)),
                                      F(o.epsilon),  F(o.j_hat),
                                      F(o.test_logloss), F(o.ccr),
                                      F(o.beta_norm2), I(o.converged)};
      for (double a : plan.alphas) row.push_back(F(o.cvar.at(a)));
      per_run.AddRow(std::move(row));
    }
  }

  Table aggregate;
  aggregate.name = "aggregate";
  aggregate.columns = {"epsilon", "mean_logloss", "sd_logloss", "mean_ccr",
                       "mean_beta_norm2", "mean_j_hat"};
  for (double a : plan.alphas) {
    aggregate.columns.push_back(AlphaColumn("mean_cvar_", a));
  }
  const double runs = static_cast<double>(plan.runs);
  for (std::size_t k = 0; k < plan.epsilon_grid.size(); ++k) {
    double ll = 0, ll2 = 0, ccr = 0, norm = 0, j = 0;
    std::map<double, double> cvar;
    for (const auto& trial : outcomes) {
      const TrialOutcome& o = trial[k];
      ll += o.test_logloss;
      ll2 += o.test_logloss * o.test_logloss;
      ccr += o.ccr;
      norm += o.beta_norm2;
      j += o.j_hat;
      for (const auto& [a, v] : o.cvar) cvar[a] += v;
    }
    const double mean = ll / runs;
    const double var = std::max(0.0, ll2 / runs - mean * mean);
    std::vector<std::string> row = {F(plan.epsilon_grid[k]), F(mean),
                                    F(std::sqrt(var)),       F(ccr / runs),
                                    F(norm / runs),          F(j / runs)};
    for (double a : plan.alphas) row.push_back(F(cvar[a] / runs));
    aggregate.AddRow(std::move(row));
  }

  // Logloss CDF of the first run's fits.
  Table cdf;
  cdf.name = "cdf";
  cdf.columns = {"epsilon", "threshold", "fraction"};
  {
    SyntheticSpec spec = plan.generator;
    spec.seed = DeriveSeed(plan.seed, 0);
    const Dataset train = Generate(spec, plan.train_size, 1);
    const Dataset test = Generate(spec, plan.test_size, 2);
    const auto models = TrainPath(train, plan.train, plan.epsilon_grid);
    std::vector<double> thresholds;
    for (int k = 0; k <= 80; ++k) thresholds.push_back(0.05 * k);
    thresholds.push_back(kInfinity);
    for (std::size_t k = 0; k < models.size(); ++k) {
      for (const auto& [t, frac] : LossCdf(models[k].beta, test, thresholds)) {
        cdf.AddRow({F(plan.epsilon_grid[k]), F(t), F(frac)});
      }
    }
  }

  report.tables = {per_run, aggregate, cdf};
  Json extra;
  extra["norm"] = std::string(ToString(plan.train.metric.norm));
  extra["epsilon_grid"] = plan.epsilon_grid;
  extra["trial_seeds"] = TrialSeeds(plan.seed, plan.runs);
  report.manifest_json = Manifest(report.kind, config, start, extra).dump(2);
  return report;
}

namespace {

struct SplitResult {
  // [model][grid index]
  std::vector<std::vector<EvalSummary>> evals;
  std::vector<std::vector<bool>> converged;
};

}  // namespace

Report RunExperiment3(const RunConfig& config) {
  const auto start = Clock::now();
  const std::string& path = config.Get("data.path");
  if (path.empty()) {
    Fail(ErrorCode::kInvalidArgument,
         "experiment 3 needs a dataset: set data.path to a comma-separated file "
         "with numeric features and one binary label column, for example the "
         "UCI Ionosphere file ionosphere.data (351 rows, 34 features, label "
         "'g'/'b' in the last column). Optional keys: data.label_column, "
         "data.has_header, data.label_map, data.standardize");
  }
  const Dataset all = LoadCsv(path, MakeCsvSchema(config));
  const std::uint64_t seed = config.GetUint64("seed");
  const int runs = Runs(config);
  const std::vector<double> alphas = config.GetDoubleList("alphas");
  const double cvar_alpha = config.GetDouble("cvar_alpha");
  if (std::find(alphas.begin(), alphas.end(), cvar_alpha) == alphas.end()) {
    Fail(ErrorCode::kInvalidArgument, "cvar_alpha must be one of alphas");
  }
  const bool standardize = config.GetBool("data.standardize");
  const TrainConfig base = MakeTrainConfig(config, RunKind::kExperiment3);
  std::vector<double> grid = EpsilonGrid(config);
  grid.erase(std::remove(grid.begin(), grid.end(), 0.0), grid.end());
  Require(!grid.empty(), ErrorCode::kInvalidArgument,
          "epsilon_grid needs a positive radius");
  const double fraction = config.GetDouble("data.train_fraction");

  const std::vector<std::string> names = {"LR", "RLR", "DRLR"};
  std::vector<SplitResult> results(runs);
  auto prepare = [&](int t) {
    SplitSpec split;
    split.train_fraction = fraction;
    split.seed = DeriveSeed(seed, t);
    auto parts = Split(all, split);
    if (standardize) {
      const Standardizer s = Standardizer::Fit(parts.first);
      parts = {s.Apply(parts.first), s.Apply(parts.second)};
    }
    return parts;
  };
  internal::ParallelFor(static_cast<std::size_t>(runs), Threads(config),
                        [&](std::size_t t) {
    const auto [train, test] = prepare(static_cast<int>(t));
    SplitResult& r = results[t];
    TrainConfig lr = base;
    lr.epsilon = 0.0;
    const TrainedModel classical = TrainDrlr(train, lr);
    r.evals.push_back({Evaluate(classical.beta, test, alphas)});
    r.converged.push_back({classical.converged});
    TrainConfig rlr = base;
    rlr.metric.kappa = kInfinity;
    for (const TrainConfig& c : {rlr, base}) {
      const auto models = TrainPath(train, c, grid);
      std::vector<EvalSummary> evals;
      std::vector<bool> conv;
      for (const TrainedModel& m : models) {
        evals.push_back(Evaluate(m.beta, test, alphas));
        conv.push_back(m.converged);
      }
      r.evals.push_back(std::move(evals));
      r.converged.push_back(std::move(conv));
    }
  });

  Report report;
  report.kind = "experiment3";
  Table per_run;
  per_run.name = "per_run";
  per_run.columns = {"run", "split_seed", "model", "epsilon", "ccr", "logloss",
                     "converged"};
  for (double a : alphas) per_run.columns.push_back(AlphaColumn("cvar_", a));
  Table aggregate;
  aggregate.name = "aggregate";
  aggregate.columns = {"model", "epsilon", "mean_ccr", "sd_ccr", "mean_logloss"};
  for (double a : alphas) aggregate.columns.push_back(AlphaColumn("mean_cvar_", a));
  Table summary;
  summary.name = "summary";
  summary.columns = {"model", "best_epsilon", "mean_ccr", "sd_ccr",
                     "mean_logloss", "mean_cvar", "sd_cvar", "cvar_alpha"};

  Json best_json = Json::object();
  for (std::size_t model = 0; model < names.size(); ++model) {
    const std::vector<double> eps =
        model == 0 ? std::vector<double>{0.0} : grid;
    double best_ccr = -1.0;
    std::vector<std::string> best_row;
    for (std::size_t k = 0; k < eps.size(); ++k) {
      double ccr = 0, ccr2 = 0, ll = 0, cv = 0, cv2 = 0;
      std::map<double, double> cvar;
      for (int t = 0; t < runs; ++t) {
        const EvalSummary& e = results[t].evals[model][k];
        std::vector<std::string> row = {
            I(t), U(DeriveSeed(seed, t)), names[model], F(eps[k]), F(e.ccr),
            F(e.mean_logloss), I(results[t].converged[model][k])};
        for (double a : alphas) row.push_back(F(e.cvar.at(a)));
        per_run.AddRow(std::move(row));
        ccr += e.ccr;
        ccr2 += e.ccr * e.ccr;
        ll += e.mean_logloss;
        for (const auto& [a, v] : e.cvar) cvar[a] += v;
        const double c = e.cvar.at(cvar_alpha);
        cv += c;
        cv2 += c * c;
      }
      const double n = static_cast<double>(runs);
      const double mean_ccr = ccr / n;
      const double sd_ccr = std::sqrt(std::max(0.0, ccr2 / n - mean_ccr * mean_ccr));
      const double mean_cv = cv / n;
      const double sd_cv = std::sqrt(std::max(0.0, cv2 / n - mean_cv * mean_cv));
      std::vector<std::string> row = {names[model], F(eps[k]), F(mean_ccr),
                                      F(sd_ccr), F(ll / n)};
      for (double a : alphas) row.push_back(F(cvar[a] / n));
      aggregate.AddRow(std::move(row));
      // Ties keep the smaller radius.
      if (mean_ccr > best_ccr) {
        best_ccr = mean_ccr;
        best_row = {names[model], F(eps[k]), F(mean_ccr), F(sd_ccr), F(ll / n),
                    F(mean_cv), F(sd_cv), F(cvar_alpha)};
        best_json[names[model]] = eps[k];
      }
    }
    summary.AddRow(best_row);
  }

  // Risk bounds of one robust fit on the first split.
  Table risk;
  risk.name = "risk";
  risk.columns = {"epsilon", "risk_min", "risk_max", "train_risk", "test_risk"};
  {
    const auto [train, test] = prepare(0);
    TrainConfig c = base;
    c.epsilon = config.GetDouble("risk.fit_epsilon");
    const TrainedModel m = TrainDrlr(train, c);
    const double test_risk = EmpiricalRisk(m.beta, test);
    const double train_risk = EmpiricalRisk(m.beta, train);
    for (double e : WithZero(EpsilonGrid(config))) {
      const RiskBounds b = ComputeRiskBounds(m.beta, train, e, base.metric);
      risk.AddRow({F(e), F(b.risk_min), F(b.risk_max), F(train_risk),
                   F(test_risk)});
    }
  }

  report.tables = {per_run, aggregate, summary, risk};
  Json extra;
  extra["dataset"] = {{"path", path}, {"rows", all.size()}, {"features", all.dim()}};
  extra["norm"] = std::string(ToString(base.metric.norm));
  extra["epsilon_grid"] = grid;
  extra["selection"] =
      "best radius per model chosen by mean test CCR across splits";
  extra["best_epsilon"] = best_json;
  extra["split_seeds"] = TrialSeeds(seed, runs);
  report.manifest_json = Manifest(report.kind, config, start, extra).dump(2);
  return report;
}

Report RunExperiment(int which, const RunConfig& config) {
  switch (which) {
    case 1:
      return RunExperiment1(config);
    case 2:
      return RunExperiment2(config);
    case 3:
      return RunExperiment3(config);
    default:
      Fail(ErrorCode::kInvalidArgument,
           "experiment must be 1, 2 or 3, got " + std::to_string(which));
  }
}

Report RunCalibration(const RunConfig& config) {
  const auto start = Clock::now();
  const TrialPlan plan = BasePlan(config, RunKind::kCalibrate);
  const CalibrationReport r = CalibrateByCoverage(plan, config.GetDouble("eta"));
  Report report;
  report.kind = "calibration";
  Table t = CoverageTable("calibration");
  AppendCoverage(t, r);
  report.tables = {t};
  Json extra;
  extra["report"] = Json::parse(CalibrationReportJson(r));
  extra["norm"] = std::string(ToString(plan.train.metric.norm));
  extra["trial_seeds"] = TrialSeeds(plan.seed, plan.runs);
  report.manifest_json = Manifest(report.kind, config, start, extra).dump(2);
  return report;
}

Report RunRiskSweep(const RunConfig& config, const TrainedModel& model,
                    const Dataset& train, const Dataset* test) {
  const auto start = Clock::now();
  std::vector<double> grid = EpsilonGrid(config);
  if (config.GetBool("risk.include_zero")) grid = WithZero(grid);
  const MetricParams& metric = model.config.metric;
  const double train_risk = EmpiricalRisk(model.beta, train);
  const double test_risk = test ? EmpiricalRisk(model.beta, *test) : NAN;
  Report report;
  report.kind = "risk";
  Table t;
  t.name = "risk";
  t.columns = {"epsilon", "risk_min", "risk_max", "empirical_risk",
               "lambda_star_min", "lambda_star_max", "test_risk"};
  for (double e : grid) {
    const RiskBounds b = ComputeRiskBounds(model.beta, train, e, metric);
    t.AddRow({F(e), F(b.risk_min), F(b.risk_max), F(train_risk),
              F(b.lambda_star_min), F(b.lambda_star_max),
              test ? F(test_risk) : std::string()});
  }
  report.tables = {t};
  Json extra;
  extra["model_mode"] = ModeName(model.config);
  extra["norm"] = std::string(ToString(metric.norm));
  extra["kappa"] = metric.kappa_infinite() ? Json("inf") : Json(metric.kappa);
  report.manifest_json = Manifest(report.kind, config, start, extra).dump(2);
  return report;
}

}  // namespace drlr
