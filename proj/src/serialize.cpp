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

#include "drlr/serialize.hpp"

#include <fstream>
#include <sstream>

#include "drlr/report.hpp"
#include "json.hpp"

namespace drlr {
namespace {

using Json = nlohmann::ordered_json;

Json KappaJson(double kappa) {
  return std::isinf(kappa) ? Json("inf") : Json(kappa);
}

double KappaFromJson(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    Fail(ErrorCode::kParse, "model json: kappa must be a number or \"inf\"");
  }
  return j.get<double>();
}

Json ConfigJson(const TrainConfig& c) {
  Json j;
  j["epsilon"] = c.epsilon;
  j["norm"] = std::string(ToString(c.metric.norm));
  j["kappa"] = KappaJson(c.metric.kappa);
  j["method"] = std::string(ToString(c.method));
  j["step_rule"] = std::string(ToString(c.step_rule));
  j["max_iters"] = c.max_iters;
  j["obj_tol"] = c.obj_tol;
  j["patience"] = c.patience;
  j["feas_tol"] = c.feas_tol;
  j["tau_initial"] = c.tau_initial;
  j["tau_final"] = c.tau_final;
  j["beta_cap"] = c.beta_cap;
  return j;
}

TrainConfig ConfigFromJson(const Json& j) {
  TrainConfig c;
  c.epsilon = j.at("epsilon").get<double>();
  c.metric.norm = ParseNormKind(j.at("norm").get<std::string>());
  c.metric.kappa = KappaFromJson(j.at("kappa"));
  c.method = ParseSolverMethod(j.at("method").get<std::string>());
  c.step_rule = ParseStepRule(j.at("step_rule").get<std::string>());
  c.max_iters = j.at("max_iters").get<int>();
  c.obj_tol = j.at("obj_tol").get<double>();
  c.patience = j.at("patience").get<int>();
  c.feas_tol = j.at("feas_tol").get<double>();
  c.tau_initial = j.at("tau_initial").get<double>();
  c.tau_final = j.at("tau_final").get<double>();
  c.beta_cap = j.at("beta_cap").get<double>();
  return c;
}

}  // namespace

std::string TrainConfigToJson(const TrainConfig& config) {
  return ConfigJson(config).dump(2);
}

std::string ModelToJson(const TrainedModel& model, const Dataset* train) {
  Json j;
  j["mode"] = ModeName(model.config);
  j["beta"] = model.beta;
  j["lambda"] = model.lambda;
  j["j_hat"] = model.j_hat;
  j["slacks"] = model.slacks;
  j["converged"] = model.converged;
  j["hit_beta_cap"] = model.hit_beta_cap;
  j["iterations"] = model.iterations;
  j["config"] = ConfigJson(model.config);
  if (train != nullptr) {
    const LossDecomposition d = DecomposeWorstCaseLoss(model, *train);
    j["decomposition"] = {{"reg_term", d.reg_term},
                          {"empirical_logloss", d.empirical_logloss},
                          {"label_uncertainty_term", d.label_uncertainty_term},
                          {"total", d.total()}};
  }
  return j.dump(2);
}

TrainedModel ModelFromJson(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    TrainedModel m;
    m.beta = j.at("beta").get<Vector>();
    m.lambda = j.at("lambda").get<double>();
    m.j_hat = j.at("j_hat").get<double>();
    m.slacks = j.at("slacks").get<Vector>();
    m.converged = j.at("converged").get<bool>();
    m.hit_beta_cap = j.at("hit_beta_cap").get<bool>();
    m.iterations = j.at("iterations").get<int>();
    m.config = ConfigFromJson(j.at("config"));
    Require(!m.beta.empty(), ErrorCode::kParse, "model json: empty beta");
    return m;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("model json: ") + e.what());
  }
}

void SaveModel(const TrainedModel& model, const std::string& path,
               const Dataset* train) {
  std::ofstream out(path, std::ios::binary);
  out << ModelToJson(model, train) << '\n';
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path + "'");
}

TrainedModel LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open model '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ModelFromJson(ss.str());
}

std::string EvalSummaryToJson(const EvalSummary& summary) {
  Json j;
  j["mean_logloss"] = summary.mean_logloss;
  j["ccr"] = summary.ccr;
  Json cvar = Json::array();
  for (const auto& [alpha, value] : summary.cvar) {
    cvar.push_back({{"alpha", alpha}, {"cvar", value}});
  }
  j["cvar"] = cvar;
  if (summary.logloss_samples) j["logloss_samples"] = *summary.logloss_samples;
  return j.dump(2);
}

}  // namespace drlr
