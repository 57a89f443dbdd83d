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

#include "drlr/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "drlr/report.hpp"
#include "json.hpp"

namespace drlr {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double ParseNumber(const std::string& key, const std::string& text,
                   bool allow_inf) {
  if (allow_inf && (text == "inf" || text == "+inf" || text == "infinity")) {
    return kInfinity;
  }
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (b != e && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || !std::isfinite(v)) {
    Fail(ErrorCode::kInvalidArgument,
         "config key '" + key + "': '" + text + "' is not a finite number");
  }
  return v;
}

}  // namespace

const std::vector<RunConfig::KeyInfo>& RunConfig::Keys() {
  static const std::vector<KeyInfo> keys = {
      {"data.source", "synthetic", "synthetic | csv"},
      {"data.path", "", "CSV file (csv source)"},
      {"data.test_path", "", "optional separate test CSV"},
      {"data.label_column", "-1", "label column name or index"},
      {"data.has_header", "false", "first CSV row is a header"},
      {"data.label_map", "", "value:+1,value:-1 pairs; empty = automatic"},
      {"data.standardize", "false", "standardize features (train statistics)"},
      {"data.train_fraction", "0.6", "train share of a CSV split"},
      {"synth.n", "10", "feature dimension"},
      {"synth.beta", "auto",
       "auto | first_axis_10 | uniform_sphere | comma-separated values"},
      {"synth.train_size", "100", "training samples per draw"},
      {"synth.test_size", "10000", "test samples per draw"},
      {"train_sizes", "10,100,1000", "Experiment 1 training sizes"},
      {"metric.norm", "auto", "auto | l1 | l2 | linf"},
      {"metric.kappa", "1", "label-flip cost, a positive number or inf"},
      {"epsilon", "0.01", "Wasserstein radius for train"},
      {"epsilon_grid", "default", "radii for sweeps; default = 30 log-spaced in [1e-4, 1]"},
      {"risk.include_zero", "true", "prepend epsilon = 0 to risk sweeps"},
      {"risk.fit_epsilon", "0.003", "radius of the model certified in Experiment 3"},
      {"solver.method", "barrier", "barrier | smoothed | subgradient"},
      {"solver.step_rule", "backtracking", "fixed | backtracking"},
      {"solver.max_iters", "50000", "iteration budget"},
      {"solver.obj_tol", "1e-8", "objective tolerance"},
      {"solver.patience", "50", "stall window of first-order methods"},
      {"solver.feas_tol", "1e-8", "feasibility tolerance"},
      {"solver.tau_initial", "0.1", "initial smoothing (smoothed method)"},
      {"solver.tau_final", "1e-5", "final smoothing (smoothed method)"},
      {"solver.beta_cap", "1e6", "cap on ||beta||_2"},
      {"eta", "0.05", "allowed failure rate for calibration"},
      {"runs", "20", "simulation runs or splits"},
      {"seed", "0", "base seed"},
      {"threads", "1", "worker threads"},
      {"alphas", "0.05,0.1,0.25,0.5,1", "CVaR levels"},
      {"cvar_alpha", "0.05", "CVaR level used in summaries"},
      {"model", "", "model JSON path (risk)"},
      {"out_dir", "drlr_out", "output directory"},
  };
  return keys;
}

RunConfig::RunConfig() {
  for (const KeyInfo& k : Keys()) values_[k.key] = k.default_value;
}

void RunConfig::Set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    Fail(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
  }
  it->second = Trim(value);
}

void RunConfig::LoadText(const std::string& text, const std::string& source) {
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      Fail(ErrorCode::kInvalidArgument, source + ":" + std::to_string(line_no) +
                                            ": expected 'key = value'");
    }
    try {
      Set(Trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      Fail(e.code(), source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void RunConfig::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  LoadText(ss.str(), path);
}

const std::string& RunConfig::Get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    Fail(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
  }
  return it->second;
}

double RunConfig::GetDouble(const std::string& key) const {
  return ParseNumber(key, Get(key), false);
}

double RunConfig::GetExtendedDouble(const std::string& key) const {
  return ParseNumber(key, Get(key), true);
}

long long RunConfig::GetInt(const std::string& key) const {
  const std::string& text = Get(key);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "config key '" + key + "': '" + text + "' is not an integer");
  }
  return v;
}

std::uint64_t RunConfig::GetUint64(const std::string& key) const {
  const std::string& text = Get(key);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "config key '" + key + "': '" + text + "' is not an unsigned integer");
  }
  return v;
}

bool RunConfig::GetBool(const std::string& key) const {
  const std::string& t = Get(key);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  Fail(ErrorCode::kInvalidArgument,
       "config key '" + key + "': '" + t + "' is not a boolean");
}

std::vector<double> RunConfig::GetDoubleList(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : SplitList(Get(key))) {
    out.push_back(ParseNumber(key, item, false));
  }
  return out;
}

std::string RunConfig::ToJson() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : values_) j[k] = v;
  return j.dump(2);
}

NormKind ResolveNorm(const RunConfig& config, RunKind kind) {
  const std::string& text = config.Get("metric.norm");
  if (text != "auto") return ParseNormKind(text);
  switch (kind) {
    case RunKind::kExperiment1:
    case RunKind::kCalibrate:
      return NormKind::kLinf;
    case RunKind::kExperiment3:
      return NormKind::kL1;
    default:
      return NormKind::kL2;
  }
}

std::vector<double> DefaultEpsilonGrid() {
  std::vector<double> grid(30);
  for (int k = 0; k < 30; ++k) {
    grid[k] = std::pow(10.0, -4.0 + 4.0 * k / 29.0);
  }
  grid.back() = 1.0;
  return grid;
}

std::vector<double> EpsilonGrid(const RunConfig& config) {
  if (config.Get("epsilon_grid") == "default") return DefaultEpsilonGrid();
  std::vector<double> grid = config.GetDoubleList("epsilon_grid");
  Require(!grid.empty(), ErrorCode::kInvalidArgument, "epsilon_grid is empty");
  std::sort(grid.begin(), grid.end());
  for (double e : grid) {
    Require(e >= 0.0, ErrorCode::kInvalidArgument,
            "epsilon_grid values must be >= 0");
  }
  return grid;
}

TrainConfig MakeTrainConfig(const RunConfig& config, RunKind kind) {
  TrainConfig c;
  c.epsilon = config.GetDouble("epsilon");
  c.metric.norm = ResolveNorm(config, kind);
  c.metric.kappa = config.GetExtendedDouble("metric.kappa");
  c.method = ParseSolverMethod(config.Get("solver.method"));
  c.step_rule = ParseStepRule(config.Get("solver.step_rule"));
  c.max_iters = static_cast<int>(config.GetInt("solver.max_iters"));
  c.obj_tol = config.GetDouble("solver.obj_tol");
  c.patience = static_cast<int>(config.GetInt("solver.patience"));
  c.feas_tol = config.GetDouble("solver.feas_tol");
  c.tau_initial = config.GetDouble("solver.tau_initial");
  c.tau_final = config.GetDouble("solver.tau_final");
  c.beta_cap = config.GetDouble("solver.beta_cap");
  c.Validate();
  return c;
}

SyntheticSpec MakeSyntheticSpec(const RunConfig& config) {
  SyntheticSpec spec;
  const long long n = config.GetInt("synth.n");
  Require(n >= 1, ErrorCode::kInvalidArgument, "synth.n must be >= 1");
  spec.n = static_cast<std::size_t>(n);
  spec.seed = config.GetUint64("seed");
  const std::string& beta = config.Get("synth.beta");
  if (beta == "auto" || beta == "first_axis_10") {
    spec.kind = BetaKind::kFirstAxis10;
  } else if (beta == "uniform_sphere") {
    spec.kind = BetaKind::kUniformSphere;
  } else {
    spec.kind = BetaKind::kExplicit;
    spec.beta = config.GetDoubleList("synth.beta");
    Require(spec.beta.size() == spec.n, ErrorCode::kInvalidArgument,
            "synth.beta must list synth.n values");
  }
  return spec;
}

CsvSchema MakeCsvSchema(const RunConfig& config) {
  CsvSchema schema;
  schema.label_column = config.Get("data.label_column");
  schema.has_header = config.GetBool("data.has_header");
  schema.label_map = config.Get("data.label_map");
  schema.standardize = false;  // applied after the split
  return schema;
}

std::pair<Dataset, Dataset> LoadTrainTest(const RunConfig& config) {
  const std::string& source = config.Get("data.source");
  if (source == "synthetic") {
    const SyntheticSpec spec = MakeSyntheticSpec(config);
    const long long train = config.GetInt("synth.train_size");
    const long long test = config.GetInt("synth.test_size");
    Require(train >= 1 && test >= 1, ErrorCode::kInvalidArgument,
            "synth.train_size and synth.test_size must be >= 1");
    return {Generate(spec, static_cast<std::size_t>(train), 1),
            Generate(spec, static_cast<std::size_t>(test), 2)};
  }
  if (source != "csv") {
    Fail(ErrorCode::kInvalidArgument,
         "data.source must be 'synthetic' or 'csv', got '" + source + "'");
  }
  const std::string& path = config.Get("data.path");
  Require(!path.empty(), ErrorCode::kInvalidArgument,
          "data.source = csv needs data.path");
  const CsvSchema schema = MakeCsvSchema(config);
  Dataset all = LoadCsv(path, schema);
  std::pair<Dataset, Dataset> parts = [&] {
    const std::string& test_path = config.Get("data.test_path");
    if (!test_path.empty()) {
      return std::pair<Dataset, Dataset>(std::move(all), LoadCsv(test_path, schema));
    }
    SplitSpec split;
    split.train_fraction = config.GetDouble("data.train_fraction");
    split.seed = config.GetUint64("seed");
    return Split(all, split);
  }();
  if (config.GetBool("data.standardize")) {
    const Standardizer s = Standardizer::Fit(parts.first);
    parts = {s.Apply(parts.first), s.Apply(parts.second)};
  }
  return parts;
}

}  // namespace drlr
