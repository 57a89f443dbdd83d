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

#include "drlr/data_lab.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "drlr/rng.hpp"

namespace drlr {

Vector SyntheticSpec::ResolveBeta() const {
  Require(n >= 1, ErrorCode::kInvalidArgument, "synthetic: n must be >= 1");
  switch (kind) {
    case BetaKind::kExplicit:
      Require(beta.size() == n, ErrorCode::kDimensionMismatch,
              "synthetic: explicit beta must have n entries");
      return beta;
    case BetaKind::kFirstAxis10: {
      Vector b(n, 0.0);
      b[0] = 10.0;
      return b;
    }
    case BetaKind::kUniformSphere: {
      CounterRng rng(seed, kBetaStream);
      Vector b(n);
      double norm = 0.0;
      do {
        for (double& e : b) e = rng.Normal();
        norm = NormValue(b, NormKind::kL2);
      } while (norm == 0.0);
      for (double& e : b) e /= norm;
      return b;
    }
  }
  return beta;
}

Dataset Generate(const SyntheticSpec& spec, std::size_t count,
                 std::uint64_t stream) {
  Require(count >= 1, ErrorCode::kInvalidArgument,
          "generate: count must be >= 1");
  const Vector beta = spec.ResolveBeta();
  CounterRng rng(spec.seed, stream);
  Vector features(count * spec.n);
  std::vector<Label> labels(count);
  for (std::size_t i = 0; i < count; ++i) {
    double t = 0.0;
    for (std::size_t j = 0; j < spec.n; ++j) {
      const double v = rng.Normal();
      features[i * spec.n + j] = v;
      t += beta[j] * v;
    }
    labels[i] = rng.Uniform() < Logistic(t) ? Label::kPositive : Label::kNegative;
  }
  return Dataset(spec.n, std::move(features), std::move(labels));
}

namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitRow(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(Trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool ParseDouble(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool IsMissing(const std::string& cell) {
  return cell.empty() || cell == "?" || cell == "NA" || cell == "NaN" ||
         cell == "nan";
}

std::string Where(const std::string& source, std::size_t line_no) {
  return source + ":" + std::to_string(line_no) + ": ";
}

std::map<std::string, Label> ExplicitLabelMap(const std::string& spec) {
  std::map<std::string, Label> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) {
      Fail(ErrorCode::kInvalidArgument, "label map entry '" + item +
                                  "' is not of the form value:+1 or value:-1");
    }
    const std::string key = Trim(std::string_view(item).substr(0, colon));
    const std::string value = Trim(std::string_view(item).substr(colon + 1));
    if (value == "1" || value == "+1") {
      out[key] = Label::kPositive;
    } else if (value == "-1") {
      out[key] = Label::kNegative;
    } else {
      Fail(ErrorCode::kInvalidArgument, "label map target must be +1 or -1, got '" +
                                  value + "'");
    }
  }
  bool pos = false, neg = false;
  for (const auto& [key, label] : out) {
    (label == Label::kPositive ? pos : neg) = true;
  }
  if (!pos || !neg) {
    Fail(ErrorCode::kInvalidArgument,
         "label map '" + spec + "' must name a value for both +1 and -1");
  }
  return out;
}

std::map<std::string, Label> AutoLabelMap(const std::set<std::string>& values) {
  auto numeric_subset = [&](std::initializer_list<double> allowed,
                            std::map<std::string, Label>& out) {
    for (const std::string& v : values) {
      double d;
      if (!ParseDouble(v, d)) return false;
      if (std::find(allowed.begin(), allowed.end(), d) == allowed.end()) {
        return false;
      }
      out[v] = d > 0.0 ? Label::kPositive : Label::kNegative;
    }
    return true;
  };
  std::map<std::string, Label> out;
  if (numeric_subset({0.0, 1.0}, out)) return out;
  out.clear();
  if (numeric_subset({-1.0, 1.0}, out)) return out;
  out.clear();
  if (values.size() == 2) {
    out[*values.begin()] = Label::kNegative;
    out[*values.rbegin()] = Label::kPositive;
    return out;
  }
  Fail(ErrorCode::kParse,
       "cannot infer a binary label encoding from the label column (found " +
           std::to_string(values.size()) + " distinct values)");
}

std::size_t ResolveLabelColumn(const CsvSchema& schema,
                               const std::vector<std::string>& header,
                               std::size_t columns) {
  long index = 0;
  const char* b = schema.label_column.data();
  const char* e = b + schema.label_column.size();
  const auto [ptr, ec] = std::from_chars(b, e, index);
  if (ec == std::errc() && ptr == e) {
    const long resolved = index < 0 ? static_cast<long>(columns) + index : index;
    if (resolved < 0 || resolved >= static_cast<long>(columns)) {
      Fail(ErrorCode::kInvalidArgument,
           "label column index " + schema.label_column + " is out of range");
    }
    return static_cast<std::size_t>(resolved);
  }
  if (header.empty()) {
    Fail(ErrorCode::kInvalidArgument, "label column '" + schema.label_column +
                                          "' given by name but the file has "
                                          "no header row");
  }
  const auto it = std::find(header.begin(), header.end(), schema.label_column);
  if (it == header.end()) {
    Fail(ErrorCode::kInvalidArgument,
         "label column '" + schema.label_column + "' not found in header");
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

Dataset ParseCsv(std::istream& in, const CsvSchema& schema,
                 const std::string& source_name) {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells = SplitRow(line);
    if (schema.has_header && header.empty() && rows.empty()) {
      header = std::move(cells);
      continue;
    }
    rows.push_back(std::move(cells));
    line_numbers.push_back(line_no);
  }
  Require(!rows.empty(), ErrorCode::kParse, "csv: no data rows");

  const std::size_t columns = header.empty() ? rows.front().size() : header.size();
  Require(columns >= 2, ErrorCode::kParse,
          "csv: need at least one feature column and a label column");
  const std::size_t label_col = ResolveLabelColumn(schema, header, columns);
  const std::size_t dim = columns - 1;

  Vector features;
  features.reserve(rows.size() * dim);
  std::vector<std::string> raw_labels;
  raw_labels.reserve(rows.size());
  std::set<std::string> distinct;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    const std::string where = Where(source_name, line_numbers[r]);
    if (cells.size() != columns) {
      Fail(ErrorCode::kParse, where + "expected " + std::to_string(columns) +
                                  " cells, found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < columns; ++c) {
      if (IsMissing(cells[c])) {
        Fail(ErrorCode::kParse, where + "missing value in column " +
                                    std::to_string(c + 1));
      }
      if (c == label_col) continue;
      double v;
      if (!ParseDouble(cells[c], v)) {
        Fail(ErrorCode::kParse, where + "cannot parse '" + cells[c] +
                                    "' in column " + std::to_string(c + 1) +
                                    " as a number");
      }
      features.push_back(v);
    }
    raw_labels.push_back(cells[label_col]);
    distinct.insert(cells[label_col]);
  }
  if (distinct.size() > 2) {
    Fail(ErrorCode::kParse, "csv: label column has " +
                                std::to_string(distinct.size()) +
                                " distinct values; expected two classes");
  }

  const auto mapping = schema.label_map.empty() ? AutoLabelMap(distinct)
                                                : ExplicitLabelMap(schema.label_map);
  std::vector<Label> labels;
  labels.reserve(raw_labels.size());
  for (std::size_t r = 0; r < raw_labels.size(); ++r) {
    const auto it = mapping.find(raw_labels[r]);
    if (it == mapping.end()) {
      Fail(ErrorCode::kParse, Where(source_name, line_numbers[r]) +
                                  "label '" + raw_labels[r] +
                                  "' is not covered by the label map");
    }
    labels.push_back(it->second);
  }

  Dataset data(dim, std::move(features), std::move(labels));
  if (schema.standardize) data = Standardizer::Fit(data).Apply(data);
  return data;
}

Dataset LoadCsv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  return ParseCsv(in, schema, path);
}

void SaveCsv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path + "'");
  for (std::size_t j = 0; j < data.dim(); ++j) out << 'x' << (j + 1) << ',';
  out << "y\n";
  char buf[32];
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.x(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << ',';
    }
    out << static_cast<int>(data.y(i)) << '\n';
  }
  if (!out) Fail(ErrorCode::kIo, "error while writing '" + path + "'");
}

std::pair<Dataset, Dataset> Split(const Dataset& data, const SplitSpec& spec) {
  const std::size_t total = data.size();
  std::size_t train = spec.train_count;
  if (train == 0) {
    Require(spec.train_fraction > 0.0 && spec.train_fraction < 1.0,
            ErrorCode::kInvalidArgument, "split: train_fraction must be in (0,1)");
    train = static_cast<std::size_t>(
        std::llround(spec.train_fraction * static_cast<double>(total)));
  }
  if (train == 0 || train >= total) {
    Fail(ErrorCode::kInvalidArgument,
         "split: " + std::to_string(total) + " samples cannot be cut into " +
             "nonempty train/test parts with train size " + std::to_string(train));
  }
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  CounterRng rng(spec.seed, 0x5b117ULL);
  for (std::size_t i = total - 1; i > 0; --i) {
    std::swap(order[i], order[rng.Below(i + 1)]);
  }
  const std::span<const std::size_t> all(order);
  return {data.Subset(all.first(train)), data.Subset(all.subspan(train))};
}

// Variance uses 1/N normalization.
Standardizer Standardizer::Fit(const Dataset& data) {
  const std::size_t n = data.dim();
  const double count = static_cast<double>(data.size());
  Standardizer s;
  s.mean.assign(n, 0.0);
  s.scale.assign(n, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) s.mean[j] += data.x(i)[j];
  }
  for (double& m : s.mean) m /= count;
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = data.x(i)[j] - s.mean[j];
      s.scale[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double sd = std::sqrt(s.scale[j] / count);
    if (!(sd > 1e-12 * std::max(1.0, std::abs(s.mean[j])))) {
      Fail(ErrorCode::kInvalidArgument,
           "standardize: feature column " + std::to_string(j + 1) +
               " is constant");
    }
    s.scale[j] = sd;
  }
  return s;
}

Dataset Standardizer::Apply(const Dataset& data) const {
  Require(data.dim() == mean.size(), ErrorCode::kDimensionMismatch,
          "standardize: dimension mismatch");
  Vector features = data.features();
  const std::size_t n = data.dim();
  for (std::size_t k = 0; k < features.size(); ++k) {
    features[k] = (features[k] - mean[k % n]) / scale[k % n];
  }
  return Dataset(n, std::move(features), data.labels());
}

}  // namespace drlr
