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

#include "drlr/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "drlr/error.hpp"

namespace drlr {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void Table::AddRow(std::vector<std::string> row) {
  Require(row.size() == columns.size(), ErrorCode::kInternal,
          "table row width does not match header");
  rows.push_back(std::move(row));
}

std::string Table::ToCsv() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(columns);
  for (const auto& row : rows) emit(row);
  return out;
}

const Table* Report::Find(const std::string& name) const {
  for (const Table& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

void Report::WriteTo(const std::string& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create '" + dir + "': " + ec.message());
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  };
  for (const Table& t : tables) {
    write(std::filesystem::path(dir) / (t.name + ".csv"), t.ToCsv());
  }
  write(std::filesystem::path(dir) / "manifest.json", manifest_json);
}

}  // namespace drlr
