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

#pragma once

#include <string>
#include <vector>

namespace drlr {

// Shortest-safe round-trip rendering: 17 significant digits, or inf / -inf /
// nan.
std::string FormatDouble(double value);

// A named CSV table. Cells are stored already rendered.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void AddRow(std::vector<std::string> row);
  std::string ToCsv() const;
};

struct Report {
  std::string kind;
  std::vector<Table> tables;
  std::string manifest_json;

  const Table* Find(const std::string& name) const;
  // Writes <name>.csv for every table and manifest.json into `dir`,
  // creating it when needed.
  void WriteTo(const std::string& dir) const;
};

}  // namespace drlr
