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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "drlr/model_core.hpp"

namespace drlr {

enum class BetaKind { kExplicit, kFirstAxis10, kUniformSphere };

// Features x ~ N(0, I_n); P(y = +1 | x) = 1 / (1 + exp(-<beta_true, x>)).
struct SyntheticSpec {
  std::size_t n = 10;
  BetaKind kind = BetaKind::kFirstAxis10;
  Vector beta;  // used when kind == kExplicit
  std::uint64_t seed = 0;

  // (10, 0, ..., 0), a seeded draw from the unit sphere, or `beta`.
  Vector ResolveBeta() const;
};

// Stream reserved for the unit-sphere draw of beta_true.
inline constexpr std::uint64_t kBetaStream = 0xbe7aULL;

// Deterministic in (spec, count, stream).
Dataset Generate(const SyntheticSpec& spec, std::size_t count,
                 std::uint64_t stream = 0);

struct CsvSchema {
  // Column name (requires a header) or integer index; negative indices count
  // from the end, so "-1" is the last column.
  std::string label_column = "-1";
  bool has_header = false;
  // Explicit "value:+1,value:-1" pairs, or empty for automatic mapping:
  // {0,1} -> {-1,+1}, {-1,+1} unchanged, otherwise two distinct strings in
  // lexicographic order map to -1 then +1.
  std::string label_map;
  // Rescale each feature to mean 0 and variance 1 over the loaded rows.
  bool standardize = false;
};

Dataset LoadCsv(const std::string& path, const CsvSchema& schema);
Dataset ParseCsv(std::istream& in, const CsvSchema& schema,
                 const std::string& source_name = "<stream>");
// Writes x1..xn,y with a header row and 17 significant digits.
void SaveCsv(const Dataset& data, const std::string& path);

struct SplitSpec {
  double train_fraction = 0.6;
  // Absolute train size; overrides train_fraction when nonzero.
  std::size_t train_count = 0;
  std::uint64_t seed = 0;
};

// Seeded Fisher-Yates shuffle followed by a cut. Both parts are nonempty.
std::pair<Dataset, Dataset> Split(const Dataset& data, const SplitSpec& spec);

// Per-feature affine map fitted on one dataset and applied to others.
struct Standardizer {
  Vector mean;
  Vector scale;

  static Standardizer Fit(const Dataset& data);
  Dataset Apply(const Dataset& data) const;
};

}  // namespace drlr
