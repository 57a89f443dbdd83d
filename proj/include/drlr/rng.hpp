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

// CounterRng: a counter-based 64-bit generator.
//
//   key      = mix(seed ^ mix(stream + 0x632be59bd9b4e019))
//   output_k = mix(key + (k + 1) * 0x9e3779b97f4a7c15)
//
// where mix is the SplitMix64 finalizer. Every (seed, stream) pair names an
// independent sequence, and output_k depends only on (seed, stream, k), so
// results do not depend on how work is scheduled across threads.
//
// Uniform doubles take the top 53 bits. Normal variates use the Marsaglia
// polar method; the second variate of each accepted pair is cached.
// Bounded integers use rejection sampling on the low range.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace drlr {

inline std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(Mix64(seed ^ Mix64(stream + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    ++counter_;
    return Mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform on [0, 1).
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound).
  std::uint64_t Below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t draw;
    do {
      draw = (*this)();
    } while (draw >= limit);
    return draw % bound;
  }

  double Normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * Uniform() - 1.0;
      v = 2.0 * Uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Derives a child seed for a numbered sub-task.
inline std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  return Mix64(seed + Mix64(index ^ 0x2545f4914f6cdd1dULL));
}

}  // namespace drlr
