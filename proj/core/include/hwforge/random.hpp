// Copyright 2026 The hwforge Authors.
//
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
#include <limits>
#include <random>
#include <string_view>

namespace hwforge {

// Seeded random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; every derived variate is computed here rather
// than through <random> distributions so that rendered bytes are identical
// across standard-library implementations.
//
// Not thread-safe: give each worker its own instance.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Uniform on the open interval (0, 1).
  double uniform_open01();
  // Unbiased integer on [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n);
  // Unbiased integer on [lo, hi]. Requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double normal();
  // Gamma(shape, 1) by Marsaglia and Tsang; shape < 1 uses the boost
  // Gamma(shape + 1) * U^(1/shape).
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Per-record seed: a function of the master seed and the record id only, so
// output does not depend on processing order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view id);

}  // namespace hwforge
