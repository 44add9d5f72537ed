// Copyright 2026 The aqclab Authors
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

// Seeded randomness. std::mt19937_64 output is fixed by the standard, but the
// <random> distributions are not, so draws are mapped by hand to keep every
// seeded artifact identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace aqc {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, m). Lemire-free modulo; bias is below 2^-40 for the
/// sizes used here.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t m) { return rng() % m; }

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Exponential variate with the given mean.
inline double exponential(Rng& rng, double mean) {
  return -mean * std::log1p(-uniform01(rng));
}

/// Standard normal by Box-Muller.
inline double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix_seed(master);
  for (auto k : keys) h = mix_seed(h ^ mix_seed(k));
  return h;
}

}  // namespace aqc
