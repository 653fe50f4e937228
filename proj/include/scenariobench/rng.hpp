/* Copyright 2026 The ScenarioBench Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef SCENARIOBENCH_RNG_HPP_
#define SCENARIOBENCH_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace scenariobench {

// splitmix64; used only to turn (seed, purpose, index) keys into engine seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Stateless counter-based uniform in (0,1): draw k of the stream named by
/// (seed, purpose, index). Used where keeping per-entity engine state would
/// be wasteful (e.g. one routing stream per request).
inline double counter_uniform01(std::uint64_t seed, std::string_view purpose,
                                std::uint64_t index, std::uint64_t counter) {
  std::uint64_t key = splitmix64(splitmix64(seed ^ fnv1a64(purpose)) ^ index);
  std::uint64_t bits = splitmix64(key + 0x9e3779b97f4a7c15ULL * (counter + 1)) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// One named random stream. Streams derived from the same base seed but
/// different (purpose, index) keys are statistically independent, so adding
/// users or nodes does not perturb the draws of existing ones.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0)
      : engine_(splitmix64(splitmix64(seed ^ fnv1a64(purpose)) ^ index)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw in the open interval (0, 1). Never returns an endpoint, so
  /// downstream -log() transforms are finite and strictly positive.
  double uniform01() {
    const std::uint64_t bits = engine_() >> 11;  // top 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  /// Exponential with the given mean (same unit as the mean).
  double exponential(double mean) { return -mean * std::log(uniform01()); }

  /// Standard normal via Box-Muller.
  double normal01() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double lognormal(double mu, double sigma) {
    return std::exp(mu + sigma * normal01());
  }

  /// Index in [0, n).
  std::size_t pick_index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scenariobench

#endif  // SCENARIOBENCH_RNG_HPP_
