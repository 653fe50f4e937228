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
//
// Workload synthesis: open-loop Poisson arrival streams and closed-loop
// per-user think-time samplers. Everything is deterministic given
// (profile, seed); per-user streams are independent, so changing the user
// count never perturbs the draws of existing users.

#ifndef SCENARIOBENCH_WORKLOAD_HPP_
#define SCENARIOBENCH_WORKLOAD_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scenariobench/errors.hpp"
#include "scenariobench/rng.hpp"

namespace scenariobench {

enum class WorkloadMode { open, closed };

struct WorkloadProfile {
  WorkloadMode mode = WorkloadMode::open;
  int users = 1;                      // closed mode
  double arrival_rate = 1.0;          // open mode, requests/second
  double think_time_mean_ms = 1000.0; // closed mode
  double warmup_ms = 0.0;
  long total_requests = 1;
  std::map<std::string, double> query_mix;  // query_type -> fraction
  std::uint64_t seed = 0;

  void check() const {
    if (total_requests < 1) throw ConfigError("total_requests must be >= 1");
    if (warmup_ms < 0.0) throw ConfigError("warmup_ms must be >= 0");
    if (mode == WorkloadMode::open) {
      if (arrival_rate <= 0.0) throw ConfigError("arrival_rate must be > 0");
    } else {
      if (users < 1) throw ConfigError("users must be >= 1");
      if (think_time_mean_ms <= 0.0) throw ConfigError("think_time_mean_ms must be > 0");
    }
    if (query_mix.empty()) throw ConfigError("query_mix must not be empty");
    double sum = 0.0;
    for (const auto& [t, f] : query_mix) {
      if (f < 0.0) throw ConfigError("query_mix fraction for \"" + t + "\" must be >= 0");
      sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ConfigError("query_mix fractions must sum to 1, got " + std::to_string(sum));
  }
};

struct ArrivalEvent {
  long request_id = 0;  // dense from 0
  double arrival_time_ms = 0.0;
  std::string query_type;
};

/// Draws query types i.i.d. from a mix; iteration order over the mix is the
/// map's ascending key order, so results are stable across platforms.
class QueryTypeSampler {
 public:
  QueryTypeSampler(const std::map<std::string, double>& mix, std::uint64_t seed,
                   std::string_view purpose, std::uint64_t index = 0)
      : rng_(seed, purpose, index) {
    double acc = 0.0;
    for (const auto& [t, f] : mix) {
      if (f <= 0.0) continue;
      acc += f;
      cumulative_.emplace_back(acc, t);
    }
    if (cumulative_.empty()) throw ConfigError("query_mix has no positive fractions");
  }

  const std::string& next() {
    double u = rng_.uniform01() * cumulative_.back().first;
    for (const auto& [edge, t] : cumulative_)
      if (u <= edge) return t;
    return cumulative_.back().second;
  }

 private:
  RngStream rng_;
  std::vector<std::pair<double, std::string>> cumulative_;
};

/// Open-loop Poisson stream: i.i.d. exponential inter-arrival gaps with mean
/// 1000/arrival_rate milliseconds, exactly total_requests events.
inline std::vector<ArrivalEvent> generate_open(const WorkloadProfile& profile) {
  profile.check();
  if (profile.mode != WorkloadMode::open)
    throw ConfigError("generate_open requires an open-loop profile");

  RngStream gaps(profile.seed, "open-arrivals");
  QueryTypeSampler types(profile.query_mix, profile.seed, "open-types");
  const double mean_gap_ms = 1000.0 / profile.arrival_rate;

  std::vector<ArrivalEvent> events;
  events.reserve(static_cast<std::size_t>(profile.total_requests));
  double t = 0.0;
  for (long i = 0; i < profile.total_requests; ++i) {
    t += gaps.exponential(mean_gap_ms);
    events.push_back({i, t, types.next()});
  }
  return events;
}

/// Per-user sampler for closed-loop driving. The engine owns the loop: a
/// user's next request is issued at (previous response time + think time).
class ClosedUserSampler {
 public:
  ClosedUserSampler(const WorkloadProfile& profile, int user_index)
      : think_(profile.seed, "closed-think", static_cast<std::uint64_t>(user_index)),
        types_(profile.query_mix, profile.seed, "closed-types",
               static_cast<std::uint64_t>(user_index)),
        mean_ms_(profile.think_time_mean_ms) {}

  double next_think_ms() { return think_.exponential(mean_ms_); }
  const std::string& next_query_type() { return types_.next(); }

 private:
  RngStream think_;
  QueryTypeSampler types_;
  double mean_ms_;
};

inline ClosedUserSampler generate_closed_user(const WorkloadProfile& profile, int user_index) {
  profile.check();
  if (profile.mode != WorkloadMode::closed)
    throw ConfigError("generate_closed_user requires a closed-loop profile");
  if (user_index < 0 || user_index >= profile.users)
    throw ConfigError("user_index out of range");
  return ClosedUserSampler(profile, user_index);
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_WORKLOAD_HPP_
