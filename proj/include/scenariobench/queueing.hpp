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
// Closed-form latency predictions: M/M/1 mean and percentiles, the open
// queueing-network composition of per-node M/M/1 response times weighted by
// visit ratios, and theoretical-vs-actual gap reports.
//
// Network tail latency is deliberately not predicted: tail quantiles do not
// superpose across queues, so no per-node composition is sound. Rates are
// requests/second, results milliseconds.

#ifndef SCENARIOBENCH_QUEUEING_HPP_
#define SCENARIOBENCH_QUEUEING_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "scenariobench/errors.hpp"

namespace scenariobench {

struct MM1Params {
  double mu = 0.0;      // service rate, req/s
  double lambda = 0.0;  // arrival rate, req/s

  void check() const {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (!(mu > lambda))
      throw ConfigError("unstable queue: mu (" + std::to_string(mu) +
                        ") must exceed lambda (" + std::to_string(lambda) + ")");
  }
};

/// Mean sojourn time 1/(mu - lambda), in milliseconds.
inline double mm1_mean(const MM1Params& p) {
  p.check();
  return 1000.0 / (p.mu - p.lambda);
}

/// p'th percentile sojourn time -ln(1 - p/100)/(mu - lambda), in ms.
inline double mm1_percentile(const MM1Params& params, double p) {
  params.check();
  if (!(p > 0.0 && p < 100.0)) throw ConfigError("percentile p must lie in (0,100)");
  return -std::log(1.0 - p / 100.0) * 1000.0 / (params.mu - params.lambda);
}

struct NetworkNode {
  std::string id;
  double mu = 0.0;           // service rate, req/s
  double visit_ratio = 1.0;  // expected visits per request
};

struct NetworkParams {
  std::vector<NetworkNode> nodes;
  double lambda = 0.0;  // system arrival rate, req/s
};

/// Open product-form network: R = sum_i v_i * 1000/(mu_i - lambda*v_i) ms.
/// Every node must be individually stable.
inline double network_mean(const NetworkParams& net) {
  if (!(net.lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (net.nodes.empty()) throw ConfigError("network has no nodes");
  double total = 0.0;
  for (const auto& n : net.nodes) {
    if (n.visit_ratio < 0.0)
      throw ConfigError("node \"" + n.id + "\": visit_ratio must be >= 0");
    if (n.visit_ratio == 0.0) continue;
    double offered = net.lambda * n.visit_ratio;
    if (!(n.mu > offered))
      throw ConfigError("unstable node \"" + n.id + "\": mu " + std::to_string(n.mu) +
                        " <= lambda*visit_ratio " + std::to_string(offered));
    total += n.visit_ratio * 1000.0 / (n.mu - offered);
  }
  return total;
}

struct GapEntry {
  double theoretical_ms = 0.0;
  double actual_ms = 0.0;
  double ratio = 0.0;  // actual / theoretical
};

struct GapReport {
  std::vector<GapEntry> entries;
  double mean_ratio = 0.0;  // arithmetic mean of per-setting ratios
};

inline GapReport gap_report(const std::vector<double>& theoretical_ms,
                            const std::vector<double>& actual_ms) {
  if (theoretical_ms.size() != actual_ms.size())
    throw ConfigError("gap report needs equally many theoretical and actual values");
  if (theoretical_ms.empty()) throw ConfigError("gap report needs at least one setting");
  GapReport r;
  double sum = 0.0;
  for (std::size_t i = 0; i < theoretical_ms.size(); ++i) {
    if (theoretical_ms[i] <= 0.0 || actual_ms[i] <= 0.0)
      throw ConfigError("gap report values must be > 0");
    double ratio = actual_ms[i] / theoretical_ms[i];
    r.entries.push_back({theoretical_ms[i], actual_ms[i], ratio});
    sum += ratio;
  }
  r.mean_ratio = sum / static_cast<double>(r.entries.size());
  return r;
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_QUEUEING_HPP_
