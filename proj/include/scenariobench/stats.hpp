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
// Trace analysis: latency summaries at the overall / module / component
// levels, cross-run reproducibility (coefficient of variation), deviation
// against a baseline, AI vs non-AI time split, and training-tradeoff
// arithmetic.
//
// Percentiles are nearest-rank: the 1-based index ceil(p/100 * n) into the
// ascending samples. Exactly reproducible, no interpolation.

#ifndef SCENARIOBENCH_STATS_HPP_
#define SCENARIOBENCH_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "scenariobench/errors.hpp"
#include "scenariobench/trace.hpp"

namespace scenariobench {

inline double percentile_nearest_rank(std::vector<double> samples, double p) {
  if (samples.empty()) throw Error("percentile of an empty sample set");
  if (p <= 0.0 || p > 100.0) throw Error("percentile p must lie in (0,100]");
  std::sort(samples.begin(), samples.end());
  auto n = static_cast<double>(samples.size());
  // The epsilon keeps exact multiples (p=90, n=100 -> rank 90) from being
  // bumped up a slot by binary rounding of p/100*n.
  auto rank = static_cast<std::size_t>(std::ceil(p * n / 100.0 - 1e-9));
  rank = std::max<std::size_t>(rank, 1);
  rank = std::min(rank, samples.size());
  return samples[rank - 1];
}

struct LatencySummary {
  long count = 0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p90_ms = 0.0;
  double p99_ms = 0.0;
};

inline LatencySummary summarize_samples(const std::vector<double>& samples) {
  if (samples.empty()) throw Error("cannot summarize an empty sample set");
  LatencySummary s;
  s.count = static_cast<long>(samples.size());
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean_ms = sum / static_cast<double>(samples.size());
  s.p50_ms = percentile_nearest_rank(samples, 50.0);
  s.p90_ms = percentile_nearest_rank(samples, 90.0);
  s.p99_ms = percentile_nearest_rank(samples, 99.0);
  return s;
}

enum class SummaryLevel { overall, module, component };

/// Latency samples per group, warm-up and failed traces excluded.
///   overall:   one sample per request, completion - arrival.
///   module:    one sample per (request, module): the wall-clock span from
///              the first enqueue to the last end of the request's stages in
///              that module (equals the sum of stage sojourns on a chain).
///   component: one sample per stage, sojourn end - enqueue, per node.
/// `grouping` maps node id -> module name; it must cover every stage node
/// when level == module. The overall result lives under the key "overall".
inline std::map<std::string, LatencySummary> summarize(
    const std::vector<RequestTrace>& traces, SummaryLevel level,
    const std::map<std::string, std::string>& grouping = {}) {
  std::map<std::string, std::vector<double>> samples;
  for (const auto& t : traces) {
    if (t.warmup || t.failed) continue;
    switch (level) {
      case SummaryLevel::overall:
        samples["overall"].push_back(t.latency_ms());
        break;
      case SummaryLevel::component:
        for (const auto& s : t.stages) samples[s.node_id].push_back(s.sojourn_ms());
        break;
      case SummaryLevel::module: {
        std::map<std::string, std::pair<double, double>> span;  // module -> (first, last)
        for (const auto& s : t.stages) {
          auto it = grouping.find(s.node_id);
          if (it == grouping.end())
            throw Error("node \"" + s.node_id + "\" is not mapped to a module");
          auto [sit, fresh] = span.try_emplace(it->second, s.enqueue_ms, s.end_ms);
          if (!fresh) {
            sit->second.first = std::min(sit->second.first, s.enqueue_ms);
            sit->second.second = std::max(sit->second.second, s.end_ms);
          }
        }
        for (const auto& [module, se] : span)
          samples[module].push_back(se.second - se.first);
        break;
      }
    }
  }
  if (samples.empty()) throw Error("no post-warm-up samples to summarize");
  std::map<std::string, LatencySummary> out;
  for (const auto& [group, v] : samples) out[group] = summarize_samples(v);
  return out;
}

// ---------------------------------------------------------------------------
// Reproducibility: coefficient of variation across runs
// ---------------------------------------------------------------------------

struct MetricCv {
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p90_ms = 0.0;
  double p99_ms = 0.0;
};

/// Per-metric CV = sample standard deviation / mean over >= 2 run summaries.
inline MetricCv reproducibility_cv(const std::vector<LatencySummary>& runs) {
  if (runs.size() < 2) throw Error("reproducibility needs at least 2 runs");
  auto cv = [&runs](auto field) {
    double mean = 0.0;
    for (const auto& r : runs) mean += field(r);
    mean /= static_cast<double>(runs.size());
    if (mean == 0.0) throw Error("CV undefined: metric mean is zero");
    double ss = 0.0;
    for (const auto& r : runs) {
      double d = field(r) - mean;
      ss += d * d;
    }
    double sd = std::sqrt(ss / static_cast<double>(runs.size() - 1));
    return sd / mean;
  };
  MetricCv out;
  out.mean_ms = cv([](const LatencySummary& s) { return s.mean_ms; });
  out.p50_ms = cv([](const LatencySummary& s) { return s.p50_ms; });
  out.p90_ms = cv([](const LatencySummary& s) { return s.p90_ms; });
  out.p99_ms = cv([](const LatencySummary& s) { return s.p99_ms; });
  return out;
}

// ---------------------------------------------------------------------------
// Deviation against a baseline
// ---------------------------------------------------------------------------

struct Deviation {
  double benchmark = 0.0;
  double baseline = 0.0;
  double fraction = 0.0;  // |benchmark - baseline| / baseline
};

using DeviationReport = std::map<std::string, Deviation>;

inline Deviation deviation_of(double benchmark, double baseline) {
  if (baseline <= 0.0) throw Error("deviation undefined: baseline must be > 0");
  return {benchmark, baseline, std::abs(benchmark - baseline) / baseline};
}

inline DeviationReport deviation(const LatencySummary& benchmark,
                                 const LatencySummary& baseline) {
  DeviationReport r;
  r["mean_ms"] = deviation_of(benchmark.mean_ms, baseline.mean_ms);
  r["p50_ms"] = deviation_of(benchmark.p50_ms, baseline.p50_ms);
  r["p90_ms"] = deviation_of(benchmark.p90_ms, baseline.p90_ms);
  r["p99_ms"] = deviation_of(benchmark.p99_ms, baseline.p99_ms);
  return r;
}

// ---------------------------------------------------------------------------
// AI vs non-AI split
// ---------------------------------------------------------------------------

struct AiSplit {
  double ai_mean_ms = 0.0;      // mean per-request time in AI components
  double non_ai_mean_ms = 0.0;  // mean per-request time in non-AI components
  double ai_fraction = 0.0;
};

/// Per-request stage sojourns summed by class and averaged over requests.
/// Only stage sojourns count; gaps between stages are excluded. Every stage
/// node must be classified.
inline AiSplit ai_split(const std::vector<RequestTrace>& traces,
                        const std::map<std::string, bool>& node_is_ai) {
  double ai_sum = 0.0, non_ai_sum = 0.0;
  long n = 0;
  for (const auto& t : traces) {
    if (t.warmup || t.failed) continue;
    n++;
    for (const auto& s : t.stages) {
      auto it = node_is_ai.find(s.node_id);
      if (it == node_is_ai.end())
        throw Error("node \"" + s.node_id + "\" has no ai/non_ai classification");
      (it->second ? ai_sum : non_ai_sum) += s.sojourn_ms();
    }
  }
  if (n == 0) throw Error("no post-warm-up traces for the AI split");
  AiSplit out;
  out.ai_mean_ms = ai_sum / static_cast<double>(n);
  out.non_ai_mean_ms = non_ai_sum / static_cast<double>(n);
  double total = out.ai_mean_ms + out.non_ai_mean_ms;
  out.ai_fraction = total > 0.0 ? out.ai_mean_ms / total : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Offline-training tradeoff arithmetic
// ---------------------------------------------------------------------------

struct TradeoffPoint {
  double data_fraction = 0.0;  // in (0,1]
  double training_time_s = 0.0;
  double accuracy_pct = 0.0;

  void check() const {
    if (!(data_fraction > 0.0 && data_fraction <= 1.0))
      throw ConfigError("tradeoff data_fraction must lie in (0,1]");
    if (training_time_s <= 0.0) throw ConfigError("training_time_s must be > 0");
  }
};

struct TradeoffMarginal {
  double from_fraction = 0.0;
  double to_fraction = 0.0;
  double extra_time_fraction = 0.0;  // (t_to - t_from) / t_from
  double accuracy_gain_pp = 0.0;     // acc_to - acc_from, percentage points
};

/// All ordered pairs (i, j), i < j, of points sorted by data fraction.
inline std::vector<TradeoffMarginal> training_tradeoff(std::vector<TradeoffPoint> points) {
  if (points.size() < 2) throw ConfigError("tradeoff needs at least 2 points");
  for (const auto& p : points) p.check();
  std::sort(points.begin(), points.end(),
            [](const TradeoffPoint& a, const TradeoffPoint& b) {
              return a.data_fraction < b.data_fraction;
            });
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].data_fraction == points[i - 1].data_fraction &&
        !(points[i].training_time_s == points[i - 1].training_time_s &&
          points[i].accuracy_pct == points[i - 1].accuracy_pct))
      throw ConfigError("tradeoff points must have distinct data fractions");

  std::vector<TradeoffMarginal> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      TradeoffMarginal m;
      m.from_fraction = points[i].data_fraction;
      m.to_fraction = points[j].data_fraction;
      m.extra_time_fraction =
          (points[j].training_time_s - points[i].training_time_s) / points[i].training_time_s;
      m.accuracy_gain_pp = points[j].accuracy_pct - points[i].accuracy_pct;
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_STATS_HPP_
