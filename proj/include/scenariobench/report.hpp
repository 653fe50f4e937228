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
// Report assembly: one JSON document with sections {overall, modules,
// components, cv, deviations, ai_split, tradeoffs}, plus plot-ready CSV per
// section and a human-readable table. Sections appear when their inputs are
// available. Output is fully deterministic for deterministic inputs: no
// timestamps, sorted keys, shortest-round-trip numbers.

#ifndef SCENARIOBENCH_REPORT_HPP_
#define SCENARIOBENCH_REPORT_HPP_

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenariobench/stats.hpp"
#include "scenariobench/trace.hpp"

namespace scenariobench {

struct ReportInputs {
  std::vector<std::vector<RequestTrace>> runs;        // one trace list per run
  std::map<std::string, std::string> module_of_node;  // enables the modules section
  std::map<std::string, bool> node_is_ai;             // enables the ai_split section
  std::optional<LatencySummary> baseline_overall;     // enables deviations
  std::map<std::string, std::vector<TradeoffPoint>> tradeoffs;  // per component
};

namespace detail {

inline nlohmann::json summary_json(const LatencySummary& s) {
  return {{"count", s.count},
          {"mean_ms", s.mean_ms},
          {"p50_ms", s.p50_ms},
          {"p90_ms", s.p90_ms},
          {"p99_ms", s.p99_ms}};
}

inline std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

inline std::string num(const nlohmann::json& v) {
  return format_double(v.get<double>());
}

}  // namespace detail

inline nlohmann::json build_report(const ReportInputs& in) {
  if (in.runs.empty()) throw Error("report needs at least one run");
  std::vector<RequestTrace> pooled;
  for (const auto& run : in.runs) pooled.insert(pooled.end(), run.begin(), run.end());

  nlohmann::json doc;

  // Overall: pooled summary plus one summary per run.
  auto pooled_overall = summarize(pooled, SummaryLevel::overall).at("overall");
  doc["overall"] = detail::summary_json(pooled_overall);
  std::vector<LatencySummary> per_run;
  for (const auto& run : in.runs)
    per_run.push_back(summarize(run, SummaryLevel::overall).at("overall"));
  if (in.runs.size() > 1) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& s : per_run) runs.push_back(detail::summary_json(s));
    doc["overall_per_run"] = runs;
  }

  doc["components"] = nlohmann::json::object();
  for (const auto& [node, s] : summarize(pooled, SummaryLevel::component))
    doc["components"][node] = detail::summary_json(s);

  if (!in.module_of_node.empty()) {
    doc["modules"] = nlohmann::json::object();
    for (const auto& [module, s] :
         summarize(pooled, SummaryLevel::module, in.module_of_node))
      doc["modules"][module] = detail::summary_json(s);
  }

  if (in.runs.size() >= 2) {
    auto cv = reproducibility_cv(per_run);
    doc["cv"] = {{"mean_ms", cv.mean_ms},
                 {"p50_ms", cv.p50_ms},
                 {"p90_ms", cv.p90_ms},
                 {"p99_ms", cv.p99_ms}};
  }

  if (in.baseline_overall) {
    doc["deviations"] = nlohmann::json::object();
    for (const auto& [metric, d] : deviation(pooled_overall, *in.baseline_overall))
      doc["deviations"][metric] = {{"benchmark", d.benchmark},
                                   {"baseline", d.baseline},
                                   {"deviation", d.fraction}};
  }

  if (!in.node_is_ai.empty()) {
    auto split = ai_split(pooled, in.node_is_ai);
    doc["ai_split"] = {{"ai_mean_ms", split.ai_mean_ms},
                       {"non_ai_mean_ms", split.non_ai_mean_ms},
                       {"ai_fraction", split.ai_fraction}};
  }

  if (!in.tradeoffs.empty()) {
    doc["tradeoffs"] = nlohmann::json::object();
    for (const auto& [component, points] : in.tradeoffs) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& m : training_tradeoff(points))
        arr.push_back({{"from_fraction", m.from_fraction},
                       {"to_fraction", m.to_fraction},
                       {"extra_time_fraction", m.extra_time_fraction},
                       {"accuracy_gain_pp", m.accuracy_gain_pp}});
      doc["tradeoffs"][component] = arr;
    }
  }

  return doc;
}

/// Plot-ready CSV per section, keyed by section name.
inline std::map<std::string, std::string> report_csvs(const nlohmann::json& doc) {
  std::map<std::string, std::string> out;
  auto summary_rows = [](const char* header, const nlohmann::json& groups) {
    std::string csv = std::string(header) + "\n";
    for (const auto& [name, s] : groups.items()) {
      csv += name + "," + std::to_string(s.at("count").get<long>()) + "," +
             detail::num(s.at("mean_ms")) + "," + detail::num(s.at("p50_ms")) + "," +
             detail::num(s.at("p90_ms")) + "," + detail::num(s.at("p99_ms")) + "\n";
    }
    return csv;
  };
  nlohmann::json overall_group;
  overall_group["overall"] = doc.at("overall");
  out["overall"] = summary_rows("group,count,mean_ms,p50_ms,p90_ms,p99_ms", overall_group);
  if (doc.contains("components"))
    out["components"] =
        summary_rows("group,count,mean_ms,p50_ms,p90_ms,p99_ms", doc.at("components"));
  if (doc.contains("modules"))
    out["modules"] = summary_rows("group,count,mean_ms,p50_ms,p90_ms,p99_ms", doc.at("modules"));
  if (doc.contains("cv")) {
    std::string csv = "metric,cv\n";
    for (const auto& [metric, v] : doc.at("cv").items())
      csv += metric + "," + detail::num(v) + "\n";
    out["cv"] = csv;
  }
  if (doc.contains("deviations")) {
    std::string csv = "metric,benchmark,baseline,deviation\n";
    for (const auto& [metric, d] : doc.at("deviations").items())
      csv += metric + "," + detail::num(d.at("benchmark")) + "," +
             detail::num(d.at("baseline")) + "," + detail::num(d.at("deviation")) + "\n";
    out["deviations"] = csv;
  }
  if (doc.contains("ai_split")) {
    const auto& s = doc.at("ai_split");
    out["ai_split"] = "ai_mean_ms,non_ai_mean_ms,ai_fraction\n" +
                      detail::num(s.at("ai_mean_ms")) + "," +
                      detail::num(s.at("non_ai_mean_ms")) + "," +
                      detail::num(s.at("ai_fraction")) + "\n";
  }
  if (doc.contains("tradeoffs")) {
    std::string csv = "component,from_fraction,to_fraction,extra_time_fraction,accuracy_gain_pp\n";
    for (const auto& [component, arr] : doc.at("tradeoffs").items())
      for (const auto& m : arr)
        csv += component + "," + detail::num(m.at("from_fraction")) + "," +
               detail::num(m.at("to_fraction")) + "," +
               detail::num(m.at("extra_time_fraction")) + "," +
               detail::num(m.at("accuracy_gain_pp")) + "\n";
    out["tradeoffs"] = csv;
  }
  return out;
}

/// Human-readable rendering of the report document.
inline std::string report_table(const nlohmann::json& doc) {
  std::string out;
  auto summary_block = [&out](const std::string& title, const nlohmann::json& groups) {
    out += title + "\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "  %-28s %10s %12s %12s %12s %12s\n", "group", "count",
                  "mean_ms", "p50_ms", "p90_ms", "p99_ms");
    out += buf;
    for (const auto& [name, s] : groups.items()) {
      std::snprintf(buf, sizeof(buf), "  %-28s %10ld %12.2f %12.2f %12.2f %12.2f\n",
                    name.c_str(), s.at("count").get<long>(), s.at("mean_ms").get<double>(),
                    s.at("p50_ms").get<double>(), s.at("p90_ms").get<double>(),
                    s.at("p99_ms").get<double>());
      out += buf;
    }
  };
  nlohmann::json overall_group;
  overall_group["overall"] = doc.at("overall");
  summary_block("Overall latency", overall_group);
  if (doc.contains("modules")) summary_block("Module latency", doc.at("modules"));
  if (doc.contains("components")) summary_block("Component latency", doc.at("components"));
  if (doc.contains("cv")) {
    out += "Reproducibility (CV across runs)\n";
    for (const auto& [metric, v] : doc.at("cv").items())
      out += "  " + metric + ": " + detail::fixed(v.get<double>(), 4) + "\n";
  }
  if (doc.contains("deviations")) {
    out += "Deviation vs baseline\n";
    for (const auto& [metric, d] : doc.at("deviations").items())
      out += "  " + metric + ": benchmark " + detail::fixed(d.at("benchmark").get<double>()) +
             " vs baseline " + detail::fixed(d.at("baseline").get<double>()) + " -> " +
             detail::fixed(d.at("deviation").get<double>() * 100.0, 1) + "%\n";
  }
  if (doc.contains("ai_split")) {
    const auto& s = doc.at("ai_split");
    out += "AI vs non-AI time\n  ai_mean_ms " +
           detail::fixed(s.at("ai_mean_ms").get<double>()) + ", non_ai_mean_ms " +
           detail::fixed(s.at("non_ai_mean_ms").get<double>()) + ", ai_fraction " +
           detail::fixed(s.at("ai_fraction").get<double>(), 3) + "\n";
  }
  if (doc.contains("tradeoffs")) {
    out += "Training tradeoffs\n";
    for (const auto& [component, arr] : doc.at("tradeoffs").items())
      for (const auto& m : arr)
        out += "  " + component + " " +
               detail::fixed(m.at("from_fraction").get<double>() * 100.0, 0) + "% -> " +
               detail::fixed(m.at("to_fraction").get<double>() * 100.0, 0) + "%: +" +
               detail::fixed(m.at("extra_time_fraction").get<double>() * 100.0, 1) +
               "% time, +" + detail::fixed(m.at("accuracy_gain_pp").get<double>(), 2) +
               " pp accuracy\n";
  }
  return out;
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_REPORT_HPP_
