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
// Run orchestration: distill (optional) -> workload -> engine -> analysis,
// one pass per repetition with seeds derived as seed + repetition index.
// All outputs are written atomically (temp file + rename) into the
// configured output directory:
//
//   distilled.scenario, distill_report.json, distill_report.txt
//   rep<k>.stages.csv, rep<k>.requests.csv
//   report.json, report.txt, report_<section>.csv

#ifndef SCENARIOBENCH_RUNNER_HPP_
#define SCENARIOBENCH_RUNNER_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "scenariobench/config.hpp"
#include "scenariobench/distill.hpp"
#include "scenariobench/live.hpp"
#include "scenariobench/log.hpp"
#include "scenariobench/report.hpp"
#include "scenariobench/scenario_io.hpp"
#include "scenariobench/sim.hpp"

namespace scenariobench {

/// Write-then-rename so readers never observe a half-written file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                 : path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RunError("cannot write \"" + tmp.string() + "\"");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline nlohmann::json distill_report_json(const DistillReport& r) {
  nlohmann::json doc;
  doc["actions"] = nlohmann::json::array();
  for (const auto& a : r.actions) {
    nlohmann::json aj = {{"rule", a.rule},
                         {"action", a.action},
                         {"node_ids", a.node_ids},
                         {"reason", a.reason}};
    if (!a.result_id.empty()) aj["result_id"] = a.result_id;
    doc["actions"].push_back(aj);
  }
  doc["complexity_before"] = {{"nodes", r.before.nodes}, {"edges", r.before.edges}};
  doc["complexity_after"] = {{"nodes", r.after.nodes}, {"edges", r.after.edges}};
  doc["reduction_ratio"] = r.reduction_ratio;
  return doc;
}

inline std::string distill_report_table(const DistillReport& r) {
  std::string out = "rule  action           nodes\n";
  for (const auto& a : r.actions) {
    char buf[512];
    std::string ids = detail::join_ids(a.node_ids);
    if (!a.result_id.empty()) ids += " -> " + a.result_id;
    std::snprintf(buf, sizeof(buf), "%-5s %-16s %s\n", a.rule.c_str(), a.action.c_str(),
                  ids.c_str());
    out += buf;
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "complexity: %d nodes / %d edges -> %d nodes / %d edges (reduction %.1f%%)\n",
                r.before.nodes, r.before.edges, r.after.nodes, r.after.edges,
                r.reduction_ratio * 100.0);
  out += buf;
  return out;
}

struct RunResult {
  std::filesystem::path output_dir;
  nlohmann::json report;
  std::vector<std::filesystem::path> trace_files;
  bool live_aborted = false;
};

inline RunResult run(const RunConfig& cfg) {
  cfg.check();
  ScenarioGraph graph = load_scenario(cfg.scenario_path);
  std::filesystem::create_directories(cfg.output_dir);

  if (cfg.distill_enabled) {
    auto [distilled, dreport] = distill(graph, cfg.distill);
    write_file_atomic(cfg.output_dir / "distilled.scenario", serialize_scenario(distilled));
    write_file_atomic(cfg.output_dir / "distill_report.json",
                      distill_report_json(dreport).dump(2) + "\n");
    write_file_atomic(cfg.output_dir / "distill_report.txt", distill_report_table(dreport));
    graph = std::move(distilled);
    log_info("distilled ", dreport.before.nodes, " -> ", dreport.after.nodes, " nodes");
  }

  RunResult result;
  result.output_dir = cfg.output_dir;

  ReportInputs inputs;
  inputs.module_of_node = cfg.module_of_node;
  for (const auto& n : graph.nodes())
    if (n.kind == NodeKind::ai || n.kind == NodeKind::non_ai)
      inputs.node_is_ai[n.id] = n.kind == NodeKind::ai;
  if (cfg.engine == EngineChoice::live) inputs.node_is_ai.clear();

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    WorkloadProfile profile = cfg.workload;
    profile.seed = cfg.seed + static_cast<std::uint64_t>(rep);
    std::vector<RequestTrace> traces;
    if (cfg.engine == EngineChoice::simulate) {
      traces = simulate(graph, profile);
      log_info("rep ", rep, ": simulated ", traces.size(), " requests");
    } else {
      LiveResult live = run_live(profile, cfg.live);
      traces = std::move(live.traces);
      nlohmann::json lj = {{"issued", live.issued},
                           {"failures", live.failures.size()},
                           {"error_rate", live.error_rate},
                           {"aborted", live.aborted}};
      if (live.aborted) lj["abort_reason"] = live.abort_reason;
      write_file_atomic(cfg.output_dir / ("rep" + std::to_string(rep) + ".live.json"),
                        lj.dump(2) + "\n");
      if (!live.failures.empty()) {
        std::string csv = "request_id,query_type,reason\n";
        for (const auto& f : live.failures)
          csv += std::to_string(f.request_id) + "," + f.query_type + "," + f.reason + "\n";
        write_file_atomic(cfg.output_dir / ("rep" + std::to_string(rep) + ".failures.csv"),
                          csv);
      }
      result.live_aborted |= live.aborted;
      log_info("rep ", rep, ": live run issued ", live.issued, ", error rate ",
               live.error_rate);
    }

    auto stage_path = cfg.output_dir / ("rep" + std::to_string(rep) + ".stages.csv");
    write_file_atomic(stage_path, emit_stage_csv(traces));
    write_file_atomic(cfg.output_dir / ("rep" + std::to_string(rep) + ".requests.csv"),
                      emit_request_csv(traces));
    result.trace_files.push_back(stage_path);
    inputs.runs.push_back(std::move(traces));

    if (result.live_aborted) break;  // persist partial results, stop repeating
  }

  result.report = build_report(inputs);
  write_file_atomic(cfg.output_dir / "report.json", result.report.dump(2) + "\n");
  write_file_atomic(cfg.output_dir / "report.txt", report_table(result.report));
  for (const auto& [section, csv] : report_csvs(result.report))
    write_file_atomic(cfg.output_dir / ("report_" + section + ".csv"), csv);
  return result;
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_RUNNER_HPP_
