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
// scenariobench: scenario benchmarking from the command line.
//
//   distill    apply the distilling rules to a scenario spec
//   simulate   run the discrete-event engine per a run config
//   run        full pipeline per a run config (simulate or live)
//   run-live   drive a deployed HTTP endpoint
//   analyze    summarize trace CSVs (all files pooled as one run)
//   report     merged multi-run report (one file per run)
//   predict    M/M/1 and queueing-network closed forms
//   validate   check a scenario spec against its invariants
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure,
// 4 validation failure. SCENARIOBENCH_LOG=debug|info|warn|error|quiet
// controls diagnostics on stderr.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scenariobench/scenariobench.hpp"

namespace sb = scenariobench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitValidation = 4;

struct CliOptions {
  // distill
  std::string distill_scenario;
  std::string distill_out_dir = "distill-out";
  double distill_threshold = 0.01;
  std::vector<std::string> distill_disable;
  // run / simulate / run-live
  std::string config_path;
  std::string endpoint_override;
  std::vector<std::string> payload_overrides;
  std::string output_override;
  // analyze / report
  std::vector<std::string> trace_files;
  std::string baseline_file;
  std::vector<std::string> tradeoff_specs;  // component=csv
  std::string modules_config;
  std::string kinds_scenario;
  std::string format = "table";
  // predict
  double mu = 0.0;
  std::vector<double> lambdas;
  double pct = 99.0;
  std::string network_file;
  // validate
  std::string validate_scenario;
};

std::vector<sb::TradeoffPoint> load_tradeoff_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sb::ConfigError("cannot open tradeoff file \"" + path + "\"");
  std::vector<sb::TradeoffPoint> points;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    if (line.empty() || line.rfind("data_fraction", 0) == 0 || line[0] == '#') continue;
    sb::TradeoffPoint p;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &p.data_fraction, &p.training_time_s,
                    &p.accuracy_pct) != 3)
      throw sb::ConfigError(path + " line " + std::to_string(line_no) +
                            ": expected data_fraction,training_time_s,accuracy_pct");
    points.push_back(p);
  }
  return points;
}

sb::NetworkParams load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sb::ConfigError("cannot open network file \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw sb::ConfigError(path + ": " + e.what());
  }
  sb::NetworkParams net;
  net.lambda = j.at("lambda").get<double>();
  for (const auto& nj : j.at("nodes")) {
    sb::NetworkNode n;
    n.id = nj.value("id", "node" + std::to_string(net.nodes.size()));
    n.mu = nj.at("mu").get<double>();
    n.visit_ratio = nj.value("visit_ratio", 1.0);
    net.nodes.push_back(std::move(n));
  }
  return net;
}

void emit_report(const nlohmann::json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else if (format == "csv") {
    for (const auto& [section, csv] : sb::report_csvs(report))
      std::cout << "# section: " << section << "\n" << csv;
  } else {
    std::cout << sb::report_table(report);
  }
}

sb::ReportInputs gather_report_inputs(const CliOptions& opt, bool pool_as_one_run) {
  sb::ReportInputs inputs;
  if (opt.trace_files.empty()) throw sb::ConfigError("no trace files given");
  std::vector<sb::RequestTrace> pooled;
  for (const auto& f : opt.trace_files) {
    auto ingest = sb::ingest_stage_log(f);
    for (const auto& [line, what] : ingest.violations)
      sb::log_warn(f, " line ", line, ": ", what);
    if (pool_as_one_run)
      pooled.insert(pooled.end(), ingest.traces.begin(), ingest.traces.end());
    else
      inputs.runs.push_back(std::move(ingest.traces));
  }
  if (pool_as_one_run) inputs.runs.push_back(std::move(pooled));

  if (!opt.modules_config.empty())
    inputs.module_of_node = sb::load_run_config(opt.modules_config).module_of_node;
  if (!opt.kinds_scenario.empty()) {
    auto g = sb::load_scenario(opt.kinds_scenario);
    for (const auto& n : g.nodes())
      if (n.kind == sb::NodeKind::ai || n.kind == sb::NodeKind::non_ai)
        inputs.node_is_ai[n.id] = n.kind == sb::NodeKind::ai;
  }
  if (!opt.baseline_file.empty()) {
    auto baseline = sb::ingest_stage_log(opt.baseline_file);
    inputs.baseline_overall =
        sb::summarize(baseline.traces, sb::SummaryLevel::overall).at("overall");
  }
  for (const auto& spec : opt.tradeoff_specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw sb::ConfigError("--tradeoff expects component=file.csv, got \"" + spec + "\"");
    inputs.tradeoffs[spec.substr(0, eq)] = load_tradeoff_csv(spec.substr(eq + 1));
  }
  return inputs;
}

int cmd_distill(const CliOptions& opt) {
  auto graph = sb::load_scenario(opt.distill_scenario);
  sb::DistillConfig cfg;
  cfg.fraction_threshold = opt.distill_threshold;
  for (const auto& r : opt.distill_disable) {
    if (r.size() == 2 && r[0] == 'r' && r[1] >= '1' && r[1] <= '6')
      cfg.rule_toggles[r[1] - '1'] = false;
    else
      throw sb::ConfigError("--disable expects rule names r1..r6, got \"" + r + "\"");
  }
  auto [distilled, report] = sb::distill(graph, cfg);
  std::filesystem::path out_dir(opt.distill_out_dir);
  sb::write_file_atomic(out_dir / "distilled.scenario", sb::serialize_scenario(distilled));
  sb::write_file_atomic(out_dir / "distill_report.json",
                        sb::distill_report_json(report).dump(2) + "\n");
  sb::write_file_atomic(out_dir / "distill_report.txt", sb::distill_report_table(report));
  if (opt.format == "json")
    std::cout << sb::distill_report_json(report).dump(2) << "\n";
  else
    std::cout << sb::distill_report_table(report);
  return kExitOk;
}

int cmd_run(const CliOptions& opt, std::optional<sb::EngineChoice> force_engine) {
  auto cfg = sb::load_run_config(opt.config_path);
  if (force_engine) cfg.engine = *force_engine;
  if (!opt.endpoint_override.empty()) cfg.live.endpoint = opt.endpoint_override;
  if (!opt.output_override.empty()) cfg.output_dir = opt.output_override;
  for (const auto& spec : opt.payload_overrides) {
    // --payload text=payloads/text.json,image=payloads/image.bin
    std::string item;
    std::istringstream ss(spec);
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw sb::ConfigError("--payload expects type=file, got \"" + item + "\"");
      cfg.live.payload_files[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto result = sb::run(cfg);
  std::cout << sb::report_table(result.report);
  std::cout << "outputs in " << result.output_dir.string() << "\n";
  return result.live_aborted ? kExitRuntime : kExitOk;
}

int cmd_predict(const CliOptions& opt) {
  nlohmann::json out;
  if (!opt.network_file.empty()) {
    auto net = load_network_file(opt.network_file);
    double mean = sb::network_mean(net);
    out["network_mean_ms"] = mean;
    std::printf("network: lambda=%g mean %.1f ms\n", net.lambda, mean);
  }
  if (opt.mu > 0.0) {
    if (opt.lambdas.empty())
      throw sb::ConfigError("--lambda is required with --mu");
    out["mm1"] = nlohmann::json::array();
    for (double lambda : opt.lambdas) {
      sb::MM1Params p{opt.mu, lambda};
      double mean = sb::mm1_mean(p);
      double pctl = sb::mm1_percentile(p, opt.pct);
      out["mm1"].push_back({{"mu", opt.mu},
                            {"lambda", lambda},
                            {"mean_ms", mean},
                            {"p", opt.pct},
                            {"percentile_ms", pctl}});
      std::printf("mu=%g lambda=%g: mean %.1f ms, p%g %.1f ms\n", opt.mu, lambda, mean,
                  opt.pct, pctl);
    }
  }
  if (out.empty()) throw sb::ConfigError("predict needs --mu/--lambda or --network");
  if (opt.format == "json") std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_validate(const CliOptions& opt) {
  std::ifstream in(opt.validate_scenario);
  if (!in)
    throw sb::ConfigError("cannot open scenario spec \"" + opt.validate_scenario + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  sb::ScenarioGraph g;
  try {
    g = sb::parse_scenario(ss.str(),
                           std::filesystem::path(opt.validate_scenario).parent_path());
  } catch (const sb::SpecError& e) {
    std::cout << "invalid: " << e.what() << "\n";
    return kExitValidation;
  }
  auto violations = sb::validate_graph(g);
  if (violations.empty()) {
    std::cout << "valid: " << g.nodes().size() << " nodes, " << g.edges().size()
              << " edges\n";
    return kExitOk;
  }
  for (const auto& v : violations)
    std::cout << "[" << v.rule << "] " << v.message << "\n";
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scenario benchmarking toolkit"};
  app.require_subcommand(1);
  CliOptions opt;

  auto* distill = app.add_subcommand("distill", "apply the distilling rules to a scenario");
  distill->add_option("--scenario", opt.distill_scenario, "scenario spec file")->required();
  distill->add_option("--out-dir", opt.distill_out_dir, "output directory");
  distill->add_option("--threshold", opt.distill_threshold, "R2 traffic-fraction threshold");
  distill->add_option("--disable", opt.distill_disable, "rules to disable (r1..r6)")
      ->delimiter(',');
  distill->add_option("--format", opt.format, "report format: table|json");

  auto* simulate = app.add_subcommand("simulate", "run the simulation engine");
  simulate->add_option("--config", opt.config_path, "run config (TOML)")->required();
  simulate->add_option("--out-dir", opt.output_override, "override output directory");

  auto* runcmd = app.add_subcommand("run", "full pipeline per run config");
  runcmd->add_option("--config", opt.config_path, "run config (TOML)")->required();
  runcmd->add_option("--out-dir", opt.output_override, "override output directory");

  auto* runlive = app.add_subcommand("run-live", "drive a live HTTP endpoint");
  runlive->add_option("--config", opt.config_path, "run config (TOML)")->required();
  runlive->add_option("--endpoint", opt.endpoint_override, "override [live] endpoint URL");
  runlive->add_option("--payload", opt.payload_overrides,
                      "payload files, e.g. text=a.json,image=b.bin");
  runlive->add_option("--out-dir", opt.output_override, "override output directory");

  auto* analyze = app.add_subcommand("analyze", "summarize stage-trace CSVs (pooled)");
  analyze->add_option("traces", opt.trace_files, "stage CSV files")->required();
  analyze->add_option("--config", opt.modules_config, "run config supplying [modules]");
  analyze->add_option("--scenario", opt.kinds_scenario, "scenario supplying ai/non_ai kinds");
  analyze->add_option("--format", opt.format, "output format: table|json|csv");

  auto* report = app.add_subcommand("report", "merged multi-run report (one file per run)");
  report->add_option("traces", opt.trace_files, "stage CSV files, one per run")->required();
  report->add_option("--validate", opt.baseline_file,
                     "baseline stage CSV for a deviation section");
  report->add_option("--tradeoff", opt.tradeoff_specs,
                     "training tradeoff points, component=file.csv");
  report->add_option("--config", opt.modules_config, "run config supplying [modules]");
  report->add_option("--scenario", opt.kinds_scenario, "scenario supplying ai/non_ai kinds");
  report->add_option("--format", opt.format, "output format: table|json|csv");

  auto* predict = app.add_subcommand("predict", "closed-form latency predictions");
  predict->add_option("--mu", opt.mu, "service rate, req/s");
  predict->add_option("--lambda", opt.lambdas, "arrival rate, req/s (repeatable)");
  predict->add_option("--p", opt.pct, "percentile (default 99)");
  predict->add_option("--network", opt.network_file, "queueing-network JSON file");
  predict->add_option("--format", opt.format, "output format: table|json");

  auto* validate = app.add_subcommand("validate", "validate a scenario spec");
  validate->add_option("--scenario", opt.validate_scenario, "scenario spec file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (distill->parsed()) return cmd_distill(opt);
    if (simulate->parsed()) return cmd_run(opt, sb::EngineChoice::simulate);
    if (runcmd->parsed()) return cmd_run(opt, std::nullopt);
    if (runlive->parsed()) return cmd_run(opt, sb::EngineChoice::live);
    if (analyze->parsed()) {
      emit_report(sb::build_report(gather_report_inputs(opt, true)), opt.format);
      return kExitOk;
    }
    if (report->parsed()) {
      emit_report(sb::build_report(gather_report_inputs(opt, false)), opt.format);
      return kExitOk;
    }
    if (predict->parsed()) return cmd_predict(opt);
    if (validate->parsed()) return cmd_validate(opt);
  } catch (const sb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sb::SpecError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const sb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
