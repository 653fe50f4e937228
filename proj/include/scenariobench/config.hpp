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
// Run configuration: a TOML-style key/value file with [sections]. The subset
// understood here: strings, numbers, booleans, string arrays, and one-level
// inline tables ({ text = 0.99 }), plus # comments. Scenario graphs stay in
// their own JSON format; this file only wires a run together.
//
//   [run]       scenario, output_dir, seed, repetitions, engine, distill
//   [distill]   fraction_threshold, r1..r6
//   [workload]  mode, users, arrival_rate, think_time_mean_ms, warmup_ms,
//               total_requests, query_mix
//   [live]      endpoint, payloads, content_type, timeout_ms, retries
//   [modules]   <module name> = ["node-id", ...]

#ifndef SCENARIOBENCH_CONFIG_HPP_
#define SCENARIOBENCH_CONFIG_HPP_

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scenariobench/distill.hpp"
#include "scenariobench/errors.hpp"
#include "scenariobench/workload.hpp"

namespace scenariobench {

namespace toml {

struct Value {
  enum class Kind { string, number, boolean, array, table } kind = Kind::string;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<Value> array;
  std::map<std::string, Value> table;
};

using Section = std::map<std::string, Value>;
using Document = std::map<std::string, Section>;

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) i++;
}

inline Value parse_value(const std::string& s, std::size_t& i, int line_no);

inline std::string parse_string(const std::string& s, std::size_t& i, int line_no) {
  if (s[i] != '"') throw ConfigError("line " + std::to_string(line_no) + ": expected string");
  i++;
  std::string out;
  while (i < s.size() && s[i] != '"') {
    if (s[i] == '\\' && i + 1 < s.size()) i++;
    out += s[i++];
  }
  if (i >= s.size()) throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
  i++;
  return out;
}

inline std::string parse_key(const std::string& s, std::size_t& i, int line_no) {
  skip_ws(s, i);
  if (i < s.size() && s[i] == '"') return parse_string(s, i, line_no);
  std::string key;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                          s[i] == '-' || s[i] == '.'))
    key += s[i++];
  if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": expected a key");
  return key;
}

inline Value parse_value(const std::string& s, std::size_t& i, int line_no) {
  skip_ws(s, i);
  if (i >= s.size()) throw ConfigError("line " + std::to_string(line_no) + ": missing value");
  Value v;
  char c = s[i];
  if (c == '"') {
    v.kind = Value::Kind::string;
    v.str = parse_string(s, i, line_no);
  } else if (c == '[') {
    v.kind = Value::Kind::array;
    i++;
    skip_ws(s, i);
    while (i < s.size() && s[i] != ']') {
      v.array.push_back(parse_value(s, i, line_no));
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') {
        i++;
        skip_ws(s, i);
      }
    }
    if (i >= s.size()) throw ConfigError("line " + std::to_string(line_no) + ": unterminated array");
    i++;
  } else if (c == '{') {
    v.kind = Value::Kind::table;
    i++;
    skip_ws(s, i);
    while (i < s.size() && s[i] != '}') {
      std::string key = parse_key(s, i, line_no);
      skip_ws(s, i);
      if (i >= s.size() || s[i] != '=')
        throw ConfigError("line " + std::to_string(line_no) + ": expected '=' in inline table");
      i++;
      v.table[key] = parse_value(s, i, line_no);
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') {
        i++;
        skip_ws(s, i);
      }
    }
    if (i >= s.size()) throw ConfigError("line " + std::to_string(line_no) + ": unterminated table");
    i++;
  } else if (s.compare(i, 4, "true") == 0) {
    v.kind = Value::Kind::boolean;
    v.boolean = true;
    i += 4;
  } else if (s.compare(i, 5, "false") == 0) {
    v.kind = Value::Kind::boolean;
    v.boolean = false;
    i += 5;
  } else {
    std::string num;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '+' ||
                            s[i] == '-' || s[i] == '.' || s[i] == 'e' || s[i] == 'E' ||
                            s[i] == '_'))
      num += s[i++];
    std::erase(num, '_');
    if (num.empty()) throw ConfigError("line " + std::to_string(line_no) + ": bad value");
    try {
      v.kind = Value::Kind::number;
      v.num = std::stod(num);
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(line_no) + ": bad number \"" + num + "\"");
    }
  }
  return v;
}

}  // namespace detail

inline Document parse(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    // strip comment (outside strings)
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
      if (line[i] == '#' && !in_str) {
        line.resize(i);
        break;
      }
    }
    std::size_t i = 0;
    detail::skip_ws(line, i);
    if (i >= line.size() || line[i] == '\r') continue;
    if (line[i] == '[') {
      auto close = line.find(']', i);
      if (close == std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      section = line.substr(i + 1, close - i - 1);
      doc[section];
      continue;
    }
    std::string key = detail::parse_key(line, i, line_no);
    detail::skip_ws(line, i);
    if (i >= line.size() || line[i] != '=')
      throw ConfigError("line " + std::to_string(line_no) + ": expected '=' after key \"" +
                        key + "\"");
    i++;
    doc[section][key] = detail::parse_value(line, i, line_no);
  }
  return doc;
}

}  // namespace toml

// ---------------------------------------------------------------------------
// RunConfig
// ---------------------------------------------------------------------------

enum class EngineChoice { simulate, live };

struct LiveConfig {
  std::string endpoint;
  std::map<std::string, std::string> payload_files;  // query_type -> file
  std::string content_type = "application/octet-stream";
  double timeout_ms = 30000.0;
  int retries = 3;
};

struct RunConfig {
  std::filesystem::path scenario_path;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  int repetitions = 3;
  EngineChoice engine = EngineChoice::simulate;
  bool distill_enabled = true;
  DistillConfig distill;
  WorkloadProfile workload;
  LiveConfig live;
  std::map<std::string, std::string> module_of_node;  // node id -> module name

  void check() const {
    if (scenario_path.empty()) throw ConfigError("[run] scenario is required");
    if (!std::filesystem::exists(scenario_path))
      throw ConfigError("scenario spec \"" + scenario_path.string() + "\" does not exist");
    if (repetitions < 1) throw ConfigError("[run] repetitions must be >= 1");
    workload.check();
    if (engine == EngineChoice::live) {
      if (live.endpoint.empty()) throw ConfigError("[live] endpoint is required in live mode");
      for (const auto& [t, f] : live.payload_files)
        if (!std::filesystem::exists(f))
          throw ConfigError("payload file \"" + f + "\" for query type \"" + t +
                            "\" does not exist");
      for (const auto& [t, frac] : workload.query_mix)
        if (frac > 0.0 && !live.payload_files.count(t))
          throw ConfigError("no payload file configured for query type \"" + t + "\"");
    }
  }
};

namespace detail {

inline const toml::Value* find(const toml::Section& s, const std::string& key) {
  auto it = s.find(key);
  return it == s.end() ? nullptr : &it->second;
}

inline double num_or(const toml::Section& s, const std::string& key, double fallback) {
  const auto* v = find(s, key);
  if (!v) return fallback;
  if (v->kind != toml::Value::Kind::number)
    throw ConfigError("config key \"" + key + "\" must be a number");
  return v->num;
}

inline std::string str_or(const toml::Section& s, const std::string& key,
                          const std::string& fallback) {
  const auto* v = find(s, key);
  if (!v) return fallback;
  if (v->kind != toml::Value::Kind::string)
    throw ConfigError("config key \"" + key + "\" must be a string");
  return v->str;
}

inline bool bool_or(const toml::Section& s, const std::string& key, bool fallback) {
  const auto* v = find(s, key);
  if (!v) return fallback;
  if (v->kind != toml::Value::Kind::boolean)
    throw ConfigError("config key \"" + key + "\" must be a boolean");
  return v->boolean;
}

}  // namespace detail

inline RunConfig parse_run_config(const std::string& text,
                                  const std::filesystem::path& base_dir = ".") {
  auto doc = toml::parse(text);
  RunConfig cfg;

  auto resolve = [&base_dir](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() ? base_dir / path : path;
  };

  if (doc.count("run")) {
    const auto& run = doc["run"];
    std::string scen = detail::str_or(run, "scenario", "");
    if (!scen.empty()) cfg.scenario_path = resolve(scen);
    cfg.output_dir = resolve(detail::str_or(run, "output_dir", "out"));
    cfg.seed = static_cast<std::uint64_t>(detail::num_or(run, "seed", 0));
    cfg.repetitions = static_cast<int>(detail::num_or(run, "repetitions", 3));
    std::string engine = detail::str_or(run, "engine", "simulate");
    if (engine == "simulate")
      cfg.engine = EngineChoice::simulate;
    else if (engine == "live")
      cfg.engine = EngineChoice::live;
    else
      throw ConfigError("[run] engine must be \"simulate\" or \"live\"");
    cfg.distill_enabled = detail::bool_or(run, "distill", true);
  }

  if (doc.count("distill")) {
    const auto& d = doc["distill"];
    cfg.distill.fraction_threshold = detail::num_or(d, "fraction_threshold", 0.01);
    for (int r = 1; r <= 6; ++r)
      cfg.distill.rule_toggles[r - 1] =
          detail::bool_or(d, "r" + std::to_string(r), true);
  }

  if (doc.count("workload")) {
    const auto& w = doc["workload"];
    std::string mode = detail::str_or(w, "mode", "open");
    if (mode == "open")
      cfg.workload.mode = WorkloadMode::open;
    else if (mode == "closed")
      cfg.workload.mode = WorkloadMode::closed;
    else
      throw ConfigError("[workload] mode must be \"open\" or \"closed\"");
    cfg.workload.users = static_cast<int>(detail::num_or(w, "users", 1));
    cfg.workload.arrival_rate = detail::num_or(w, "arrival_rate", 1.0);
    cfg.workload.think_time_mean_ms = detail::num_or(w, "think_time_mean_ms", 1000.0);
    cfg.workload.warmup_ms = detail::num_or(w, "warmup_ms", 0.0);
    cfg.workload.total_requests =
        static_cast<long>(detail::num_or(w, "total_requests", 1));
    cfg.workload.seed = cfg.seed;
    if (const auto* mix = detail::find(w, "query_mix")) {
      if (mix->kind != toml::Value::Kind::table)
        throw ConfigError("[workload] query_mix must be an inline table");
      for (const auto& [t, v] : mix->table) {
        if (v.kind != toml::Value::Kind::number)
          throw ConfigError("query_mix fractions must be numbers");
        cfg.workload.query_mix[t] = v.num;
      }
    }
  }

  if (doc.count("live")) {
    const auto& l = doc["live"];
    cfg.live.endpoint = detail::str_or(l, "endpoint", "");
    cfg.live.content_type = detail::str_or(l, "content_type", cfg.live.content_type);
    cfg.live.timeout_ms = detail::num_or(l, "timeout_ms", cfg.live.timeout_ms);
    cfg.live.retries = static_cast<int>(detail::num_or(l, "retries", cfg.live.retries));
    if (const auto* p = detail::find(l, "payloads")) {
      if (p->kind != toml::Value::Kind::table)
        throw ConfigError("[live] payloads must be an inline table");
      for (const auto& [t, v] : p->table) {
        if (v.kind != toml::Value::Kind::string)
          throw ConfigError("payload entries must be file path strings");
        cfg.live.payload_files[t] = resolve(v.str).string();
      }
    }
  }

  if (doc.count("modules")) {
    for (const auto& [module, v] : doc["modules"]) {
      if (v.kind != toml::Value::Kind::array)
        throw ConfigError("[modules] " + module + " must be an array of node ids");
      for (const auto& item : v.array) {
        if (item.kind != toml::Value::Kind::string)
          throw ConfigError("[modules] " + module + " entries must be strings");
        cfg.module_of_node[item.str] = module;
      }
    }
  }

  return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config \"" + path.string() + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_run_config(ss.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_CONFIG_HPP_
