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
// Per-request traces and their on-disk CSV formats.
//
// Stage CSV, one row per stage:
//   request_id,query_type,user,node_id,enqueue_ms,start_ms,end_ms,warmup
// Request summary CSV, one row per request:
//   request_id,query_type,arrival_ms,completion_ms,latency_ms,warmup
//
// Timestamps are written with shortest round-trip formatting, so
// ingest(emit(traces)) == traces exactly.

#ifndef SCENARIOBENCH_TRACE_HPP_
#define SCENARIOBENCH_TRACE_HPP_

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scenariobench/errors.hpp"

namespace scenariobench {

struct StageRecord {
  std::string node_id;
  double enqueue_ms = 0.0;
  double start_ms = 0.0;
  double end_ms = 0.0;

  double sojourn_ms() const { return end_ms - enqueue_ms; }

  bool operator==(const StageRecord&) const = default;
};

struct RequestTrace {
  long request_id = 0;
  std::string query_type;
  int user_index = -1;  // -1 in open mode
  double arrival_ms = 0.0;
  double completion_ms = 0.0;
  std::vector<StageRecord> stages;  // topological order
  bool warmup = false;
  bool failed = false;  // live driving only; failed traces carry no latency

  double latency_ms() const { return completion_ms - arrival_ms; }

  bool operator==(const RequestTrace&) const = default;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double_field(const std::string& s, int line_no, const char* field) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw RunError("line " + std::to_string(line_no) + ": malformed " + field + " \"" + s + "\"");
  return v;
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline constexpr const char* kStageCsvHeader =
    "request_id,query_type,user,node_id,enqueue_ms,start_ms,end_ms,warmup";
inline constexpr const char* kRequestCsvHeader =
    "request_id,query_type,arrival_ms,completion_ms,latency_ms,warmup";

inline std::string emit_stage_csv(const std::vector<RequestTrace>& traces) {
  std::string out = std::string(kStageCsvHeader) + "\n";
  for (const auto& t : traces) {
    if (t.failed) continue;
    for (const auto& s : t.stages) {
      out += std::to_string(t.request_id) + "," + t.query_type + "," +
             std::to_string(t.user_index) + "," + s.node_id + "," +
             detail::format_double(s.enqueue_ms) + "," + detail::format_double(s.start_ms) +
             "," + detail::format_double(s.end_ms) + "," + (t.warmup ? "1" : "0") + "\n";
    }
  }
  return out;
}

inline std::string emit_request_csv(const std::vector<RequestTrace>& traces) {
  std::string out = std::string(kRequestCsvHeader) + "\n";
  for (const auto& t : traces) {
    if (t.failed) continue;
    out += std::to_string(t.request_id) + "," + t.query_type + "," +
           detail::format_double(t.arrival_ms) + "," + detail::format_double(t.completion_ms) +
           "," + detail::format_double(t.latency_ms()) + "," + (t.warmup ? "1" : "0") + "\n";
  }
  return out;
}

struct IngestResult {
  std::vector<RequestTrace> traces;
  // Row-level timestamp-order violations: line number + description.
  std::vector<std::pair<int, std::string>> violations;
};

/// Reconstruct multi-stage traces from a stage CSV, keyed by request_id.
/// Rows with inverted timestamps are reported in `violations` and skipped.
inline IngestResult ingest_stage_log_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  IngestResult result;
  std::map<long, RequestTrace> by_id;

  while (std::getline(in, line)) {
    line_no++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kStageCsvHeader)
        throw RunError("line 1: expected stage CSV header \"" + std::string(kStageCsvHeader) +
                       "\"");
      continue;
    }
    auto fields = detail::split_csv_row(line);
    if (fields.size() != 8)
      throw RunError("line " + std::to_string(line_no) + ": expected 8 fields, got " +
                     std::to_string(fields.size()));
    long request_id = 0;
    {
      auto res = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(),
                                 request_id);
      if (res.ec != std::errc{})
        throw RunError("line " + std::to_string(line_no) + ": malformed request_id");
    }
    StageRecord s;
    s.node_id = fields[3];
    s.enqueue_ms = detail::parse_double_field(fields[4], line_no, "enqueue_ms");
    s.start_ms = detail::parse_double_field(fields[5], line_no, "start_ms");
    s.end_ms = detail::parse_double_field(fields[6], line_no, "end_ms");
    if (!(s.enqueue_ms <= s.start_ms && s.start_ms <= s.end_ms)) {
      result.violations.emplace_back(
          line_no, "timestamp inversion at node \"" + s.node_id + "\"");
      continue;
    }
    auto& t = by_id[request_id];
    t.request_id = request_id;
    t.query_type = fields[1];
    t.user_index = static_cast<int>(detail::parse_double_field(fields[2], line_no, "user"));
    t.warmup = fields[7] == "1";
    t.stages.push_back(std::move(s));
  }

  for (auto& [id, t] : by_id) {
    double arrival = t.stages.front().enqueue_ms;
    double completion = t.stages.front().end_ms;
    for (const auto& s : t.stages) {
      arrival = std::min(arrival, s.enqueue_ms);
      completion = std::max(completion, s.end_ms);
    }
    t.arrival_ms = arrival;
    t.completion_ms = completion;
    result.traces.push_back(std::move(t));
  }
  return result;
}

inline IngestResult ingest_stage_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RunError("cannot open trace file \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ingest_stage_log_text(ss.str());
  } catch (const RunError& e) {
    throw RunError(path + ": " + e.what());
  }
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_TRACE_HPP_
