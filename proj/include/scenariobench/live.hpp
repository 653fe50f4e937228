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
// Live driving: send the configured workload to a real HTTP endpoint and
// record per-request wall-clock latency as single-stage traces (node id
// "online-server"). Timing uses the local monotonic clock only; multi-stage
// timing of a real deployment comes from ingesting its stage log instead.
//
// Closed loop: one thread per user, so at most `users` requests are ever in
// flight. Open loop: requests go out on schedule regardless of outstanding
// responses (no coordinated omission), each on its own thread.
//
// Non-2xx responses become failed traces (no latency sample, counted in the
// error rate). A transport-level failure that survives `retries` attempts
// aborts the run; partial results are returned for persisting.

#ifndef SCENARIOBENCH_LIVE_HPP_
#define SCENARIOBENCH_LIVE_HPP_

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "scenariobench/config.hpp"
#include "scenariobench/errors.hpp"
#include "scenariobench/trace.hpp"
#include "scenariobench/workload.hpp"

namespace scenariobench {

inline constexpr const char* kLiveStageNodeId = "online-server";

struct LiveFailure {
  long request_id = 0;
  std::string query_type;
  std::string reason;  // "http 500", "transport: ...", ...
};

struct LiveResult {
  std::vector<RequestTrace> traces;  // successes only
  std::vector<LiveFailure> failures;
  long issued = 0;
  double error_rate = 0.0;  // failures / issued
  bool aborted = false;
  std::string abort_reason;
};

namespace detail {

struct ParsedEndpoint {
  std::string base;  // scheme://host:port for httplib::Client
  std::string path;  // request path, defaults to "/"
};

inline ParsedEndpoint parse_endpoint(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ConfigError("endpoint \"" + url + "\" must start with http:// or https://");
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open payload file \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class LiveRun {
 public:
  LiveRun(const WorkloadProfile& profile, const LiveConfig& cfg)
      : profile_(profile), cfg_(cfg), endpoint_(parse_endpoint(cfg.endpoint)) {
    profile_.check();
    for (const auto& [type, frac] : profile_.query_mix) {
      if (frac <= 0.0) continue;
      auto it = cfg_.payload_files.find(type);
      if (it == cfg_.payload_files.end())
        throw ConfigError("no payload file configured for query type \"" + type + "\"");
      payload_bytes_[type] = read_file_bytes(it->second);
    }
  }

  LiveResult run() {
    start_ = std::chrono::steady_clock::now();
    if (profile_.mode == WorkloadMode::closed) {
      std::vector<std::thread> workers;
      workers.reserve(static_cast<std::size_t>(profile_.users));
      for (int u = 0; u < profile_.users; ++u)
        workers.emplace_back([this, u] { closed_user_loop(u); });
      for (auto& w : workers) w.join();
    } else {
      auto schedule = generate_open(profile_);
      std::vector<std::thread> inflight;
      inflight.reserve(schedule.size());
      for (const auto& ev : schedule) {
        if (abort_.load()) break;
        std::this_thread::sleep_until(start_ + to_duration(ev.arrival_time_ms));
        long id = ev.request_id;
        std::string type = ev.query_type;
        issued_++;
        inflight.emplace_back([this, id, type] { issue_one(id, type, -1); });
      }
      for (auto& t : inflight) t.join();
    }

    LiveResult r;
    r.traces = std::move(traces_);
    r.failures = std::move(failures_);
    r.issued = issued_.load();
    r.error_rate =
        r.issued > 0 ? static_cast<double>(r.failures.size()) / static_cast<double>(r.issued)
                     : 0.0;
    r.aborted = abort_.load();
    r.abort_reason = abort_reason_;
    std::sort(r.traces.begin(), r.traces.end(),
              [](const RequestTrace& a, const RequestTrace& b) {
                return a.request_id < b.request_id;
              });
    std::sort(r.failures.begin(), r.failures.end(),
              [](const LiveFailure& a, const LiveFailure& b) {
                return a.request_id < b.request_id;
              });
    return r;
  }

 private:
  static std::chrono::steady_clock::duration to_duration(double ms) {
    return std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double, std::milli>(ms));
  }

  double now_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start_)
        .count();
  }

  void closed_user_loop(int user) {
    ClosedUserSampler sampler(profile_, user);
    while (!abort_.load()) {
      std::this_thread::sleep_for(to_duration(sampler.next_think_ms()));
      long id = next_id_.fetch_add(1);
      if (id >= profile_.total_requests) return;
      issued_++;
      issue_one(id, sampler.next_query_type(), user);
    }
  }

  void issue_one(long id, const std::string& type, int user) {
    httplib::Client client(endpoint_.base);
    auto timeout = std::chrono::milliseconds(static_cast<long>(cfg_.timeout_ms));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    const std::string& body = payload_bytes_.at(type);
    double send_ms = now_ms();
    httplib::Result res;
    for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
      res = client.Post(endpoint_.path, body, cfg_.content_type);
      if (res) break;
    }
    double recv_ms = now_ms();

    std::lock_guard<std::mutex> lock(mu_);
    if (!res) {
      failures_.push_back({id, type, "transport: " + httplib::to_string(res.error())});
      if (!abort_.exchange(true))
        abort_reason_ = "connection to " + cfg_.endpoint + " failed after " +
                        std::to_string(cfg_.retries + 1) + " attempts: " +
                        httplib::to_string(res.error());
      return;
    }
    if (res->status < 200 || res->status >= 300) {
      failures_.push_back({id, type, "http " + std::to_string(res->status)});
      return;
    }
    RequestTrace t;
    t.request_id = id;
    t.query_type = type;
    t.user_index = user;
    t.arrival_ms = send_ms;
    t.completion_ms = recv_ms;
    t.warmup = send_ms < profile_.warmup_ms;
    t.stages.push_back({kLiveStageNodeId, send_ms, send_ms, recv_ms});
    traces_.push_back(std::move(t));
  }

  WorkloadProfile profile_;
  LiveConfig cfg_;
  ParsedEndpoint endpoint_;
  std::map<std::string, std::string> payload_bytes_;

  std::chrono::steady_clock::time_point start_;
  std::atomic<long> next_id_{0};
  std::atomic<long> issued_{0};
  std::atomic<bool> abort_{false};
  std::string abort_reason_;
  std::mutex mu_;
  std::vector<RequestTrace> traces_;
  std::vector<LiveFailure> failures_;
};

}  // namespace detail

inline LiveResult run_live(const WorkloadProfile& profile, const LiveConfig& cfg) {
  return detail::LiveRun(profile, cfg).run();
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_LIVE_HPP_
