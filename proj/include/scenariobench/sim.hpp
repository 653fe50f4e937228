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
// Deterministic discrete-event simulation of a scenario graph under a
// workload profile. Each node is a FIFO queue with k parallel servers;
// requests route per edge probabilities for their query type; fanout-all
// nodes scatter to every branch and the join waits for the slowest one.
//
// The clock is virtual. Identical (graph, profile, seed) inputs produce an
// identical trace list: the event heap is keyed by (time, kind, sequence
// number) and every random draw comes from a named substream of the seed.

#ifndef SCENARIOBENCH_SIM_HPP_
#define SCENARIOBENCH_SIM_HPP_

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "scenariobench/scenario.hpp"
#include "scenariobench/trace.hpp"
#include "scenariobench/workload.hpp"

namespace scenariobench {

struct SaturationWarning {
  std::string node_id;
  double utilization = 0.0;
  bool unstable = false;  // utilization >= 1
};

/// Open-loop capacity check: per node, effective arrival rate (lambda times
/// visit ratio) against k*mu. Nodes at utilization >= 0.9 are reported;
/// >= 1 is flagged unstable. Advisory only.
inline std::vector<SaturationWarning> capacity_check(const ScenarioGraph& g,
                                                     const WorkloadProfile& profile) {
  profile.check();
  if (profile.mode != WorkloadMode::open)
    throw ConfigError("capacity_check requires an open-loop profile");
  auto visits = visit_ratios(g, profile.query_mix);
  std::vector<SaturationWarning> out;
  for (const auto& n : g.nodes()) {
    if (n.kind == NodeKind::entry || n.kind == NodeKind::sink) continue;
    double mean = n.service_time.mean_ms();
    if (mean <= 0.0) continue;
    double mu_per_server = 1000.0 / mean;  // requests/second
    double offered = profile.arrival_rate * visits[n.id];
    double util = offered / (mu_per_server * n.servers);
    if (util >= 0.9) out.push_back({n.id, util, util >= 1.0});
  }
  std::sort(out.begin(), out.end(),
            [](const SaturationWarning& a, const SaturationWarning& b) {
              return a.node_id < b.node_id;
            });
  return out;
}

namespace detail {

struct SimToken {
  long request_id = 0;
  int type_index = 0;
  int hop = 0;  // routing-decision counter for this request
  double enqueue_ms = 0.0;
  double start_ms = 0.0;
};

struct CompiledEdgeChoice {
  double cumulative = 0.0;
  int to = 0;
};

struct CompiledNode {
  std::string id;
  NodeKind kind = NodeKind::non_ai;
  int servers = 1;
  Fanout fanout = Fanout::pick;
  int topo_index = 0;
  // Per query type: either a cumulative routing table (pick) or the full
  // branch list (all). Empty = no route for that type.
  std::vector<std::vector<CompiledEdgeChoice>> routes;
  std::vector<int> fanout_branches;
  int join = -1;
  std::vector<const ServiceDistribution*> service_by_type;  // resolved per type
};

class Simulator {
 public:
  Simulator(const ScenarioGraph& g, const WorkloadProfile& profile, std::uint64_t seed)
      : graph_(g), profile_(profile), seed_(seed) {
    profile_.check();
    require_valid(g);
    compile();
  }

  std::vector<RequestTrace> run() {
    if (profile_.mode == WorkloadMode::open) {
      for (const auto& ev : generate_open(profile_)) {
        schedule(ev.arrival_time_ms, kArrivalKind, new_arrival(ev));
      }
    } else {
      users_.reserve(static_cast<std::size_t>(profile_.users));
      for (int u = 0; u < profile_.users; ++u) {
        users_.push_back(std::make_unique<ClosedUserSampler>(profile_, u));
        schedule(users_.back()->next_think_ms(), kIssueKind, u);
      }
    }

    while (!events_.empty()) {
      auto [time, kind, seq, payload] = events_.top();
      events_.pop();
      now_ = time;
      switch (kind) {
        case kServiceDoneKind: on_service_done(payload); break;
        case kArrivalKind: on_external_arrival(payload); break;
        case kIssueKind: on_user_issue(payload); break;
      }
    }

    if (completed_ != issued_)
      throw RunError("simulation did not drain: issued " + std::to_string(issued_) +
                     ", completed " + std::to_string(completed_));
    std::sort(traces_.begin(), traces_.end(),
              [](const RequestTrace& a, const RequestTrace& b) {
                return a.request_id < b.request_id;
              });
    return std::move(traces_);
  }

 private:
  // Event kinds double as same-instant ordering: completions free servers
  // before new work arrives at the same timestamp.
  static constexpr int kServiceDoneKind = 0;
  static constexpr int kArrivalKind = 1;
  static constexpr int kIssueKind = 2;

  using Event = std::tuple<double, int, std::uint64_t, long>;

  void compile() {
    auto order = topological_order(graph_);
    std::map<std::string, int> topo_index;
    for (std::size_t i = 0; i < order.size(); ++i) topo_index[order[i]] = static_cast<int>(i);

    type_index_.clear();
    for (std::size_t i = 0; i < graph_.query_types().size(); ++i)
      type_index_[graph_.query_types()[i]] = static_cast<int>(i);

    node_index_.clear();
    for (std::size_t i = 0; i < graph_.nodes().size(); ++i)
      node_index_[graph_.nodes()[i].id] = static_cast<int>(i);

    const int ntypes = static_cast<int>(graph_.query_types().size());
    nodes_.clear();
    for (const auto& n : graph_.nodes()) {
      CompiledNode c;
      c.id = n.id;
      c.kind = n.kind;
      c.servers = n.servers;
      c.fanout = n.fanout;
      c.topo_index = topo_index[n.id];
      c.routes.resize(static_cast<std::size_t>(ntypes));
      c.service_by_type.resize(static_cast<std::size_t>(ntypes), &n.service_time);
      for (const auto& [t, d] : n.service_time_by_type)
        if (type_index_.count(t)) c.service_by_type[type_index_[t]] = &d;

      if (n.fanout == Fanout::all) {
        for (const auto& s : graph_.successors(n.id))
          c.fanout_branches.push_back(node_index_.at(s));
        auto first_branch = graph_.successors(n.id).front();
        c.join = node_index_.at(graph_.successors(first_branch).front());
      } else {
        for (int ti = 0; ti < ntypes; ++ti) {
          const std::string& t = graph_.query_types()[static_cast<std::size_t>(ti)];
          std::vector<std::pair<std::string, double>> choices;
          for (const auto& e : graph_.edges()) {
            if (e.from != n.id) continue;
            auto it = e.routing.find(t);
            if (it != e.routing.end() && it->second > 0.0)
              choices.emplace_back(e.to, it->second);
          }
          std::sort(choices.begin(), choices.end());
          double acc = 0.0;
          for (const auto& [to, p] : choices) {
            acc += p;
            c.routes[static_cast<std::size_t>(ti)].push_back(
                {acc, node_index_.at(to)});
          }
        }
      }
      nodes_.push_back(std::move(c));
    }

    queues_.assign(nodes_.size(), {});
    busy_.assign(nodes_.size(), 0);
    service_rng_.clear();
    for (const auto& n : nodes_)
      service_rng_.push_back(std::make_unique<RngStream>(seed_, "svc:" + n.id));
    entry_index_ = node_index_.at(graph_.entry_id());
  }

  void schedule(double time, int kind, long payload) {
    events_.emplace(time, kind, seq_++, payload);
  }

  long new_arrival(const ArrivalEvent& ev) {
    pending_arrivals_.push_back(ev);
    return static_cast<long>(pending_arrivals_.size()) - 1;
  }

  void on_external_arrival(long idx) {
    const auto& ev = pending_arrivals_[static_cast<std::size_t>(idx)];
    begin_request(ev.query_type, -1);
  }

  void on_user_issue(long user) {
    if (issued_ >= profile_.total_requests) return;  // budget exhausted, user retires
    auto& sampler = *users_[static_cast<std::size_t>(user)];
    begin_request(sampler.next_query_type(), static_cast<int>(user));
  }

  void begin_request(const std::string& type, int user) {
    auto it = type_index_.find(type);
    if (it == type_index_.end())
      throw SpecError("workload query type \"" + type + "\" is not in the scenario");
    long id = issued_++;
    RequestTrace t;
    t.request_id = id;
    t.query_type = type;
    t.user_index = user;
    t.arrival_ms = now_;
    t.warmup = now_ < profile_.warmup_ms;
    traces_.push_back(std::move(t));  // request ids are dense, slot == id

    SimToken token{id, it->second, 0, now_, now_};
    route_onward(entry_index_, token);
  }

  const CompiledNode& cn(int idx) const { return nodes_[static_cast<std::size_t>(idx)]; }

  void route_onward(int node_idx, SimToken token) {
    const CompiledNode& n = cn(node_idx);
    if (n.kind == NodeKind::sink) {
      complete_request(token);
      return;
    }
    if (n.fanout == Fanout::all) {
      if (n.fanout_branches.empty())
        throw SpecError("no route to a sink from node \"" + n.id + "\"");
      barriers_[{token.request_id, n.join}] =
          {static_cast<int>(n.fanout_branches.size()), 0};
      for (int b : n.fanout_branches) arrive_at(b, token);
      return;
    }
    const auto& table = n.routes[static_cast<std::size_t>(token.type_index)];
    if (table.empty())
      throw SpecError("no route to a sink from node \"" + n.id + "\" for query type \"" +
                      graph_.query_types()[static_cast<std::size_t>(token.type_index)] + "\"");
    double u = counter_uniform01(seed_, "route",
                                 static_cast<std::uint64_t>(token.request_id),
                                 static_cast<std::uint64_t>(token.hop)) *
               table.back().cumulative;
    token.hop++;
    int target = table.back().to;
    for (const auto& choice : table) {
      if (u <= choice.cumulative) {
        target = choice.to;
        break;
      }
    }
    arrive_at(target, token);
  }

  void arrive_at(int node_idx, SimToken token) {
    // A pending join barrier absorbs branch tokens until the last one.
    auto bit = barriers_.find({token.request_id, node_idx});
    if (bit != barriers_.end()) {
      bit->second.second++;
      if (bit->second.second < bit->second.first) return;
      barriers_.erase(bit);
    }
    const CompiledNode& n = cn(node_idx);
    if (n.kind == NodeKind::entry || n.kind == NodeKind::sink) {
      route_onward(node_idx, token);  // zero service, instant pass-through
      return;
    }
    token.enqueue_ms = now_;
    if (busy_[static_cast<std::size_t>(node_idx)] < n.servers) {
      start_service(node_idx, token);
    } else {
      queues_[static_cast<std::size_t>(node_idx)].push_back(token);
    }
  }

  void start_service(int node_idx, SimToken token) {
    const CompiledNode& n = cn(node_idx);
    token.start_ms = now_;
    busy_[static_cast<std::size_t>(node_idx)]++;
    double dur =
        n.service_by_type[static_cast<std::size_t>(token.type_index)]->sample_ms(
            *service_rng_[static_cast<std::size_t>(node_idx)]);
    in_service_.push_back({node_idx, token});
    schedule(now_ + dur, kServiceDoneKind, static_cast<long>(in_service_.size()) - 1);
  }

  void on_service_done(long slot) {
    auto [node_idx, token] = in_service_[static_cast<std::size_t>(slot)];
    const CompiledNode& n = cn(node_idx);
    auto& trace = traces_[static_cast<std::size_t>(token.request_id)];
    trace.stages.push_back({n.id, token.enqueue_ms, token.start_ms, now_});

    busy_[static_cast<std::size_t>(node_idx)]--;
    auto& q = queues_[static_cast<std::size_t>(node_idx)];
    if (!q.empty()) {
      SimToken next = q.front();
      q.pop_front();
      start_service(node_idx, next);
    }
    route_onward(node_idx, token);
  }

  void complete_request(const SimToken& token) {
    auto& trace = traces_[static_cast<std::size_t>(token.request_id)];
    trace.completion_ms = now_;
    std::sort(trace.stages.begin(), trace.stages.end(),
              [this](const StageRecord& a, const StageRecord& b) {
                int ta = cn(node_index_.at(a.node_id)).topo_index;
                int tb = cn(node_index_.at(b.node_id)).topo_index;
                return ta < tb;
              });
    completed_++;
    if (profile_.mode == WorkloadMode::closed && trace.user_index >= 0 &&
        issued_ < profile_.total_requests) {
      auto& sampler = *users_[static_cast<std::size_t>(trace.user_index)];
      schedule(now_ + sampler.next_think_ms(), kIssueKind, trace.user_index);
    }
  }

  const ScenarioGraph& graph_;
  WorkloadProfile profile_;
  std::uint64_t seed_;

  std::vector<CompiledNode> nodes_;
  std::map<std::string, int> type_index_;
  std::map<std::string, int> node_index_;
  int entry_index_ = 0;

  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::uint64_t seq_ = 0;
  double now_ = 0.0;

  std::vector<std::deque<SimToken>> queues_;
  std::vector<int> busy_;
  std::vector<std::pair<int, SimToken>> in_service_;
  std::map<std::pair<long, int>, std::pair<int, int>> barriers_;  // (req, join) -> (want, got)
  std::vector<std::unique_ptr<RngStream>> service_rng_;

  std::vector<std::unique_ptr<ClosedUserSampler>> users_;
  std::vector<ArrivalEvent> pending_arrivals_;
  std::vector<RequestTrace> traces_;
  long issued_ = 0;
  long completed_ = 0;
};

}  // namespace detail

/// Execute the workload against the graph; returns one trace per request,
/// sorted by request id. The profile's own seed is used unless overridden.
inline std::vector<RequestTrace> simulate(const ScenarioGraph& g,
                                          const WorkloadProfile& profile,
                                          std::uint64_t seed) {
  return detail::Simulator(g, profile, seed).run();
}

inline std::vector<RequestTrace> simulate(const ScenarioGraph& g,
                                          const WorkloadProfile& profile) {
  return simulate(g, profile, profile.seed);
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_SIM_HPP_
