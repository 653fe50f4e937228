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
// The scenario data model: an annotated DAG of AI / non-AI components with
// per-query-type probabilistic routing, plus the graph queries the rest of
// the toolkit builds on (validation, topological order, reachability, visit
// ratios, expected critical path).
//
// Values are immutable once built; every query is a const member or free
// function, so graphs can be shared across threads freely.

#ifndef SCENARIOBENCH_SCENARIO_HPP_
#define SCENARIOBENCH_SCENARIO_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "scenariobench/errors.hpp"
#include "scenariobench/rng.hpp"

namespace scenariobench {

constexpr double kRoutingMassTolerance = 1e-9;

enum class NodeKind { entry, ai, non_ai, sink };

inline std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::entry: return "entry";
    case NodeKind::ai: return "ai";
    case NodeKind::non_ai: return "non_ai";
    case NodeKind::sink: return "sink";
  }
  return "?";
}

inline NodeKind node_kind_from_string(const std::string& s) {
  if (s == "entry") return NodeKind::entry;
  if (s == "ai") return NodeKind::ai;
  if (s == "non_ai") return NodeKind::non_ai;
  if (s == "sink") return NodeKind::sink;
  throw SpecError("unknown node kind \"" + s + "\"");
}

// ---------------------------------------------------------------------------
// Service-time distributions (milliseconds)
// ---------------------------------------------------------------------------

struct ConstantDist {
  double ms = 0.0;
};
struct ExponentialDist {
  double mean_ms = 0.0;
};
struct LognormalDist {
  double mu = 0.0;
  double sigma = 0.0;
};
struct EmpiricalDist {
  std::string file;             // as written in the spec file
  std::vector<double> samples;  // loaded at parse time, all > 0
};

class ServiceDistribution {
 public:
  using Variant =
      std::variant<ConstantDist, ExponentialDist, LognormalDist, EmpiricalDist>;

  ServiceDistribution() : v_(ConstantDist{0.0}) {}  // zero service (entry/sink)
  explicit ServiceDistribution(Variant v) : v_(std::move(v)) {}

  static ServiceDistribution constant(double ms) {
    return ServiceDistribution(ConstantDist{ms});
  }
  static ServiceDistribution exponential(double mean_ms) {
    return ServiceDistribution(ExponentialDist{mean_ms});
  }
  static ServiceDistribution lognormal(double mu, double sigma) {
    return ServiceDistribution(LognormalDist{mu, sigma});
  }
  static ServiceDistribution empirical(std::string file, std::vector<double> samples) {
    return ServiceDistribution(EmpiricalDist{std::move(file), std::move(samples)});
  }

  const Variant& variant() const { return v_; }

  bool is_zero() const {
    const auto* c = std::get_if<ConstantDist>(&v_);
    return c != nullptr && c->ms == 0.0;
  }

  double mean_ms() const {
    return std::visit(
        [](const auto& d) -> double {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, ConstantDist>) {
            return d.ms;
          } else if constexpr (std::is_same_v<T, ExponentialDist>) {
            return d.mean_ms;
          } else if constexpr (std::is_same_v<T, LognormalDist>) {
            return std::exp(d.mu + d.sigma * d.sigma / 2.0);
          } else {
            double sum = 0.0;
            for (double s : d.samples) sum += s;
            return d.samples.empty() ? 0.0 : sum / static_cast<double>(d.samples.size());
          }
        },
        v_);
  }

  double sample_ms(RngStream& rng) const {
    return std::visit(
        [&rng](const auto& d) -> double {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, ConstantDist>) {
            return d.ms;
          } else if constexpr (std::is_same_v<T, ExponentialDist>) {
            return rng.exponential(d.mean_ms);
          } else if constexpr (std::is_same_v<T, LognormalDist>) {
            return rng.lognormal(d.mu, d.sigma);
          } else {
            return d.samples[rng.pick_index(d.samples.size())];
          }
        },
        v_);
  }

  /// Empty string when parameters are valid, else a description of the problem.
  std::string parameter_problem() const {
    return std::visit(
        [](const auto& d) -> std::string {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, ConstantDist>) {
            if (d.ms <= 0.0) return "constant ms must be > 0";
          } else if constexpr (std::is_same_v<T, ExponentialDist>) {
            if (d.mean_ms <= 0.0) return "exponential mean_ms must be > 0";
          } else if constexpr (std::is_same_v<T, LognormalDist>) {
            if (d.sigma <= 0.0) return "lognormal sigma must be > 0";
          } else {
            if (d.samples.empty()) return "empirical sample set is empty";
            for (double s : d.samples)
              if (s <= 0.0) return "empirical samples must all be > 0";
          }
          return "";
        },
        v_);
  }

  bool operator==(const ServiceDistribution& other) const {
    return v_ == other.v_;
  }

 private:
  Variant v_;
};

inline bool operator==(const ConstantDist& a, const ConstantDist& b) {
  return a.ms == b.ms;
}
inline bool operator==(const ExponentialDist& a, const ExponentialDist& b) {
  return a.mean_ms == b.mean_ms;
}
inline bool operator==(const LognormalDist& a, const LognormalDist& b) {
  return a.mu == b.mu && a.sigma == b.sigma;
}
inline bool operator==(const EmpiricalDist& a, const EmpiricalDist& b) {
  return a.file == b.file && a.samples == b.samples;
}

// ---------------------------------------------------------------------------
// Distilling annotations
// ---------------------------------------------------------------------------

struct DistillAnnotations {
  std::optional<std::string> similarity_group;  // R1
  bool essential = false;                       // R1 keep-marker
  std::optional<double> traffic_fraction;       // R2, in [0,1]
  bool auxiliary = false;                       // R3
  std::vector<std::string> model_variants;      // R4
  std::optional<std::string> default_model;     // R4; must be in model_variants
  std::optional<std::string> merge_group;       // R5

  bool empty() const {
    return !similarity_group && !essential && !traffic_fraction && !auxiliary &&
           model_variants.empty() && !default_model && !merge_group;
  }

  bool operator==(const DistillAnnotations&) const = default;
};

// ---------------------------------------------------------------------------
// Nodes, edges, graph
// ---------------------------------------------------------------------------

/// How a node hands a request to its successors.
///   pick: choose one successor per the edge routing probabilities.
///   all:  scatter-gather; every successor runs, the common join node
///         starts only after the slowest branch finishes.
enum class Fanout { pick, all };

struct ComponentNode {
  std::string id;
  std::string display_name;
  NodeKind kind = NodeKind::non_ai;
  ServiceDistribution service_time;
  // Optional per-query-type overrides of service_time.
  std::map<std::string, ServiceDistribution> service_time_by_type;
  int servers = 1;
  Fanout fanout = Fanout::pick;
  DistillAnnotations annotations;

  const ServiceDistribution& service_for(const std::string& query_type) const {
    auto it = service_time_by_type.find(query_type);
    return it == service_time_by_type.end() ? service_time : it->second;
  }

  bool operator==(const ComponentNode&) const = default;
};

struct Edge {
  std::string from;
  std::string to;
  std::map<std::string, double> routing;  // query_type -> probability

  bool operator==(const Edge&) const = default;
};

struct Violation {
  std::string rule;     // short machine-readable code
  std::string subject;  // offending node/edge/group id
  std::string message;
};

class ScenarioGraph {
 public:
  ScenarioGraph() = default;
  ScenarioGraph(std::vector<ComponentNode> nodes, std::vector<Edge> edges,
                std::string entry_id, std::vector<std::string> query_types,
                std::vector<std::string> comments = {})
      : nodes_(std::move(nodes)),
        edges_(std::move(edges)),
        entry_id_(std::move(entry_id)),
        query_types_(std::move(query_types)),
        comments_(std::move(comments)) {
    rebuild_index();
  }

  const std::vector<ComponentNode>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& entry_id() const { return entry_id_; }
  const std::vector<std::string>& query_types() const { return query_types_; }
  const std::vector<std::string>& comments() const { return comments_; }

  bool has_node(const std::string& id) const { return index_.count(id) > 0; }

  const ComponentNode& node(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw SpecError("unknown node id \"" + id + "\"");
    return nodes_[it->second];
  }

  std::vector<const Edge*> out_edges(const std::string& id) const {
    std::vector<const Edge*> out;
    for (const Edge& e : edges_)
      if (e.from == id) out.push_back(&e);
    return out;
  }

  std::vector<const Edge*> in_edges(const std::string& id) const {
    std::vector<const Edge*> in;
    for (const Edge& e : edges_)
      if (e.to == id) in.push_back(&e);
    return in;
  }

  /// Distinct successor ids, ascending.
  std::vector<std::string> successors(const std::string& id) const {
    std::set<std::string> s;
    for (const Edge& e : edges_)
      if (e.from == id) s.insert(e.to);
    return {s.begin(), s.end()};
  }

  std::vector<std::string> sink_ids() const {
    std::vector<std::string> out;
    for (const auto& n : nodes_)
      if (n.kind == NodeKind::sink) out.push_back(n.id);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Graph equality by node id set, node contents, and edge set; the
  /// distillation idempotence and round-trip properties are stated in terms
  /// of this comparison.
  bool same_as(const ScenarioGraph& other) const {
    if (entry_id_ != other.entry_id_) return false;
    if (query_types_ != other.query_types_) return false;
    auto key = [](const ScenarioGraph& g) {
      std::map<std::string, const ComponentNode*> m;
      for (const auto& n : g.nodes()) m[n.id] = &n;
      return m;
    };
    auto a = key(*this), b = key(other);
    if (a.size() != b.size()) return false;
    for (const auto& [id, n] : a) {
      auto it = b.find(id);
      if (it == b.end() || !(*n == *it->second)) return false;
    }
    auto ekey = [](const ScenarioGraph& g) {
      std::map<std::pair<std::string, std::string>, std::map<std::string, double>> m;
      for (const auto& e : g.edges()) m[{e.from, e.to}] = e.routing;
      return m;
    };
    return ekey(*this) == ekey(other);
  }

 private:
  void rebuild_index() {
    index_.clear();
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i].id] = i;
  }

  std::vector<ComponentNode> nodes_;
  std::vector<Edge> edges_;
  std::string entry_id_;
  std::vector<std::string> query_types_;
  std::vector<std::string> comments_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Graph queries
// ---------------------------------------------------------------------------

/// Kahn's algorithm with ties broken by ascending node id. Throws SpecError
/// on a cycle, naming the nodes left over.
inline std::vector<std::string> topological_order(const ScenarioGraph& g) {
  std::map<std::string, int> indegree;
  for (const auto& n : g.nodes()) indegree[n.id] = 0;
  for (const auto& e : g.edges()) {
    if (indegree.count(e.to)) indegree[e.to]++;
  }
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [id, deg] : indegree)
    if (deg == 0) ready.push(id);

  std::vector<std::string> order;
  order.reserve(g.nodes().size());
  while (!ready.empty()) {
    std::string id = ready.top();
    ready.pop();
    order.push_back(id);
    for (const auto& e : g.edges()) {
      if (e.from != id) continue;
      auto it = indegree.find(e.to);
      if (it != indegree.end() && --it->second == 0) ready.push(e.to);
    }
  }
  if (order.size() != g.nodes().size()) {
    std::vector<std::string> stuck;
    for (const auto& [id, deg] : indegree)
      if (deg > 0) stuck.push_back(id);
    std::string msg = "cycle detected involving:";
    for (const auto& s : stuck) msg += " " + s;
    throw SpecError(msg);
  }
  return order;
}

inline bool is_acyclic(const ScenarioGraph& g) {
  try {
    topological_order(g);
    return true;
  } catch (const SpecError&) {
    return false;
  }
}

/// Node ids reachable from the entry following edges that carry positive
/// routing mass for any query type.
inline std::set<std::string> reachable_from_entry(const ScenarioGraph& g) {
  std::set<std::string> seen;
  if (!g.has_node(g.entry_id())) return seen;
  std::vector<std::string> stack{g.entry_id()};
  seen.insert(g.entry_id());
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges()) {
      if (e.from != id || seen.count(e.to) || !g.has_node(e.to)) continue;
      bool positive = false;
      for (const auto& [t, p] : e.routing) positive |= p > 0.0;
      if (!positive) continue;
      seen.insert(e.to);
      stack.push_back(e.to);
    }
  }
  return seen;
}

/// Node ids from which some sink is reachable (sinks included).
inline std::set<std::string> can_reach_sink(const ScenarioGraph& g) {
  std::set<std::string> seen;
  std::vector<std::string> stack;
  for (const auto& n : g.nodes()) {
    if (n.kind == NodeKind::sink) {
      seen.insert(n.id);
      stack.push_back(n.id);
    }
  }
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges()) {
      if (e.to != id || seen.count(e.from) || !g.has_node(e.from)) continue;
      bool positive = false;
      for (const auto& [t, p] : e.routing) positive |= p > 0.0;
      if (!positive) continue;
      seen.insert(e.from);
      stack.push_back(e.from);
    }
  }
  return seen;
}

/// All structural and annotation invariants as data. Empty result means the
/// graph is valid.
inline std::vector<Violation> validate_graph(const ScenarioGraph& g) {
  std::vector<Violation> out;
  auto add = [&out](std::string rule, std::string subject, std::string message) {
    out.push_back({std::move(rule), std::move(subject), std::move(message)});
  };

  // Unique ids.
  {
    std::set<std::string> seen;
    for (const auto& n : g.nodes()) {
      if (!seen.insert(n.id).second)
        add("duplicate-id", n.id, "node id \"" + n.id + "\" appears more than once");
    }
  }

  // Entry/sink counts.
  int entries = 0, sinks = 0;
  for (const auto& n : g.nodes()) {
    if (n.kind == NodeKind::entry) entries++;
    if (n.kind == NodeKind::sink) sinks++;
  }
  if (entries != 1)
    add("entry-count", g.entry_id(),
        "graph must have exactly one entry node, found " + std::to_string(entries));
  if (sinks < 1) add("no-sink", "", "graph must have at least one sink node");
  if (!g.has_node(g.entry_id())) {
    add("entry-missing", g.entry_id(),
        "entry id \"" + g.entry_id() + "\" does not name a node");
  } else if (g.node(g.entry_id()).kind != NodeKind::entry) {
    add("entry-kind", g.entry_id(), "entry id must name a node of kind entry");
  }

  // Per-node checks.
  for (const auto& n : g.nodes()) {
    if (n.servers < 1)
      add("servers", n.id, "node \"" + n.id + "\" must have servers >= 1");
    if ((n.kind == NodeKind::entry || n.kind == NodeKind::sink) &&
        !n.service_time.is_zero())
      add("terminal-service-time", n.id,
          "entry/sink node \"" + n.id + "\" must have zero service time");
    if (n.kind != NodeKind::entry && n.kind != NodeKind::sink) {
      std::string prob = n.service_time.parameter_problem();
      if (!prob.empty()) add("service-time", n.id, "node \"" + n.id + "\": " + prob);
      for (const auto& [t, d] : n.service_time_by_type) {
        std::string p2 = d.parameter_problem();
        if (!p2.empty())
          add("service-time", n.id, "node \"" + n.id + "\" override for \"" + t + "\": " + p2);
      }
    }
    if (n.annotations.traffic_fraction &&
        (*n.annotations.traffic_fraction < 0.0 || *n.annotations.traffic_fraction > 1.0))
      add("traffic-fraction", n.id,
          "node \"" + n.id + "\" traffic_fraction must lie in [0,1]");
    if (n.annotations.default_model &&
        std::find(n.annotations.model_variants.begin(), n.annotations.model_variants.end(),
                  *n.annotations.default_model) == n.annotations.model_variants.end())
      add("default-model", n.id,
          "node \"" + n.id + "\" default_model is not one of its model_variants");
  }

  // Edges reference known nodes; routing values in range.
  for (const auto& e : g.edges()) {
    std::string eid = e.from + "->" + e.to;
    if (!g.has_node(e.from))
      add("dangling-edge", e.from, "edge " + eid + " starts at unknown id \"" + e.from + "\"");
    if (!g.has_node(e.to))
      add("dangling-edge", e.to, "edge " + eid + " ends at unknown id \"" + e.to + "\"");
    for (const auto& [t, p] : e.routing) {
      if (p < 0.0 || p > 1.0)
        add("routing-range", eid,
            "edge " + eid + " routing for \"" + t + "\" must lie in [0,1]");
      if (std::find(g.query_types().begin(), g.query_types().end(), t) ==
          g.query_types().end())
        add("routing-type", eid, "edge " + eid + " routes unknown query type \"" + t + "\"");
    }
  }
  if (!out.empty() && std::any_of(out.begin(), out.end(), [](const Violation& v) {
        return v.rule == "dangling-edge" || v.rule == "duplicate-id" ||
               v.rule == "entry-missing";
      })) {
    // Structural follow-up checks would cascade on a broken id space.
    return out;
  }

  // Routing mass: for each node and query type with any outgoing mass, the
  // probabilities must sum to 1. Fanout-all nodes instead require every
  // listed probability to be exactly 1 (all branches taken).
  for (const auto& n : g.nodes()) {
    auto edges = g.out_edges(n.id);
    if (n.fanout == Fanout::all) {
      for (const Edge* e : edges)
        for (const auto& [t, p] : e->routing)
          if (p != 1.0)
            add("fanout-routing", n.id,
                "fanout-all node \"" + n.id + "\" requires probability 1 on edge " +
                    e->from + "->" + e->to + " for \"" + t + "\"");
      continue;
    }
    for (const auto& t : g.query_types()) {
      double mass = 0.0;
      bool any = false;
      for (const Edge* e : edges) {
        auto it = e->routing.find(t);
        if (it != e->routing.end() && it->second > 0.0) {
          mass += it->second;
          any = true;
        }
      }
      if (any && std::abs(mass - 1.0) > kRoutingMassTolerance)
        add("routing-mass", n.id,
            "node \"" + n.id + "\" routing for \"" + t + "\" sums to " +
                std::to_string(mass) + ", expected 1");
    }
  }

  // Fanout-all join shape: every successor must have exactly one distinct
  // successor of its own, shared by all branches.
  for (const auto& n : g.nodes()) {
    if (n.fanout != Fanout::all) continue;
    auto branches = g.successors(n.id);
    if (branches.size() < 2) {
      add("fanout-shape", n.id, "fanout-all node \"" + n.id + "\" needs >= 2 successors");
      continue;
    }
    std::set<std::string> joins;
    for (const auto& b : branches) {
      auto next = g.successors(b);
      if (next.size() != 1) {
        add("fanout-join", n.id,
            "fanout-all branch \"" + b + "\" must have exactly one successor");
      } else {
        joins.insert(next.front());
      }
    }
    if (joins.size() > 1)
      add("fanout-join", n.id,
          "fanout-all branches of \"" + n.id + "\" do not converge on one join node");
  }

  // Acyclicity.
  if (!is_acyclic(g)) {
    // Name the nodes on some cycle: the ones that survive repeated trimming.
    std::map<std::string, int> indeg;
    for (const auto& n : g.nodes()) indeg[n.id] = 0;
    for (const auto& e : g.edges()) indeg[e.to]++;
    std::vector<std::string> ready;
    for (auto& [id, d] : indeg)
      if (d == 0) ready.push_back(id);
    while (!ready.empty()) {
      std::string id = ready.back();
      ready.pop_back();
      indeg.erase(id);
      for (const auto& e : g.edges())
        if (e.from == id && indeg.count(e.to) && --indeg[e.to] == 0)
          ready.push_back(e.to);
    }
    std::string members;
    for (const auto& [id, d] : indeg) members += (members.empty() ? "" : ",") + id;
    add("cycle", members, "graph contains a cycle involving {" + members + "}");
    return out;  // reachability below assumes a DAG
  }

  // Reachability.
  auto reach = reachable_from_entry(g);
  for (const auto& n : g.nodes())
    if (n.kind != NodeKind::entry && !reach.count(n.id))
      add("unreachable", n.id, "node \"" + n.id + "\" is not reachable from the entry");

  // At most one essential node per similarity group.
  {
    std::map<std::string, std::vector<std::string>> essentials;
    for (const auto& n : g.nodes())
      if (n.annotations.similarity_group && n.annotations.essential)
        essentials[*n.annotations.similarity_group].push_back(n.id);
    for (const auto& [grp, ids] : essentials)
      if (ids.size() > 1) {
        std::string list;
        for (const auto& i : ids) list += (list.empty() ? "" : ",") + i;
        add("essential-ambiguous", grp,
            "similarity group \"" + grp + "\" marks several nodes essential: " + list);
      }
  }

  // Sibling traffic fractions sum to <= 1 per branch point.
  for (const auto& n : g.nodes()) {
    auto heads = g.successors(n.id);
    if (heads.size() < 2) continue;
    double sum = 0.0;
    bool any = false;
    for (const auto& h : heads) {
      const auto& f = g.node(h).annotations.traffic_fraction;
      if (f) {
        sum += *f;
        any = true;
      }
    }
    if (any && sum > 1.0 + kRoutingMassTolerance)
      add("fraction-sum", n.id,
          "traffic fractions of branches under \"" + n.id + "\" sum to " +
              std::to_string(sum) + " > 1");
  }

  return out;
}

inline void require_valid(const ScenarioGraph& g) {
  auto violations = validate_graph(g);
  if (violations.empty()) return;
  std::string msg = "scenario graph is invalid:";
  for (const auto& v : violations) msg += "\n  [" + v.rule + "] " + v.message;
  throw SpecError(msg);
}

// ---------------------------------------------------------------------------
// Visit ratios and critical path
// ---------------------------------------------------------------------------

/// Probability that a request of the given type visits each node, by forward
/// propagation from the entry. Fanout-all edges propagate with weight 1 to
/// every branch.
inline std::map<std::string, double> visit_ratios_for_type(const ScenarioGraph& g,
                                                           const std::string& type) {
  std::map<std::string, double> v;
  for (const auto& n : g.nodes()) v[n.id] = 0.0;
  v[g.entry_id()] = 1.0;
  for (const auto& id : topological_order(g)) {
    double mass = v[id];
    if (mass == 0.0) continue;
    for (const auto& e : g.edges()) {
      if (e.from != id) continue;
      auto it = e.routing.find(type);
      if (it == e.routing.end() || it->second <= 0.0) continue;
      v[e.to] += mass * it->second;
    }
  }
  return v;
}

/// Mix-weighted visit ratio per node: sum over types of mix[t] * visits_t.
inline std::map<std::string, double> visit_ratios(
    const ScenarioGraph& g, const std::map<std::string, double>& query_mix) {
  std::map<std::string, double> v;
  for (const auto& n : g.nodes()) v[n.id] = 0.0;
  for (const auto& [t, w] : query_mix) {
    if (w <= 0.0) continue;
    auto vt = visit_ratios_for_type(g, t);
    for (auto& [id, x] : vt) v[id] += w * x;
  }
  return v;
}

struct CriticalPath {
  std::vector<std::string> node_ids;  // entry .. sink
  double expected_ms = 0.0;
  std::string query_type;  // the type whose conditional path realizes the max
};

/// Expected critical path: for each query type present in the mix, find the
/// entry-to-sink path maximizing the sum of node mean service times, each
/// weighted by the probability (for that type) of reaching the node along the
/// path. The reported path is the best across types; ties break toward the
/// lexicographically smaller node-id sequence.
inline CriticalPath expected_critical_path(const ScenarioGraph& g,
                                           const std::map<std::string, double>& query_mix) {
  require_valid(g);
  double mix_sum = 0.0;
  for (const auto& [t, w] : query_mix) mix_sum += w;
  if (std::abs(mix_sum - 1.0) > 1e-6)
    throw SpecError("query mix must sum to 1");

  auto order = topological_order(g);
  CriticalPath best;
  bool have_best = false;

  for (const auto& [type, weight] : query_mix) {
    if (weight <= 0.0) continue;
    // score[v] = best achievable sum of mean*reach over a path from v to a
    // sink, with reach relative to v; next[v] reconstructs it.
    std::map<std::string, double> score;
    std::map<std::string, std::string> next;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::string& id = *it;
      const auto& n = g.node(id);
      if (n.kind == NodeKind::sink) {
        score[id] = 0.0;
        continue;
      }
      double best_edge = -1.0;
      std::string best_to;
      for (const auto& e : g.edges()) {
        if (e.from != id) continue;
        auto rit = e.routing.find(type);
        if (rit == e.routing.end() || rit->second <= 0.0) continue;
        auto sit = score.find(e.to);
        if (sit == score.end()) continue;  // successor cannot reach a sink
        double p = n.fanout == Fanout::all ? 1.0 : rit->second;
        double cand = p * (g.node(e.to).service_time.mean_ms() + sit->second);
        if (cand > best_edge || (cand == best_edge && e.to < best_to)) {
          best_edge = cand;
          best_to = e.to;
        }
      }
      if (best_edge >= 0.0) {
        score[id] = best_edge;
        next[id] = best_to;
      }
    }
    auto sit = score.find(g.entry_id());
    if (sit == score.end()) continue;  // this type cannot reach a sink
    double total = g.node(g.entry_id()).service_time.mean_ms() + sit->second;

    std::vector<std::string> path{g.entry_id()};
    while (next.count(path.back())) path.push_back(next[path.back()]);

    if (!have_best || total > best.expected_ms ||
        (total == best.expected_ms && path < best.node_ids)) {
      best = CriticalPath{path, total, type};
      have_best = true;
    }
  }
  if (!have_best) throw SpecError("no query type in the mix reaches a sink");
  return best;
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_SCENARIO_HPP_
