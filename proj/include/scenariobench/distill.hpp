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
// The six distilling rules. Each rule maps a valid scenario graph to a
// smaller (or equal) one and reports what it did:
//
//   R1  keep one essential branch per similarity group
//   R2  prune branch heads whose traffic fraction is below the threshold
//   R3  drop auxiliary components, splicing routing across them
//   R4  reduce each AI node to a single model variant
//   R5  collapse merge-group chains into one node
//   R6  garbage-collect nodes cut off from the entry or from every sink
//
// distill() runs the enabled rules in that order. All rules renormalize
// surviving routing so the output graph stays valid. Rules never mutate
// their input.

#ifndef SCENARIOBENCH_DISTILL_HPP_
#define SCENARIOBENCH_DISTILL_HPP_

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scenariobench/scenario.hpp"

namespace scenariobench {

struct DistillConfig {
  double fraction_threshold = 0.01;  // R2: strict less-than
  std::array<bool, 6> rule_toggles = {true, true, true, true, true, true};

  bool rule_enabled(int rule_1_based) const { return rule_toggles[rule_1_based - 1]; }

  void check() const {
    if (!(fraction_threshold > 0.0 && fraction_threshold < 1.0))
      throw ConfigError("fraction_threshold must lie in (0,1)");
  }
};

struct RuleAction {
  std::string rule;                   // "R1".."R6"
  std::string action;                 // "remove" | "merge" | "reduce-variants"
  std::vector<std::string> node_ids;  // affected input-graph node ids
  std::string result_id;              // merged node id (R5 only)
  std::string reason;
};

struct GraphComplexity {
  int nodes = 0;
  int edges = 0;
};

struct DistillReport {
  std::vector<RuleAction> actions;
  GraphComplexity before;
  GraphComplexity after;
  // 1 - (nodes+edges after)/(nodes+edges before)
  double reduction_ratio = 0.0;

  std::vector<std::string> removed_ids() const {
    std::vector<std::string> out;
    for (const auto& a : actions)
      if (a.action == "remove")
        out.insert(out.end(), a.node_ids.begin(), a.node_ids.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

struct GraphParts {
  std::vector<ComponentNode> nodes;
  std::vector<Edge> edges;
  std::string entry;
  std::vector<std::string> query_types;
  std::vector<std::string> comments;

  explicit GraphParts(const ScenarioGraph& g)
      : nodes(g.nodes()),
        edges(g.edges()),
        entry(g.entry_id()),
        query_types(g.query_types()),
        comments(g.comments()) {}

  ScenarioGraph build() const { return {nodes, edges, entry, query_types, comments}; }

  const ComponentNode* find(const std::string& id) const {
    for (const auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }

  // Rescale per-type outgoing mass back to 1 wherever pruning left it short.
  void renormalize_routing() {
    for (const auto& n : nodes) {
      if (n.fanout == Fanout::all) continue;
      std::map<std::string, double> mass;
      for (const auto& e : edges)
        if (e.from == n.id)
          for (const auto& [t, p] : e.routing) mass[t] += p;
      for (auto& e : edges) {
        if (e.from != n.id) continue;
        for (auto& [t, p] : e.routing) {
          double m = mass[t];
          if (m > 0.0 && std::abs(m - 1.0) > kRoutingMassTolerance) p /= m;
        }
      }
    }
  }

  void drop_nodes(const std::set<std::string>& ids) {
    std::erase_if(nodes, [&ids](const ComponentNode& n) { return ids.count(n.id) > 0; });
    std::erase_if(edges, [&ids](const Edge& e) {
      return ids.count(e.from) > 0 || ids.count(e.to) > 0;
    });
  }

  // Remove one node, composing routing across it: for each pred edge with
  // probability p and succ edge with probability q (same type), the pred
  // gains an edge to the succ with probability p*q.
  void splice_out(const std::string& id) {
    std::vector<Edge> in, out, rest;
    for (const auto& e : edges) {
      if (e.to == id)
        in.push_back(e);
      else if (e.from == id)
        out.push_back(e);
      else
        rest.push_back(e);
    }
    for (const auto& ein : in) {
      for (const auto& eout : out) {
        std::map<std::string, double> composed;
        for (const auto& [t, p] : ein.routing) {
          auto it = eout.routing.find(t);
          if (it != eout.routing.end() && p > 0.0 && it->second > 0.0)
            composed[t] = p * it->second;
        }
        if (composed.empty()) continue;
        auto existing = std::find_if(rest.begin(), rest.end(), [&](const Edge& e) {
          return e.from == ein.from && e.to == eout.to;
        });
        if (existing == rest.end()) {
          rest.push_back({ein.from, eout.to, composed});
        } else {
          for (const auto& [t, p] : composed) existing->routing[t] += p;
        }
      }
    }
    edges = std::move(rest);
    std::erase_if(nodes, [&id](const ComponentNode& n) { return n.id == id; });
  }
};

inline std::string join_ids(const std::vector<std::string>& ids, const char* sep = ", ") {
  std::string s;
  for (const auto& id : ids) s += (s.empty() ? "" : sep) + id;
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// R1: keep one essential branch per similarity group
// ---------------------------------------------------------------------------

inline std::pair<ScenarioGraph, std::vector<RuleAction>> apply_r1(const ScenarioGraph& g) {
  std::map<std::string, std::vector<const ComponentNode*>> groups;
  for (const auto& n : g.nodes())
    if (n.annotations.similarity_group)
      groups[*n.annotations.similarity_group].push_back(&n);

  detail::GraphParts parts(g);
  std::vector<RuleAction> actions;
  std::set<std::string> doomed;
  for (const auto& [group, members] : groups) {
    if (members.size() < 2) continue;
    std::vector<std::string> essential;
    for (const auto* m : members)
      if (m->annotations.essential) essential.push_back(m->id);
    if (essential.size() > 1)
      throw SpecError("similarity group \"" + group +
                      "\" marks more than one node essential: " + detail::join_ids(essential));
    std::string keep;
    if (essential.size() == 1) {
      keep = essential.front();
    } else {
      keep = members.front()->id;
      for (const auto* m : members) keep = std::min(keep, m->id);
    }
    for (const auto* m : members) {
      if (m->id == keep) continue;
      doomed.insert(m->id);
      actions.push_back({"R1", "remove", {m->id}, "",
                         "similarity group \"" + group + "\" keeps \"" + keep + "\""});
    }
  }
  parts.drop_nodes(doomed);
  parts.renormalize_routing();
  std::sort(actions.begin(), actions.end(),
            [](const RuleAction& a, const RuleAction& b) { return a.node_ids < b.node_ids; });
  return {parts.build(), actions};
}

// ---------------------------------------------------------------------------
// R2: prune branch heads below the traffic-fraction threshold (strict <)
// ---------------------------------------------------------------------------

inline std::pair<ScenarioGraph, std::vector<RuleAction>> apply_r2(const ScenarioGraph& g,
                                                                  double threshold = 0.01) {
  std::set<std::string> doomed;
  std::vector<RuleAction> actions;
  std::vector<std::string> ids;
  for (const auto& n : g.nodes()) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end());

  for (const auto& id : ids) {
    const auto& n = g.node(id);
    if (n.fanout == Fanout::all) continue;  // scatter-gather is not a choice point
    auto heads = g.successors(id);
    if (heads.size() < 2) continue;
    int annotated = 0;
    for (const auto& h : heads)
      if (g.node(h).annotations.traffic_fraction) annotated++;
    if (annotated == 0) continue;
    if (annotated != static_cast<int>(heads.size()))
      throw SpecError("branch point \"" + id +
                      "\": traffic_fraction must be set on all branch heads or none");
    for (const auto& h : heads) {
      double f = *g.node(h).annotations.traffic_fraction;
      if (f < threshold && !doomed.count(h)) {
        doomed.insert(h);
        actions.push_back({"R2", "remove", {h}, "",
                           "traffic fraction " + std::to_string(f) + " under branch point \"" +
                               id + "\" is below the threshold"});
      }
    }
  }
  detail::GraphParts parts(g);
  parts.drop_nodes(doomed);
  parts.renormalize_routing();
  return {parts.build(), actions};
}

// ---------------------------------------------------------------------------
// R3: remove auxiliary components, splicing routing across them
// ---------------------------------------------------------------------------

inline std::pair<ScenarioGraph, std::vector<RuleAction>> apply_r3(const ScenarioGraph& g) {
  std::vector<std::string> aux;
  for (const auto& n : g.nodes()) {
    if (!n.annotations.auxiliary) continue;
    if (n.kind == NodeKind::entry)
      throw SpecError("entry node \"" + n.id + "\" may not be auxiliary");
    aux.push_back(n.id);
  }
  std::sort(aux.begin(), aux.end());

  detail::GraphParts parts(g);
  std::vector<RuleAction> actions;
  for (const auto& id : aux) {
    parts.splice_out(id);
    actions.push_back({"R3", "remove", {id}, "", "auxiliary component"});
  }
  parts.renormalize_routing();
  return {parts.build(), actions};
}

// ---------------------------------------------------------------------------
// R4: one model variant per AI node
// ---------------------------------------------------------------------------

inline std::pair<ScenarioGraph, std::vector<RuleAction>> apply_r4(const ScenarioGraph& g) {
  detail::GraphParts parts(g);
  std::vector<RuleAction> actions;
  for (auto& n : parts.nodes) {
    if (n.kind != NodeKind::ai) continue;
    auto& a = n.annotations;
    if (a.model_variants.size() <= 1) continue;
    std::string keep = a.default_model ? *a.default_model : a.model_variants.front();
    std::string before = detail::join_ids(a.model_variants);
    a.model_variants = {keep};
    a.default_model.reset();
    actions.push_back({"R4", "reduce-variants", {n.id}, "",
                       "variants [" + before + "] reduced to \"" + keep + "\""});
  }
  std::sort(actions.begin(), actions.end(),
            [](const RuleAction& a, const RuleAction& b) { return a.node_ids < b.node_ids; });
  return {parts.build(), actions};
}

// ---------------------------------------------------------------------------
// R5: collapse merge-group chains
// ---------------------------------------------------------------------------

inline std::pair<ScenarioGraph, std::vector<RuleAction>> apply_r5(const ScenarioGraph& g) {
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& n : g.nodes())
    if (n.annotations.merge_group) groups[*n.annotations.merge_group].push_back(n.id);

  detail::GraphParts parts(g);
  std::vector<RuleAction> actions;

  for (const auto& [group, member_list] : groups) {
    if (member_list.size() < 2) continue;
    std::set<std::string> members(member_list.begin(), member_list.end());

    // Within-group adjacency must form one linear chain.
    std::map<std::string, std::string> next_in_group;
    std::map<std::string, int> in_deg;
    for (const auto& m : members) in_deg[m] = 0;
    for (const auto& e : g.edges()) {
      if (!members.count(e.from) || !members.count(e.to)) continue;
      if (next_in_group.count(e.from))
        throw SpecError("merge group \"" + group + "\" is not a linear chain: \"" + e.from +
                        "\" has several within-group successors");
      next_in_group[e.from] = e.to;
      in_deg[e.to]++;
    }
    std::string head;
    for (const auto& [m, d] : in_deg) {
      if (d == 0) {
        if (!head.empty())
          throw SpecError("merge group \"" + group + "\" is not a linear chain: multiple heads");
        head = m;
      }
      if (d > 1)
        throw SpecError("merge group \"" + group + "\" is not a linear chain: \"" + m +
                        "\" has several within-group predecessors");
    }
    if (head.empty())
      throw SpecError("merge group \"" + group + "\" is not a linear chain: no head");
    std::vector<std::string> chain{head};
    while (next_in_group.count(chain.back())) chain.push_back(next_in_group[chain.back()]);
    if (chain.size() != members.size())
      throw SpecError("merge group \"" + group + "\" is not a linear chain: disconnected members");

    // Build the merged node.
    ComponentNode merged;
    merged.id = group + "__merged";
    if (parts.find(merged.id))
      throw SpecError("merge group \"" + group + "\": id \"" + merged.id + "\" already exists");
    bool all_constant = true;
    double sum_mean = 0.0;
    int min_servers = 0;
    std::set<std::string> override_types;
    bool any_ai = false;
    std::vector<std::string> names;
    for (const auto& m : chain) {
      const auto& n = g.node(m);
      if (n.fanout == Fanout::all)
        throw SpecError("merge group \"" + group + "\": member \"" + m +
                        "\" is a fanout-all node and cannot be merged");
      all_constant &= std::holds_alternative<ConstantDist>(n.service_time.variant());
      sum_mean += n.service_time.mean_ms();
      min_servers = min_servers == 0 ? n.servers : std::min(min_servers, n.servers);
      any_ai |= n.kind == NodeKind::ai;
      names.push_back(n.display_name);
      for (const auto& [t, d] : n.service_time_by_type) override_types.insert(t);
    }
    merged.display_name = detail::join_ids(names, " + ");
    merged.kind = any_ai ? NodeKind::ai : NodeKind::non_ai;
    merged.servers = min_servers;
    merged.service_time = all_constant ? ServiceDistribution::constant(sum_mean)
                                       : ServiceDistribution::exponential(sum_mean);
    for (const auto& t : override_types) {
      double s = 0.0;
      for (const auto& m : chain) s += g.node(m).service_for(t).mean_ms();
      merged.service_time_by_type[t] = ServiceDistribution::exponential(s);
    }

    // Rewire: external in/out edges of any member attach to the merged node.
    std::vector<Edge> new_edges;
    for (const auto& e : parts.edges) {
      bool from_in = members.count(e.from) > 0;
      bool to_in = members.count(e.to) > 0;
      if (from_in && to_in) continue;  // internal chain edge disappears
      Edge r = e;
      if (from_in) r.from = merged.id;
      if (to_in) r.to = merged.id;
      auto existing = std::find_if(new_edges.begin(), new_edges.end(), [&](const Edge& x) {
        return x.from == r.from && x.to == r.to;
      });
      if (existing == new_edges.end()) {
        new_edges.push_back(std::move(r));
      } else {
        for (const auto& [t, p] : r.routing) existing->routing[t] += p;
      }
    }
    parts.edges = std::move(new_edges);

    // Replace the first member in node order with the merged node, drop the rest.
    bool placed = false;
    std::vector<ComponentNode> new_nodes;
    for (const auto& n : parts.nodes) {
      if (members.count(n.id)) {
        if (!placed) {
          new_nodes.push_back(merged);
          placed = true;
        }
        continue;
      }
      new_nodes.push_back(n);
    }
    parts.nodes = std::move(new_nodes);

    std::vector<std::string> sorted_chain = chain;  // report input ids in chain order
    actions.push_back({"R5", "merge", sorted_chain, merged.id,
                       "successive similar steps collapsed into \"" + merged.id + "\""});
  }
  parts.renormalize_routing();
  std::sort(actions.begin(), actions.end(),
            [](const RuleAction& a, const RuleAction& b) { return a.result_id < b.result_id; });
  return {parts.build(), actions};
}

// ---------------------------------------------------------------------------
// R6: garbage-collect nodes cut off from the entry or from every sink
// ---------------------------------------------------------------------------

inline std::pair<ScenarioGraph, std::vector<RuleAction>> apply_r6(const ScenarioGraph& g) {
  detail::GraphParts parts(g);
  std::vector<RuleAction> actions;
  for (;;) {
    ScenarioGraph cur = parts.build();
    auto fwd = reachable_from_entry(cur);
    auto bwd = can_reach_sink(cur);
    std::set<std::string> doomed;
    for (const auto& n : cur.nodes()) {
      if (n.kind == NodeKind::entry) continue;
      if (!fwd.count(n.id)) {
        doomed.insert(n.id);
        actions.push_back({"R6", "remove", {n.id}, "", "not reachable from the entry"});
      } else if (n.kind != NodeKind::sink && !bwd.count(n.id)) {
        doomed.insert(n.id);
        actions.push_back({"R6", "remove", {n.id}, "", "no remaining path to a sink"});
      }
    }
    if (doomed.empty()) break;
    parts.drop_nodes(doomed);
  }
  parts.renormalize_routing();
  std::sort(actions.begin(), actions.end(),
            [](const RuleAction& a, const RuleAction& b) { return a.node_ids < b.node_ids; });
  return {parts.build(), actions};
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

inline std::pair<ScenarioGraph, DistillReport> distill(const ScenarioGraph& g,
                                                       const DistillConfig& config = {}) {
  config.check();
  require_valid(g);

  DistillReport report;
  report.before = {static_cast<int>(g.nodes().size()), static_cast<int>(g.edges().size())};

  ScenarioGraph cur = g;
  auto run = [&](int rule, auto&& fn) {
    if (!config.rule_enabled(rule)) return;
    auto [next, actions] = fn(cur);
    cur = std::move(next);
    report.actions.insert(report.actions.end(), actions.begin(), actions.end());
  };
  run(1, [](const ScenarioGraph& x) { return apply_r1(x); });
  run(2, [&](const ScenarioGraph& x) { return apply_r2(x, config.fraction_threshold); });
  run(3, [](const ScenarioGraph& x) { return apply_r3(x); });
  run(4, [](const ScenarioGraph& x) { return apply_r4(x); });
  run(5, [](const ScenarioGraph& x) { return apply_r5(x); });
  run(6, [](const ScenarioGraph& x) { return apply_r6(x); });

  report.after = {static_cast<int>(cur.nodes().size()), static_cast<int>(cur.edges().size())};
  double before_c = report.before.nodes + report.before.edges;
  double after_c = report.after.nodes + report.after.edges;
  report.reduction_ratio = before_c > 0.0 ? 1.0 - after_c / before_c : 0.0;

  require_valid(cur);
  return {std::move(cur), std::move(report)};
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_DISTILL_HPP_
