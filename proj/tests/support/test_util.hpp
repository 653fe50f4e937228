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
#ifndef SCENARIOBENCH_TESTS_SUPPORT_TEST_UTIL_HPP_
#define SCENARIOBENCH_TESTS_SUPPORT_TEST_UTIL_HPP_

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "scenariobench/scenario.hpp"

namespace sbtest {

inline std::filesystem::path repo_dir() {
#ifdef SCENARIOBENCH_REPO_DIR
  return SCENARIOBENCH_REPO_DIR;
#else
  return ".";
#endif
}

inline std::filesystem::path scenario_path(const std::string& name) {
  return repo_dir() / "scenarios" / name;
}

namespace sb = scenariobench;

// -- small graph builders ----------------------------------------------------

inline sb::ComponentNode make_node(std::string id, sb::NodeKind kind, double mean_ms = 10.0,
                                   int servers = 1) {
  sb::ComponentNode n;
  n.id = std::move(id);
  n.display_name = n.id;
  n.kind = kind;
  n.servers = servers;
  if (kind != sb::NodeKind::entry && kind != sb::NodeKind::sink)
    n.service_time = sb::ServiceDistribution::exponential(mean_ms);
  return n;
}

inline sb::Edge make_edge(std::string from, std::string to,
                          std::map<std::string, double> routing) {
  return {std::move(from), std::move(to), std::move(routing)};
}

/// entry -> a -> b -> ... -> sink with the given exponential means, one
/// query type "q".
inline sb::ScenarioGraph chain_graph(const std::vector<double>& means,
                                     const std::vector<int>& servers = {},
                                     bool constant = false) {
  std::vector<sb::ComponentNode> nodes;
  std::vector<sb::Edge> edges;
  nodes.push_back(make_node("entry", sb::NodeKind::entry));
  std::string prev = "entry";
  for (std::size_t i = 0; i < means.size(); ++i) {
    std::string id = "n" + std::to_string(i);
    auto n = make_node(id, sb::NodeKind::non_ai, means[i],
                       i < servers.size() ? servers[i] : 1);
    if (constant) n.service_time = sb::ServiceDistribution::constant(means[i]);
    nodes.push_back(n);
    edges.push_back(make_edge(prev, id, {{"q", 1.0}}));
    prev = id;
  }
  nodes.push_back(make_node("zz-sink", sb::NodeKind::sink));
  edges.push_back(make_edge(prev, "zz-sink", {{"q", 1.0}}));
  return {nodes, edges, "entry", {"q"}};
}

// -- random scenario graphs for property tests --------------------------------

struct RandomGraphOptions {
  int max_interior = 26;  // total stays <= 30 with entry + sinks
  bool with_annotations = true;
};

/// Deterministic random valid scenario graph. Interior nodes are wired
/// forward (acyclic by construction), every node is reachable, every
/// non-sink routes each query type somewhere. Annotations exercise the six
/// distilling rules without overlapping roles on one node.
inline sb::ScenarioGraph random_graph(std::uint64_t seed, const RandomGraphOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  auto rnd = [&rng](double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  };
  auto rnd_int = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  int interior = rnd_int(2, opt.max_interior);
  int nsinks = rnd_int(1, 2);
  int ntypes = rnd_int(1, 3);
  std::vector<std::string> all_types{"alpha", "beta", "gamma"};
  std::vector<std::string> types(all_types.begin(), all_types.begin() + ntypes);

  // ids in topological position order; zero-padded so lexicographic == index
  std::vector<std::string> ids;
  ids.push_back("a-entry");
  for (int i = 0; i < interior; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%02d", i);
    ids.push_back(buf);
  }
  for (int s = 0; s < nsinks; ++s) ids.push_back("z-sink" + std::to_string(s));

  int total = static_cast<int>(ids.size());
  int first_sink = total - nsinks;

  std::vector<sb::ComponentNode> nodes;
  for (int i = 0; i < total; ++i) {
    sb::NodeKind kind = i == 0 ? sb::NodeKind::entry
                        : i >= first_sink
                            ? sb::NodeKind::sink
                            : (rnd(0, 1) < 0.5 ? sb::NodeKind::ai : sb::NodeKind::non_ai);
    auto n = make_node(ids[static_cast<std::size_t>(i)], kind, rnd(1.0, 50.0), rnd_int(1, 3));
    if (kind == sb::NodeKind::ai && rnd(0, 1) < 0.3) {
      int k = rnd_int(1, 3);
      for (int v = 0; v < k; ++v) n.annotations.model_variants.push_back("m" + std::to_string(v));
      if (k > 1 && rnd(0, 1) < 0.5)
        n.annotations.default_model = "m" + std::to_string(rnd_int(0, k - 1));
    }
    nodes.push_back(std::move(n));
  }

  // forward edges; every non-entry node has an incoming edge, every
  // non-sink node at least one outgoing edge
  std::set<std::pair<int, int>> links;
  for (int i = 1; i < total; ++i) links.insert({rnd_int(0, std::min(i - 1, first_sink - 1)), i});
  for (int i = 0; i < first_sink; ++i) {
    bool has_out = false;
    for (const auto& [u, v] : links) has_out |= u == i;
    if (!has_out) links.insert({i, rnd_int(i + 1, total - 1)});
    int extra = rnd_int(0, 2);
    for (int e = 0; e < extra; ++e) links.insert({i, rnd_int(i + 1, total - 1)});
  }

  // per-type routing: split each node's outgoing mass over its links
  std::vector<sb::Edge> edges;
  for (int u = 0; u < first_sink; ++u) {
    std::vector<int> outs;
    for (const auto& [a, b] : links)
      if (a == u) outs.push_back(b);
    if (outs.empty()) continue;
    std::map<int, std::map<std::string, double>> routing;
    for (const auto& t : types) {
      std::vector<double> w;
      double sum = 0.0;
      for (std::size_t k = 0; k < outs.size(); ++k) {
        w.push_back(rnd(0.05, 1.0));
        sum += w.back();
      }
      double acc = 0.0;
      for (std::size_t k = 0; k < outs.size(); ++k) {
        // exact mass 1: give the last edge the remainder
        double p = k + 1 == outs.size() ? 1.0 - acc : w[k] / sum;
        acc += p;
        routing[outs[k]][t] = p;
      }
    }
    for (const auto& [v, r] : routing)
      edges.push_back({ids[static_cast<std::size_t>(u)], ids[static_cast<std::size_t>(v)], r});
  }

  sb::ScenarioGraph g(nodes, edges, "a-entry", types);
  if (!opt.with_annotations) return g;

  // annotate on top of the wired graph; one role per node
  std::set<std::string> used;
  auto mutable_nodes = g.nodes();
  auto node_at = [&mutable_nodes](const std::string& id) -> sb::ComponentNode& {
    for (auto& n : mutable_nodes)
      if (n.id == id) return n;
    throw std::runtime_error("node not found");
  };

  // R1: similarity group over siblings of some branch point
  if (rnd(0, 1) < 0.7) {
    for (const auto& n : g.nodes()) {
      auto heads = g.successors(n.id);
      std::vector<std::string> eligible;
      for (const auto& h : heads) {
        const auto& hn = g.node(h);
        if (hn.kind != sb::NodeKind::sink && hn.kind != sb::NodeKind::entry && !used.count(h))
          eligible.push_back(h);
      }
      if (eligible.size() >= 2) {
        int take = std::min<int>(static_cast<int>(eligible.size()), rnd_int(2, 3));
        bool mark_essential = rnd(0, 1) < 0.5;
        for (int k = 0; k < take; ++k) {
          node_at(eligible[static_cast<std::size_t>(k)]).annotations.similarity_group = "sim-g";
          used.insert(eligible[static_cast<std::size_t>(k)]);
        }
        if (mark_essential)
          node_at(eligible[static_cast<std::size_t>(rnd_int(0, take - 1))])
              .annotations.essential = true;
        break;
      }
    }
  }

  // R2: traffic fractions on all heads of one branch point. The heads must
  // not sit under any other branch point, or that one would see a mix of
  // annotated and unannotated heads.
  if (rnd(0, 1) < 0.7) {
    for (const auto& n : g.nodes()) {
      auto heads = g.successors(n.id);
      if (heads.size() < 2) continue;
      bool clean = true;
      for (const auto& h : heads)
        clean &= !used.count(h) && g.node(h).kind != sb::NodeKind::entry;
      for (const auto& other : g.nodes()) {
        if (other.id == n.id) continue;
        auto other_heads = g.successors(other.id);
        if (other_heads.size() < 2) continue;
        for (const auto& h : heads)
          clean &= std::find(other_heads.begin(), other_heads.end(), h) == other_heads.end();
      }
      if (!clean) continue;
      double budget = 1.0;
      for (const auto& h : heads) {
        double f = std::min(budget, rnd(0.0, 0.4));
        node_at(h).annotations.traffic_fraction = f;
        used.insert(h);
        budget -= f;
      }
      break;
    }
  }

  // R3: a couple of auxiliary interior nodes
  for (const auto& n : g.nodes()) {
    if (n.kind != sb::NodeKind::ai && n.kind != sb::NodeKind::non_ai) continue;
    if (used.count(n.id)) continue;
    if (rnd(0, 1) < 0.15) {
      node_at(n.id).annotations.auxiliary = true;
      used.insert(n.id);
    }
  }

  // R5: a private chain pair u -> v (u's only successor, v's only predecessor)
  if (rnd(0, 1) < 0.6) {
    for (const auto& n : g.nodes()) {
      if (n.kind != sb::NodeKind::ai && n.kind != sb::NodeKind::non_ai) continue;
      if (used.count(n.id)) continue;
      auto succ = g.successors(n.id);
      if (succ.size() != 1) continue;
      const auto& v = succ.front();
      if (used.count(v)) continue;
      const auto& vn = g.node(v);
      if (vn.kind != sb::NodeKind::ai && vn.kind != sb::NodeKind::non_ai) continue;
      if (g.in_edges(v).size() != 1) continue;
      node_at(n.id).annotations.merge_group = "merge-g";
      node_at(v).annotations.merge_group = "merge-g";
      used.insert(n.id);
      used.insert(v);
      break;
    }
  }

  return {mutable_nodes, g.edges(), g.entry_id(), g.query_types()};
}

}  // namespace sbtest

#endif  // SCENARIOBENCH_TESTS_SUPPORT_TEST_UTIL_HPP_
