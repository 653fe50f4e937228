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
// Scenario spec file format (JSON):
//
//   {
//     "query_types": ["text", ...],
//     "entry": "<node id>",
//     "nodes": [ {"id", "name", "kind", "service_time": {"dist", ...},
//                 "servers", "annotations": {...}, "fanout",
//                 "service_time_by_type": {...}} ],
//     "edges": [ {"from", "to", "routing": {"<type>": prob}} ],
//     "comments": ["..."]            // optional, free text
//   }
//
// Unknown fields are rejected at every level. Parsing validates the graph;
// serialize(parse(text)) round-trips losslessly.

#ifndef SCENARIOBENCH_SCENARIO_IO_HPP_
#define SCENARIOBENCH_SCENARIO_IO_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenariobench/errors.hpp"
#include "scenariobench/scenario.hpp"

namespace scenariobench {

namespace detail {

inline std::pair<int, int> line_col_of_byte(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
  }
  return {line, col};
}

inline void reject_unknown_keys(const nlohmann::json& obj, const std::string& where,
                                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok |= key == a;
    if (!ok) throw SpecError("unknown field \"" + key + "\" in " + where);
  }
}

inline std::vector<double> load_empirical_samples(const std::string& file,
                                                  const std::filesystem::path& base_dir) {
  std::filesystem::path p(file);
  if (p.is_relative()) p = base_dir / p;
  std::ifstream in(p);
  if (!in) throw SpecError("cannot open empirical sample file \"" + p.string() + "\"");
  std::vector<double> samples;
  double v;
  while (in >> v) samples.push_back(v);
  if (samples.empty())
    throw SpecError("empirical sample file \"" + p.string() + "\" contains no samples");
  return samples;
}

inline ServiceDistribution parse_service_time(const nlohmann::json& j,
                                              const std::string& where,
                                              const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("dist"))
    throw SpecError("service_time in " + where + " must be an object with a \"dist\" field");
  std::string dist = j.at("dist").get<std::string>();
  if (dist == "constant") {
    reject_unknown_keys(j, where + ".service_time", {"dist", "ms"});
    return ServiceDistribution::constant(j.at("ms").get<double>());
  }
  if (dist == "exponential") {
    reject_unknown_keys(j, where + ".service_time", {"dist", "mean_ms"});
    return ServiceDistribution::exponential(j.at("mean_ms").get<double>());
  }
  if (dist == "lognormal") {
    reject_unknown_keys(j, where + ".service_time", {"dist", "mu", "sigma"});
    return ServiceDistribution::lognormal(j.at("mu").get<double>(),
                                          j.at("sigma").get<double>());
  }
  if (dist == "empirical") {
    reject_unknown_keys(j, where + ".service_time", {"dist", "file"});
    std::string file = j.at("file").get<std::string>();
    return ServiceDistribution::empirical(file, load_empirical_samples(file, base_dir));
  }
  throw SpecError("unknown service distribution \"" + dist + "\" in " + where);
}

inline nlohmann::json service_time_to_json(const ServiceDistribution& d) {
  nlohmann::json j;
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantDist>) {
          j["dist"] = "constant";
          j["ms"] = v.ms;
        } else if constexpr (std::is_same_v<T, ExponentialDist>) {
          j["dist"] = "exponential";
          j["mean_ms"] = v.mean_ms;
        } else if constexpr (std::is_same_v<T, LognormalDist>) {
          j["dist"] = "lognormal";
          j["mu"] = v.mu;
          j["sigma"] = v.sigma;
        } else {
          j["dist"] = "empirical";
          j["file"] = v.file;
        }
      },
      d.variant());
  return j;
}

inline DistillAnnotations parse_annotations(const nlohmann::json& j, const std::string& where) {
  reject_unknown_keys(j, where + ".annotations",
                      {"similarity_group", "essential", "traffic_fraction", "auxiliary",
                       "model_variants", "default_model", "merge_group"});
  DistillAnnotations a;
  if (j.contains("similarity_group"))
    a.similarity_group = j.at("similarity_group").get<std::string>();
  if (j.contains("essential")) a.essential = j.at("essential").get<bool>();
  if (j.contains("traffic_fraction"))
    a.traffic_fraction = j.at("traffic_fraction").get<double>();
  if (j.contains("auxiliary")) a.auxiliary = j.at("auxiliary").get<bool>();
  if (j.contains("model_variants"))
    a.model_variants = j.at("model_variants").get<std::vector<std::string>>();
  if (j.contains("default_model")) a.default_model = j.at("default_model").get<std::string>();
  if (j.contains("merge_group")) a.merge_group = j.at("merge_group").get<std::string>();
  return a;
}

}  // namespace detail

/// Parse a scenario spec document. `base_dir` resolves relative empirical
/// sample file references. Throws SpecError with line/column on syntax
/// errors and with the offending element named on semantic errors.
inline ScenarioGraph parse_scenario(const std::string& text,
                                    const std::filesystem::path& base_dir = ".") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_col_of_byte(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SpecError("syntax error at line " + std::to_string(line) + ", column " +
                    std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) throw SpecError("scenario spec must be a JSON object");
  detail::reject_unknown_keys(doc, "scenario spec",
                              {"query_types", "entry", "nodes", "edges", "comments"});
  for (const char* required : {"query_types", "entry", "nodes", "edges"})
    if (!doc.contains(required))
      throw SpecError(std::string("scenario spec is missing \"") + required + "\"");

  std::vector<std::string> query_types =
      doc.at("query_types").get<std::vector<std::string>>();
  std::string entry = doc.at("entry").get<std::string>();
  std::vector<std::string> comments;
  if (doc.contains("comments")) comments = doc.at("comments").get<std::vector<std::string>>();

  std::vector<ComponentNode> nodes;
  for (const auto& nj : doc.at("nodes")) {
    std::string id = nj.contains("id") ? nj.at("id").get<std::string>() : "<missing id>";
    std::string where = "node \"" + id + "\"";
    detail::reject_unknown_keys(nj, where,
                                {"id", "name", "kind", "service_time", "servers",
                                 "annotations", "fanout", "service_time_by_type"});
    ComponentNode n;
    n.id = nj.at("id").get<std::string>();
    n.display_name = nj.contains("name") ? nj.at("name").get<std::string>() : n.id;
    n.kind = node_kind_from_string(nj.at("kind").get<std::string>());
    if (nj.contains("service_time"))
      n.service_time = detail::parse_service_time(nj.at("service_time"), where, base_dir);
    if (nj.contains("service_time_by_type"))
      for (const auto& [t, dj] : nj.at("service_time_by_type").items())
        n.service_time_by_type[t] = detail::parse_service_time(dj, where, base_dir);
    if (nj.contains("servers")) n.servers = nj.at("servers").get<int>();
    if (nj.contains("fanout")) {
      std::string f = nj.at("fanout").get<std::string>();
      if (f == "all")
        n.fanout = Fanout::all;
      else if (f == "pick")
        n.fanout = Fanout::pick;
      else
        throw SpecError(where + ": fanout must be \"pick\" or \"all\"");
    }
    if (nj.contains("annotations"))
      n.annotations = detail::parse_annotations(nj.at("annotations"), where);
    nodes.push_back(std::move(n));
  }

  std::vector<Edge> edges;
  for (const auto& ej : doc.at("edges")) {
    detail::reject_unknown_keys(ej, "edge", {"from", "to", "routing"});
    Edge e;
    e.from = ej.at("from").get<std::string>();
    e.to = ej.at("to").get<std::string>();
    for (const auto& [t, p] : ej.at("routing").items())
      e.routing[t] = p.get<double>();
    edges.push_back(std::move(e));
  }

  ScenarioGraph g(std::move(nodes), std::move(edges), std::move(entry),
                  std::move(query_types), std::move(comments));
  require_valid(g);
  return g;
}

inline ScenarioGraph load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario spec \"" + path.string() + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str(), path.parent_path());
  } catch (const SpecError& e) {
    throw SpecError(path.string() + ": " + e.what());
  }
}

inline std::string serialize_scenario(const ScenarioGraph& g) {
  nlohmann::json doc;
  doc["query_types"] = g.query_types();
  doc["entry"] = g.entry_id();
  if (!g.comments().empty()) doc["comments"] = g.comments();
  doc["nodes"] = nlohmann::json::array();
  for (const auto& n : g.nodes()) {
    nlohmann::json nj;
    nj["id"] = n.id;
    nj["name"] = n.display_name;
    nj["kind"] = to_string(n.kind);
    nj["service_time"] = detail::service_time_to_json(n.service_time);
    if (!n.service_time_by_type.empty()) {
      nlohmann::json o;
      for (const auto& [t, d] : n.service_time_by_type)
        o[t] = detail::service_time_to_json(d);
      nj["service_time_by_type"] = o;
    }
    nj["servers"] = n.servers;
    if (n.fanout == Fanout::all) nj["fanout"] = "all";
    const auto& a = n.annotations;
    if (!a.empty()) {
      nlohmann::json aj;
      if (a.similarity_group) aj["similarity_group"] = *a.similarity_group;
      if (a.essential) aj["essential"] = true;
      if (a.traffic_fraction) aj["traffic_fraction"] = *a.traffic_fraction;
      if (a.auxiliary) aj["auxiliary"] = true;
      if (!a.model_variants.empty()) aj["model_variants"] = a.model_variants;
      if (a.default_model) aj["default_model"] = *a.default_model;
      if (a.merge_group) aj["merge_group"] = *a.merge_group;
      nj["annotations"] = aj;
    }
    doc["nodes"].push_back(nj);
  }
  doc["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    nlohmann::json ej;
    ej["from"] = e.from;
    ej["to"] = e.to;
    ej["routing"] = e.routing;
    doc["edges"].push_back(ej);
  }
  return doc.dump(2) + "\n";
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_SCENARIO_IO_HPP_
