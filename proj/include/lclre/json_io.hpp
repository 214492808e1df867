//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lclre/encode_ab.hpp"
#include "lclre/gadget_bd.hpp"
#include "lclre/graph.hpp"
#include "lclre/problem.hpp"
#include "lclre/view.hpp"

namespace lclre {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Graphs. Weights are serialized as 0|1 with 1 meaning one half.

inline json graph_to_json(const LabeledGraph& g) {
  json j;
  j["vertices"] = json::array();
  for (VertexId v : g.vertices()) j["vertices"].push_back(v);
  j["edges"] = json::array();
  json nodeLabels = json::object(), edgeLabels = json::object(),
       weights = json::object();
  for (const auto& [v, l] : g.node_labels())
    nodeLabels[std::to_string(v)] = l;
  for (const auto& [e, info] : g.edges()) {
    for (int i = 0; i < info.multiplicity; ++i)
      j["edges"].push_back({e.first, e.second});
    if (info.label != kNoLabel) edgeLabels[edge_name(e)] = info.label;
    if (info.weight_halves >= 0) weights[edge_name(e)] = info.weight_halves;
  }
  if (!nodeLabels.empty()) j["node_labels"] = nodeLabels;
  if (!edgeLabels.empty()) j["edge_labels"] = edgeLabels;
  if (!weights.empty()) j["edge_weights"] = weights;
  if (g.allow_multi()) j["multigraph"] = true;
  return j;
}

inline EdgeKey parse_edge_name(const std::string& s) {
  auto dash = s.find('-');
  if (dash == std::string::npos)
    throw std::invalid_argument("bad edge key: " + s);
  return edge_key(std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1)));
}

inline LabeledGraph graph_from_json(const json& j) {
  LabeledGraph g(j.value("multigraph", false));
  if (!j.contains("vertices"))
    throw std::invalid_argument("graph json: missing vertices");
  for (const auto& v : j.at("vertices")) g.add_vertex(v.get<VertexId>());
  const json edges = j.value("edges", json::array());
  for (const auto& e : edges)
    g.add_edge(e.at(0).get<VertexId>(), e.at(1).get<VertexId>());
  const json nodeLabels = j.value("node_labels", json::object());
  for (const auto& [k, v] : nodeLabels.items())
    g.set_node_label(std::stoi(k), v.get<int>());
  const json edgeLabels = j.value("edge_labels", json::object());
  for (const auto& [k, v] : edgeLabels.items()) {
    EdgeKey e = parse_edge_name(k);
    g.set_edge_label(e.first, e.second, v.get<int>());
  }
  const json weights = j.value("edge_weights", json::object());
  for (const auto& [k, v] : weights.items()) {
    EdgeKey e = parse_edge_name(k);
    g.set_edge_weight_halves(e.first, e.second, v.get<int>());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Labelings.

inline json labeling_to_json(const Labeling& l) {
  json j = json::object();
  json n = json::object(), e = json::object();
  for (const auto& [v, x] : l.node) n[std::to_string(v)] = x;
  for (const auto& [k, x] : l.edge) e[edge_name(k)] = x;
  j["node_out"] = n;
  if (!l.edge.empty()) j["edge_out"] = e;
  return j;
}

inline Labeling labeling_from_json(const json& j) {
  Labeling l;
  const json nodeOut = j.value("node_out", json::object());
  for (const auto& [k, v] : nodeOut.items()) l.node[std::stoi(k)] = v.get<int>();
  const json edgeOut = j.value("edge_out", json::object());
  for (const auto& [k, v] : edgeOut.items())
    l.edge[parse_edge_name(k)] = v.get<int>();
  return l;
}

// Half-edge labelings: keys "u-v@v" for the half of edge {u,v} at v.
inline json half_edge_labeling_to_json(const HalfEdgeLabeling& h) {
  json j = json::object();
  for (const auto& [key, l] : h.at)
    j[edge_name(key.second) + "@" + std::to_string(key.first)] = l;
  return j;
}

inline HalfEdgeLabeling half_edge_labeling_from_json(const json& j) {
  HalfEdgeLabeling h;
  for (const auto& [k, v] : j.items()) {
    auto at = k.find('@');
    if (at == std::string::npos)
      throw std::invalid_argument("bad half-edge key: " + k);
    EdgeKey e = parse_edge_name(k.substr(0, at));
    VertexId vtx = std::stoi(k.substr(at + 1));
    h.set(vtx, e, v.get<ReLabel>());
  }
  return h;
}

// ---------------------------------------------------------------------------
// Decode maps.

inline json decode_map_to_json(const DecodeMap& dm) {
  json j;
  json nodes = json::object();
  for (const auto& [u, set] : dm.node_sets) nodes[std::to_string(u)] = set;
  json edges = json::object();
  for (const auto& item : dm.edge_items) {
    std::string key = edge_name(item.decoded);
    if (edges.contains(key)) {
      for (VertexId v : item.set) edges[key].push_back(v);
    } else {
      edges[key] = item.set;
    }
  }
  j["nodes"] = nodes;
  j["edges"] = edges;
  j["malformed_vertices"] =
      std::vector<VertexId>(dm.malformed_vertices.begin(),
                            dm.malformed_vertices.end());
  json me = json::array();
  for (const auto& e : dm.malformed_edges) me.push_back({e.first, e.second});
  j["malformed_edges"] = me;
  return j;
}

// ---------------------------------------------------------------------------
// Views, serialized as their shared-subtree pools.

inline json view_to_json(const RootedView& v) {
  json nodes = json::array();
  for (std::size_t i = 0; i < v.pool_size(); ++i) {
    const auto& nd = v.node(static_cast<int>(i));
    nodes.push_back({nd.node_label, nd.edge_label, nd.children});
  }
  return json{{"nodes", nodes}, {"root", v.root()}, {"radius", v.radius()}};
}

inline RootedView view_from_json(const json& j) {
  RootedView v;
  for (const auto& nd : j.at("nodes"))
    v.add_node(nd.at(0).get<int>(), nd.at(1).get<int>(),
               nd.at(2).get<std::vector<int>>());
  v.set_root(j.at("root").get<int>(), j.at("radius").get<int>());
  return v;
}

// ---------------------------------------------------------------------------
// Gadgeted graphs: the weighted graph plus the vertex classification and
// per-expanded-edge provenance.

inline json gadgeted_to_json(const GadgetedGraph& gg) {
  json j;
  j["graph"] = graph_to_json(gg.graph);
  json classes = json::object();
  for (const auto& [v, c] : gg.vclass)
    classes[std::to_string(v)] = c == VClass::Original ? "original"
                                 : c == VClass::Outer  ? "outer"
                                                       : "inner";
  j["classes"] = classes;
  json expanded = json::array();
  for (const auto& xe : gg.expanded)
    expanded.push_back({{"origin", {xe.origin.first, xe.origin.second}},
                        {"length", xe.length},
                        {"chain", xe.chain}});
  j["expanded"] = expanded;
  j["r_b"] = gg.r_b;
  return j;
}

inline GadgetedGraph gadgeted_from_json(const json& j) {
  GadgetedGraph gg;
  gg.graph = graph_from_json(j.at("graph"));
  for (const auto& [k, v] : j.at("classes").items()) {
    std::string c = v.get<std::string>();
    gg.vclass[std::stoi(k)] = c == "original" ? VClass::Original
                              : c == "outer"  ? VClass::Outer
                                              : VClass::Inner;
  }
  const json expanded = j.value("expanded", json::array());
  for (const auto& xe : expanded) {
    ExpandedEdge e;
    e.origin = edge_key(xe.at("origin").at(0).get<VertexId>(),
                        xe.at("origin").at(1).get<VertexId>());
    e.length = xe.at("length").get<std::int64_t>();
    e.chain = xe.at("chain").get<std::vector<VertexId>>();
    gg.expanded.push_back(std::move(e));
  }
  gg.r_b = j.value("r_b", 1);
  return gg;
}

// D-outputs carry (coloring, payload) pairs explicitly so files do not
// depend on a process-local label table.
inline json d_labeling_to_json(const Labeling& l, const DLabelTable& table) {
  json pairs = json::object();
  for (const auto& [v, id] : l.node) {
    auto [chi, payload] = table.unpack(id);
    pairs[std::to_string(v)] = {chi, payload};
  }
  return json{{"node_out_pairs", pairs}};
}

inline Labeling d_labeling_from_json(const json& j, DLabelTable& table) {
  Labeling l;
  for (const auto& [k, v] : j.at("node_out_pairs").items())
    l.node[std::stoi(k)] =
        table.pack(v.at(0).get<std::int64_t>(), v.at(1).get<int>());
  return l;
}

// ---------------------------------------------------------------------------
// Verdicts.

inline json verdict_to_json(const Verdict& v) {
  json j;
  j["ok"] = v.ok;
  json fails = json::array();
  for (const auto& f : v.failures) {
    json e;
    e["reason"] = fail_reason_name(f.reason);
    if (f.is_edge)
      e["edge"] = edge_name(f.edge);
    else
      e["vertex"] = f.vertex;
    fails.push_back(e);
  }
  j["failures"] = fails;
  return j;
}

// ---------------------------------------------------------------------------
// Problems: a formalism tag plus either a named builtin with parameters or
// an explicit constraint list.

struct ProblemSpec {
  std::string formalism;  // lcl | pn | re
  LCLProblem lcl;
  PNProblem pn;
  REProblem re;
};

inline ProblemSpec problem_from_json(const json& j) {
  ProblemSpec spec;
  spec.formalism = j.at("formalism").get<std::string>();
  if (spec.formalism == "lcl") {
    if (j.contains("builtin")) {
      std::string name = j.at("builtin").get<std::string>();
      if (name == "coloring")
        spec.lcl = make_coloring_lcl(j.value("colors", 4), j.value("max_degree", 3));
      else if (name == "maximal-matching")
        spec.lcl = make_matching_lcl(j.value("max_degree", 3));
      else
        throw std::invalid_argument("unknown lcl builtin: " + name);
    } else if (j.contains("members")) {
      LCLProblem p;
      p.max_degree = j.value("max_degree", 3);
      p.radius = j.value("radius", 1);
      p.out_alphabet = j.at("out_alphabet").get<std::vector<int>>();
      if (j.contains("in_alphabet"))
        p.in_alphabet = j.at("in_alphabet").get<std::vector<int>>();
      if (j.contains("edge_out_alphabet"))
        p.edge_out_alphabet = j.at("edge_out_alphabet").get<std::vector<int>>();
      std::vector<LabeledBall> members;
      for (const auto& m : j.at("members")) {
        LabeledBall b;
        b.ball.graph = graph_from_json(m.at("graph"));
        b.ball.center = m.at("center").get<VertexId>();
        b.ball.radius = p.radius;
        b.out = labeling_from_json(m.value("out", json::object()));
        members.push_back(std::move(b));
      }
      p.constraint = explicit_lcl_oracle(std::move(members));
      p.name = j.value("name", "explicit-lcl");
      spec.lcl = std::move(p);
    } else {
      throw std::invalid_argument("lcl problem needs builtin or members");
    }
  } else if (spec.formalism == "pn") {
    std::string name = j.at("builtin").get<std::string>();
    if (name == "coloring")
      spec.pn = make_coloring_pn(j.value("colors", 3));
    else
      throw std::invalid_argument("unknown pn builtin: " + name);
  } else if (spec.formalism == "re") {
    std::string name = j.at("builtin").get<std::string>();
    if (name == "coloring")
      spec.re = make_coloring_re(j.value("colors", 4));
    else if (name == "sinkless-orientation")
      spec.re = make_sinkless_orientation_re();
    else
      throw std::invalid_argument("unknown re builtin: " + name);
  } else {
    throw std::invalid_argument("unknown formalism: " + spec.formalism);
  }
  return spec;
}

// ---------------------------------------------------------------------------
// DOT export; vertex classes drive the styling when provided.

inline std::string to_dot(const LabeledGraph& g,
                          const std::map<VertexId, std::string>& vclass = {}) {
  std::ostringstream os;
  os << "graph G {\n  node [shape=circle];\n";
  for (VertexId v : g.vertices()) {
    os << "  " << v;
    std::string attrs;
    int l = g.node_label(v);
    if (l != kNoLabel) attrs += "label=\"" + std::to_string(v) + ":" +
                                std::to_string(l) + "\"";
    auto it = vclass.find(v);
    if (it != vclass.end()) {
      std::string color = "white";
      if (it->second == "original") color = "black";
      if (it->second == "outer") color = "magenta";
      if (it->second == "inner") color = "lightgray";
      if (it->second == "malformed") color = "red";
      if (!attrs.empty()) attrs += ", ";
      attrs += "style=filled, fillcolor=" + color;
      if (it->second == "original") attrs += ", fontcolor=white";
    }
    if (!attrs.empty()) os << " [" << attrs << "]";
    os << ";\n";
  }
  for (const auto& [e, info] : g.edges())
    for (int i = 0; i < info.multiplicity; ++i) {
      os << "  " << e.first << " -- " << e.second;
      if (info.label != kNoLabel)
        os << " [label=\"" << info.label << "\"]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// File helpers.

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

inline void save_json(const std::string& path, const json& j) {
  save_text(path, j.dump(2) + "\n");
}

}  // namespace lclre
