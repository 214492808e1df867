//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
// Shared test fixtures: hand-assembled gadgeted graphs (including ones a
// simple source could not produce, like theta shapes) and small standard
// graphs. Test-only; the production path builds these via gadget_bd.
#pragma once

#include <map>
#include <vector>

#include "lclre/gadget_bd.hpp"
#include "lclre/graph.hpp"

namespace fixtures {

using namespace lclre;

inline LabeledGraph cycle_graph(int n) {
  LabeledGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline LabeledGraph complete_graph(int n) {
  LabeledGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

// Assembles a gadgeted graph from explicit chains, without requiring the
// contracted source to be simple. Originals are 0..n-1.
inline GadgetedGraph assemble_gadgeted(
    int n_originals, const std::vector<std::tuple<int, int, int>>& chains,
    int r_b = 1) {
  GadgetedGraph gg;
  gg.r_b = r_b;
  for (int i = 0; i < n_originals; ++i) {
    gg.graph.add_vertex(i);
    gg.vclass[i] = VClass::Original;
  }
  VertexId next = n_originals;
  auto base = a_gadget();
  for (auto [u, v, w] : chains) {
    ExpandedEdge xe;
    xe.origin = edge_key(u, v);
    xe.length = w;
    for (int i = 0; i < 6 * w; ++i) {
      gg.graph.add_vertex(next + i);
      xe.chain.push_back(next + i);
    }
    auto id = [&](int gadget, int role) { return xe.chain[gadget * 6 + role]; };
    for (int i = 0; i < w; ++i)
      for (const auto& [be, info] : base.edges()) {
        (void)info;
        gg.graph.add_edge(id(i, be.first), id(i, be.second));
      }
    for (int i = 0; i + 1 < w; ++i) gg.graph.add_edge(id(i, 5), id(i + 1, 0));
    gg.graph.add_edge(u, id(0, 0));
    gg.graph.add_edge(v, id(w - 1, 5));
    for (int i = 0; i < 6 * w; ++i) gg.vclass[xe.chain[i]] = VClass::Inner;
    gg.vclass[id(0, 0)] = VClass::Outer;
    gg.vclass[id(w - 1, 5)] = VClass::Outer;
    gg.expanded.push_back(std::move(xe));
    next += 6 * w;
  }
  for (const auto& [e, info] : gg.graph.edges()) {
    (void)info;
    bool touches = gg.vclass.at(e.first) == VClass::Original ||
                   gg.vclass.at(e.second) == VClass::Original;
    gg.graph.set_edge_weight_halves(e.first, e.second, touches ? 1 : 0);
  }
  return gg;
}

// Two originals joined by three chains of pairwise distinct lengths; the
// whole graph is 3-regular with 2 + 6*(1+2+3) = 38 vertices.
inline GadgetedGraph theta_123() {
  return assemble_gadgeted(2, {{0, 1, 1}, {0, 1, 2}, {0, 1, 3}});
}

// Degree-deficient two-chain fragment (20 vertices), for fast positive runs
// of the coloring harness.
inline GadgetedGraph theta_12_fragment() {
  return assemble_gadgeted(2, {{0, 1, 1}, {0, 1, 2}});
}

// The negative fixture: two pairs of equal-length twin chains plus a third
// matched pair, 40 vertices, 3-regular. It admits a folding labeling that
// satisfies both hypotheses of the coloring statement yet repeats colors
// inside the originals' gballs.
inline GadgetedGraph twin_chain_40() {
  return assemble_gadgeted(4, {{0, 1, 1},
                               {0, 1, 1},
                               {0, 2, 1},
                               {1, 3, 1},
                               {2, 3, 1},
                               {2, 3, 1}});
}

// Distance-2 edge coloring of K4: all edges pairwise within distance 2, so
// all colors distinct; colors 1..6 double as chain lengths.
inline std::map<EdgeKey, std::int64_t> k4_edge_coloring() {
  auto g = complete_graph(4);
  std::map<EdgeKey, std::int64_t> col;
  std::int64_t c = 1;
  for (const auto& [e, info] : g.edges()) {
    (void)info;
    col[e] = c++;
  }
  return col;
}

// All-distinct vertex coloring, valid at any distance.
inline std::map<VertexId, std::int64_t> injective_coloring(const LabeledGraph& g) {
  std::map<VertexId, std::int64_t> chi;
  std::int64_t c = 1;
  for (VertexId v : g.vertices()) chi[v] = c++;
  return chi;
}

}  // namespace fixtures
