//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lclre/graph.hpp"

namespace lclre {
namespace detail {

inline int triangles_through(const LabeledGraph& g, VertexId v) {
  int t = 0;
  const auto& nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j)
      if (nb[i] != nb[j] && g.has_edge(nb[i], nb[j])) ++t;
  return t;
}

// Joint color refinement over both graphs with a shared signature table,
// so the color ids are comparable across them. Starts from (node label,
// degree, triangle count, incident edge signatures); plain degree
// refinement stalls on regular graphs, and the gadget graphs we compare
// are full of triangles.
inline void refine_colors_joint(const LabeledGraph& a, const LabeledGraph& b,
                                std::map<VertexId, std::int64_t>& ca,
                                std::map<VertexId, std::int64_t>& cb) {
  auto seed = [&](const LabeledGraph& g, VertexId v) {
    std::vector<std::int64_t> sig{g.node_label(v), g.degree(v),
                                  triangles_through(g, v)};
    std::vector<std::int64_t> es;
    for (VertexId w : g.neighbors(v)) {
      es.push_back(g.edge_label(v, w));
      es.push_back(g.edge_weight_halves(v, w));
    }
    std::sort(es.begin(), es.end());
    sig.insert(sig.end(), es.begin(), es.end());
    return sig;
  };

  {
    std::map<std::vector<std::int64_t>, std::int64_t> table;
    auto assign = [&](const LabeledGraph& g, std::map<VertexId, std::int64_t>& c) {
      for (VertexId v : g.vertices()) {
        auto [it, _] = table.try_emplace(seed(g, v),
                                         static_cast<std::int64_t>(table.size()));
        c[v] = it->second;
      }
    };
    assign(a, ca);
    assign(b, cb);
  }

  std::size_t rounds = a.num_vertices() + b.num_vertices();
  for (std::size_t round = 0; round < rounds; ++round) {
    std::map<std::vector<std::int64_t>, std::int64_t> table;
    auto next_of = [&](const LabeledGraph& g,
                       const std::map<VertexId, std::int64_t>& c) {
      std::map<VertexId, std::int64_t> next;
      for (VertexId v : g.vertices()) {
        std::vector<std::int64_t> sig{c.at(v)};
        std::vector<std::int64_t> ns;
        for (VertexId w : g.neighbors(v))
          ns.push_back(c.at(w) * 8 + g.edge_weight_halves(v, w) + 2);
        std::sort(ns.begin(), ns.end());
        sig.insert(sig.end(), ns.begin(), ns.end());
        auto [it, _] = table.try_emplace(sig,
                                         static_cast<std::int64_t>(table.size()));
        next[v] = it->second;
      }
      return next;
    };
    auto na = next_of(a, ca);
    auto nb = next_of(b, cb);
    bool changed = false;
    std::map<std::int64_t, std::set<std::int64_t>> split;
    for (const auto& [v, c] : ca) split[c].insert(na.at(v));
    for (const auto& [v, c] : cb) split[c].insert(nb.at(v));
    for (auto& [_, s] : split)
      if (s.size() > 1) changed = true;
    ca = std::move(na);
    cb = std::move(nb);
    if (!changed) break;
  }
}

struct IsoState {
  const LabeledGraph* a;
  const LabeledGraph* b;
  std::map<VertexId, VertexId> fwd;
  std::map<VertexId, VertexId> bwd;
  std::map<VertexId, std::int64_t> ca, cb;
};

inline bool edges_compatible(const IsoState& s, VertexId va, VertexId vb) {
  // va in a is being mapped to vb in b; check consistency with mapped part.
  for (const auto& [x, y] : s.fwd) {
    int ma = s.a->edge_multiplicity(va, x);
    int mb = s.b->edge_multiplicity(vb, y);
    if (ma != mb) return false;
    if (ma > 0) {
      if (s.a->edge_label(va, x) != s.b->edge_label(vb, y)) return false;
      if (s.a->edge_weight_halves(va, x) != s.b->edge_weight_halves(vb, y))
        return false;
    }
  }
  if (s.a->edge_multiplicity(va, va) != s.b->edge_multiplicity(vb, vb))
    return false;
  return true;
}

inline bool extend(IsoState& s, std::vector<VertexId>& order, std::size_t i) {
  if (i == order.size()) return true;
  VertexId va = order[i];
  for (VertexId vb : s.b->vertices()) {
    if (s.bwd.count(vb)) continue;
    if (s.ca.at(va) != s.cb.at(vb)) continue;
    if (!edges_compatible(s, va, vb)) continue;
    s.fwd[va] = vb;
    s.bwd[vb] = va;
    if (extend(s, order, i + 1)) return true;
    s.fwd.erase(va);
    s.bwd.erase(vb);
  }
  return false;
}

inline bool iso_with_pins(const LabeledGraph& a, const LabeledGraph& b,
                          std::optional<std::pair<VertexId, VertexId>> pin) {
  if (a.num_vertices() != b.num_vertices()) return false;
  if (a.num_edges() != b.num_edges()) return false;

  IsoState s{&a, &b, {}, {}, {}, {}};
  refine_colors_joint(a, b, s.ca, s.cb);

  std::map<std::int64_t, int> ha, hb;
  for (const auto& [_, c] : s.ca) ha[c]++;
  for (const auto& [_, c] : s.cb) hb[c]++;
  if (ha != hb) return false;

  std::vector<VertexId> order = a.vertices();
  // Rarest color classes first, then by degree descending: fail fast.
  std::sort(order.begin(), order.end(), [&](VertexId x, VertexId y) {
    int cx = ha.at(s.ca.at(x)), cy = ha.at(s.ca.at(y));
    if (cx != cy) return cx < cy;
    if (a.degree(x) != a.degree(y)) return a.degree(x) > a.degree(y);
    return x < y;
  });

  if (pin) {
    auto [pa, pb] = *pin;
    if (s.ca.at(pa) != s.cb.at(pb)) return false;
    s.fwd[pa] = pb;
    s.bwd[pb] = pa;
    order.erase(std::find(order.begin(), order.end(), pa));
  }
  return extend(s, order, 0);
}

}  // namespace detail

// Label-preserving graph isomorphism (labels, multiplicities, weights).
// Brute-force backtracking with color-refinement pruning; meant for the
// constant-size objects this project compares, not for graphs at scale.
inline bool labeled_graph_iso(const LabeledGraph& a, const LabeledGraph& b) {
  return detail::iso_with_pins(a, b, std::nullopt);
}

// Isomorphism of centered graphs: center maps to center.
inline bool centered_iso(const CenteredGraph& a, const CenteredGraph& b) {
  if (a.radius != b.radius) return false;
  return detail::iso_with_pins(a.graph, b.graph,
                               std::make_pair(a.center, b.center));
}

}  // namespace lclre
