//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lclre {

using VertexId = int;
using EdgeKey = std::pair<VertexId, VertexId>;

constexpr int kNoLabel = -1;

inline EdgeKey edge_key(VertexId a, VertexId b) {
  return a <= b ? EdgeKey{a, b} : EdgeKey{b, a};
}

inline std::string edge_name(const EdgeKey& e) {
  return std::to_string(e.first) + "-" + std::to_string(e.second);
}

struct EdgeInfo {
  int multiplicity = 1;
  int label = kNoLabel;
  // edge weights live in {0, 1/2} and are stored as half-integer counts:
  // 0 or 1, with -1 meaning "no weight assigned"
  int weight_halves = -1;
};

// Simple undirected labeled graph over opaque integer vertex ids.
// With allow_multi, parallel edges (as multiplicities) and loops are
// permitted; this is the MultiGraph relaxation used by decoders.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(bool allow_multi) : allow_multi_(allow_multi) {}

  bool allow_multi() const { return allow_multi_; }

  void add_vertex(VertexId v) {
    if (adj_.count(v)) return;
    adj_[v];
  }

  bool has_vertex(VertexId v) const { return adj_.count(v) > 0; }

  bool has_edge(VertexId a, VertexId b) const {
    return edges_.count(edge_key(a, b)) > 0;
  }

  void add_edge(VertexId a, VertexId b) {
    if (!has_vertex(a) || !has_vertex(b))
      throw std::invalid_argument("add_edge: unknown vertex");
    EdgeKey k = edge_key(a, b);
    if (!allow_multi_) {
      if (a == b) throw std::invalid_argument("add_edge: loop in simple graph");
      if (edges_.count(k))
        throw std::invalid_argument("add_edge: duplicate edge in simple graph");
    }
    auto it = edges_.find(k);
    if (it != edges_.end()) {
      it->second.multiplicity += 1;
    } else {
      edges_[k] = EdgeInfo{};
    }
    adj_[a].push_back(b);
    if (a != b) adj_[b].push_back(a);
    std::sort(adj_[a].begin(), adj_[a].end());
    if (a != b) std::sort(adj_[b].begin(), adj_[b].end());
  }

  void set_node_label(VertexId v, int label) {
    if (!has_vertex(v)) throw std::invalid_argument("set_node_label: unknown vertex");
    node_labels_[v] = label;
  }

  int node_label(VertexId v) const {
    auto it = node_labels_.find(v);
    return it == node_labels_.end() ? kNoLabel : it->second;
  }

  void set_edge_label(VertexId a, VertexId b, int label) {
    auto it = edges_.find(edge_key(a, b));
    if (it == edges_.end()) throw std::invalid_argument("set_edge_label: unknown edge");
    it->second.label = label;
  }

  int edge_label(VertexId a, VertexId b) const {
    auto it = edges_.find(edge_key(a, b));
    return it == edges_.end() ? kNoLabel : it->second.label;
  }

  void set_edge_weight_halves(VertexId a, VertexId b, int halves) {
    if (halves != 0 && halves != 1)
      throw std::invalid_argument("edge weight must be 0 or 1/2");
    auto it = edges_.find(edge_key(a, b));
    if (it == edges_.end()) throw std::invalid_argument("set_edge_weight: unknown edge");
    it->second.weight_halves = halves;
  }

  int edge_weight_halves(VertexId a, VertexId b) const {
    auto it = edges_.find(edge_key(a, b));
    return it == edges_.end() ? -1 : it->second.weight_halves;
  }

  int edge_multiplicity(VertexId a, VertexId b) const {
    auto it = edges_.find(edge_key(a, b));
    return it == edges_.end() ? 0 : it->second.multiplicity;
  }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> vs;
    vs.reserve(adj_.size());
    for (const auto& [v, _] : adj_) vs.push_back(v);
    return vs;
  }

  // Sorted neighbor list; parallel edges repeat the neighbor, a loop
  // contributes the vertex itself once.
  const std::vector<VertexId>& neighbors(VertexId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw std::invalid_argument("neighbors: unknown vertex");
    return it->second;
  }

  // Degree in the usual sense: loops count twice.
  int degree(VertexId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw std::invalid_argument("degree: unknown vertex");
    int d = static_cast<int>(it->second.size());
    auto loop = edges_.find(EdgeKey{v, v});
    if (loop != edges_.end()) d += loop->second.multiplicity;
    return d;
  }

  const std::map<EdgeKey, EdgeInfo>& edges() const { return edges_; }
  const std::map<VertexId, int>& node_labels() const { return node_labels_; }

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const {
    std::size_t n = 0;
    for (const auto& [_, info] : edges_) n += info.multiplicity;
    return n;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& [v, _] : adj_) d = std::max(d, degree(v));
    return d;
  }

  bool is_regular(int d) const {
    for (const auto& [v, _] : adj_)
      if (degree(v) != d) return false;
    return true;
  }

  bool is_simple() const {
    for (const auto& [k, info] : edges_)
      if (k.first == k.second || info.multiplicity > 1) return false;
    return true;
  }

  // Induced subgraph on `keep`, retaining vertex ids, labels and weights.
  LabeledGraph induced(const std::set<VertexId>& keep) const {
    LabeledGraph h(allow_multi_);
    for (VertexId v : keep) {
      if (!has_vertex(v)) throw std::invalid_argument("induced: unknown vertex");
      h.add_vertex(v);
      int l = node_label(v);
      if (l != kNoLabel) h.set_node_label(v, l);
    }
    for (const auto& [k, info] : edges_) {
      if (!keep.count(k.first) || !keep.count(k.second)) continue;
      for (int i = 0; i < info.multiplicity; ++i) h.add_edge(k.first, k.second);
      if (info.label != kNoLabel) h.set_edge_label(k.first, k.second, info.label);
      if (info.weight_halves >= 0)
        h.set_edge_weight_halves(k.first, k.second, info.weight_halves);
    }
    return h;
  }

  bool operator==(const LabeledGraph& o) const {
    return adj_ == o.adj_ && edges_keyed() == o.edges_keyed() &&
           node_labels_ == o.node_labels_;
  }

 private:
  std::map<EdgeKey, std::tuple<int, int, int>> edges_keyed() const {
    std::map<EdgeKey, std::tuple<int, int, int>> m;
    for (const auto& [k, i] : edges_)
      m[k] = {i.multiplicity, i.label, i.weight_halves};
    return m;
  }

  bool allow_multi_ = false;
  std::map<VertexId, std::vector<VertexId>> adj_;
  std::map<EdgeKey, EdgeInfo> edges_;
  std::map<VertexId, int> node_labels_;
};

using MultiGraph = LabeledGraph;

inline MultiGraph make_multigraph() { return LabeledGraph(true); }

// ---------------------------------------------------------------------------
// Distances and balls

constexpr int kInfDist = std::numeric_limits<int>::max();

inline std::map<VertexId, int> bfs_distances(const LabeledGraph& g, VertexId src) {
  if (!g.has_vertex(src)) throw std::invalid_argument("bfs: unknown vertex");
  std::map<VertexId, int> dist;
  std::queue<VertexId> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (VertexId w : g.neighbors(v)) {
      if (!dist.count(w)) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

inline int dist(const LabeledGraph& g, VertexId u, VertexId v) {
  auto d = bfs_distances(g, u);
  auto it = d.find(v);
  return it == d.end() ? kInfDist : it->second;
}

struct CenteredGraph {
  LabeledGraph graph;
  VertexId center = 0;
  int radius = 0;
};

// Radius-r ball: vertices at distance <= r, edges with at least one
// endpoint at distance < r.
inline CenteredGraph ball(const LabeledGraph& g, VertexId v, int r) {
  if (!g.has_vertex(v)) throw std::invalid_argument("ball: unknown vertex");
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  auto d = bfs_distances(g, v);
  LabeledGraph h(g.allow_multi());
  for (const auto& [u, du] : d)
    if (du <= r) {
      h.add_vertex(u);
      int l = g.node_label(u);
      if (l != kNoLabel) h.set_node_label(u, l);
    }
  for (const auto& [k, info] : g.edges()) {
    auto da = d.find(k.first);
    auto db = d.find(k.second);
    if (da == d.end() || db == d.end()) continue;
    if (da->second > r || db->second > r) continue;
    if (da->second < r || db->second < r) {
      for (int i = 0; i < info.multiplicity; ++i) h.add_edge(k.first, k.second);
      if (info.label != kNoLabel) h.set_edge_label(k.first, k.second, info.label);
      if (info.weight_halves >= 0)
        h.set_edge_weight_halves(k.first, k.second, info.weight_halves);
    }
  }
  return CenteredGraph{std::move(h), v, r};
}

// ---------------------------------------------------------------------------
// Gadget metric: weights in {0, 1/2}, distances in half-integer units.

constexpr std::int64_t kInfGdist = std::numeric_limits<std::int64_t>::max();

// Single-source shortest paths under the half-integer edge weights.
// Result values are in halves (gdist 1 == 2 halves); unreachable vertices
// are absent from the map.
inline std::map<VertexId, std::int64_t> gdist_halves_from(const LabeledGraph& g,
                                                          VertexId src) {
  if (!g.has_vertex(src)) throw std::invalid_argument("gdist: unknown vertex");
  for (const auto& [k, info] : g.edges())
    if (info.weight_halves < 0)
      throw std::invalid_argument("gdist: edge " + edge_name(k) + " has no weight");
  std::map<VertexId, std::int64_t> dist;
  using Item = std::pair<std::int64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (dist.at(v) != d) continue;
    for (VertexId w : g.neighbors(v)) {
      std::int64_t nd = d + g.edge_weight_halves(v, w);
      auto it = dist.find(w);
      if (it == dist.end() || nd < it->second) {
        dist[w] = nd;
        pq.push({nd, w});
      }
    }
  }
  return dist;
}

// gdist in halves; kInfGdist for disconnected pairs.
inline std::int64_t gdist_halves(const LabeledGraph& g, VertexId u, VertexId v) {
  auto d = gdist_halves_from(g, u);
  auto it = d.find(v);
  return it == d.end() ? kInfGdist : it->second;
}

// r-gball: vertices at gdist <= r; an edge is included when it can be
// traversed within the budget, i.e. min endpoint gdist plus its weight
// stays <= r.
inline CenteredGraph gball(const LabeledGraph& g, VertexId v, int r) {
  if (r < 0) throw std::invalid_argument("gball: negative radius");
  auto d = gdist_halves_from(g, v);
  std::int64_t rh = 2LL * r;
  LabeledGraph h(g.allow_multi());
  for (const auto& [u, du] : d)
    if (du <= rh) {
      h.add_vertex(u);
      int l = g.node_label(u);
      if (l != kNoLabel) h.set_node_label(u, l);
    }
  for (const auto& [k, info] : g.edges()) {
    auto da = d.find(k.first);
    auto db = d.find(k.second);
    if (da == d.end() || db == d.end()) continue;
    std::int64_t reach = std::min(da->second, db->second) + info.weight_halves;
    if (reach <= rh && da->second <= rh && db->second <= rh) {
      for (int i = 0; i < info.multiplicity; ++i) h.add_edge(k.first, k.second);
      if (info.label != kNoLabel) h.set_edge_label(k.first, k.second, info.label);
      h.set_edge_weight_halves(k.first, k.second, info.weight_halves);
    }
  }
  return CenteredGraph{std::move(h), v, r};
}

}  // namespace lclre
