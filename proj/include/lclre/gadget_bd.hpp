//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "lclre/graph.hpp"
#include "lclre/problem.hpp"
#include "lclre/view.hpp"

namespace lclre {

// ---------------------------------------------------------------------------
// The 6-vertex expansion gadget. Vertices 0..5; 0 and 5 carry the external
// stubs. Triangles: {0,1,2} and {3,4,5}.

inline LabeledGraph a_gadget() {
  LabeledGraph g;
  for (int i = 0; i < 6; ++i) g.add_vertex(i);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 4);
  g.add_edge(3, 4);
  g.add_edge(3, 5);
  g.add_edge(4, 5);
  return g;
}

enum class VClass { Original, Outer, Inner };

struct ExpandedEdge {
  EdgeKey origin;               // the contracted edge
  std::int64_t length = 1;      // number of chained gadgets == its color
  std::vector<VertexId> chain;  // 6*length vertices, gadget by gadget
};

struct GadgetedGraph {
  LabeledGraph graph;  // weights set: 1/2 iff the edge touches an original
  std::map<VertexId, VClass> vclass;
  std::vector<ExpandedEdge> expanded;
  int r_b = 1;
};

// Vertex is non-triangle iff no pair of its neighbors is adjacent.
inline std::map<VertexId, bool> classify_triangle_vertices(const LabeledGraph& g) {
  std::map<VertexId, bool> tri;
  for (VertexId v : g.vertices()) {
    bool t = false;
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size() && !t; ++i)
      for (std::size_t j = i + 1; j < nb.size() && !t; ++j)
        if (nb[i] != nb[j] && g.has_edge(nb[i], nb[j])) t = true;
    tri[v] = t;
  }
  return tri;
}

// Distance between edges: minimum endpoint distance.
inline int edge_distance(const LabeledGraph& g, const EdgeKey& e, const EdgeKey& f) {
  int d = kInfDist;
  for (VertexId a : {e.first, e.second}) {
    auto dm = bfs_distances(g, a);
    for (VertexId b : {f.first, f.second}) {
      auto it = dm.find(b);
      if (it != dm.end()) d = std::min(d, it->second);
    }
  }
  return d;
}

// Expands every edge of a 3-regular simple graph into a chain of gadgets
// whose length is the edge's color; colors must form a distance-2*r_b edge
// coloring (no two edges within that distance share one) and be >= 1, since
// a zero-length expansion would leave an undetectable bare edge.
inline GadgetedGraph gadget_bd(const LabeledGraph& g,
                               const std::map<EdgeKey, std::int64_t>& coloring,
                               int r_b) {
  if (!g.is_simple() || !g.is_regular(3))
    throw std::invalid_argument("gadget_bd: need a simple 3-regular graph");
  if (r_b < 1) throw std::invalid_argument("gadget_bd: r_b must be positive");
  for (const auto& [e, info] : g.edges()) {
    (void)info;
    auto it = coloring.find(e);
    if (it == coloring.end() || it->second < 1)
      throw std::invalid_argument("gadget_bd: edge " + edge_name(e) +
                                  " needs a color >= 1");
  }
  std::vector<EdgeKey> es;
  for (const auto& [e, info] : g.edges()) {
    (void)info;
    es.push_back(e);
  }
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j)
      if (coloring.at(es[i]) == coloring.at(es[j]) &&
          edge_distance(g, es[i], es[j]) <= 2 * r_b)
        throw std::invalid_argument("gadget_bd: edges " + edge_name(es[i]) +
                                    " and " + edge_name(es[j]) +
                                    " share a color within distance " +
                                    std::to_string(2 * r_b));

  GadgetedGraph out;
  out.r_b = r_b;
  VertexId next = 0;
  for (VertexId v : g.vertices()) {
    out.graph.add_vertex(v);
    out.vclass[v] = VClass::Original;
    next = std::max(next, v + 1);
  }

  auto base = a_gadget();
  for (const EdgeKey& e : es) {
    std::int64_t w = coloring.at(e);
    ExpandedEdge xe;
    xe.origin = e;
    xe.length = w;
    for (std::int64_t i = 0; i < 6 * w; ++i) {
      out.graph.add_vertex(next + static_cast<VertexId>(i));
      xe.chain.push_back(next + static_cast<VertexId>(i));
    }
    auto id = [&](std::int64_t gadget, int role) {
      return xe.chain[gadget * 6 + role];
    };
    for (std::int64_t i = 0; i < w; ++i)
      for (const auto& [be, info] : base.edges()) {
        (void)info;
        out.graph.add_edge(id(i, be.first), id(i, be.second));
      }
    for (std::int64_t i = 0; i + 1 < w; ++i)
      out.graph.add_edge(id(i, 5), id(i + 1, 0));
    // chain oriented from the lower-id endpoint
    out.graph.add_edge(e.first, id(0, 0));
    out.graph.add_edge(e.second, id(w - 1, 5));
    for (std::int64_t i = 0; i < 6 * w; ++i)
      out.vclass[xe.chain[i]] = VClass::Inner;
    out.vclass[id(0, 0)] = VClass::Outer;
    out.vclass[id(w - 1, 5)] = VClass::Outer;
    out.expanded.push_back(std::move(xe));
    next += static_cast<VertexId>(6 * w);
  }

  for (const auto& [e, info] : out.graph.edges()) {
    (void)info;
    bool touches = out.vclass.at(e.first) == VClass::Original ||
                   out.vclass.at(e.second) == VClass::Original;
    out.graph.set_edge_weight_halves(e.first, e.second, touches ? 1 : 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chain recognition, shared by the contraction and the gball membership
// test. Walks a component of triangle vertices entered from `entry`
// (adjacent to the non-triangle vertex `from`) and matches an exact gadget
// chain; returns its ordered vertices and the far attachment, or nothing.

namespace bd_detail {

struct ChainMatch {
  std::vector<VertexId> chain;  // 6*length vertices
  VertexId far_end = -1;        // non-triangle vertex at the other side
  std::int64_t length = 0;
};

inline std::optional<ChainMatch> match_chain(
    const LabeledGraph& g, const std::map<VertexId, bool>& tri, VertexId from,
    VertexId entry) {
  ChainMatch m;
  VertexId prev = from;
  VertexId c0 = entry;
  std::set<VertexId> usedSet;
  while (true) {
    // c0 plays role 0 of the next gadget
    if (g.degree(c0) != 3 || !tri.count(c0) || !tri.at(c0)) return std::nullopt;
    std::vector<VertexId> others;
    for (VertexId z : g.neighbors(c0))
      if (z != prev) others.push_back(z);
    if (others.size() != 2) return std::nullopt;
    VertexId r1 = std::min(others[0], others[1]);
    VertexId r2 = std::max(others[0], others[1]);
    if (!g.has_edge(r1, r2)) return std::nullopt;
    auto third = [&](VertexId v, VertexId n1, VertexId n2) -> VertexId {
      if (g.degree(v) != 3) return -1;
      for (VertexId z : g.neighbors(v))
        if (z != n1 && z != n2) return z;
      return -1;
    };
    VertexId r3 = third(r1, c0, r2);
    VertexId r4 = third(r2, c0, r1);
    if (r3 < 0 || r4 < 0 || r3 == r4) return std::nullopt;
    if (!g.has_edge(r3, r4)) return std::nullopt;
    VertexId r5 = third(r3, r1, r4);
    if (r5 < 0 || r5 != third(r4, r2, r3)) return std::nullopt;
    if (g.degree(r5) != 3) return std::nullopt;
    std::vector<VertexId> roles{c0, r1, r2, r3, r4, r5};
    std::set<VertexId> rs(roles.begin(), roles.end());
    if (rs.size() != 6) return std::nullopt;
    for (VertexId z : roles)
      if (usedSet.count(z)) return std::nullopt;
    // exact structure: 8 internal edges, no extras among the six
    int inside = 0;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j)
        if (g.has_edge(roles[i], roles[j])) ++inside;
    if (inside != 8) return std::nullopt;
    for (VertexId z : roles) {
      if (!tri.at(z)) return std::nullopt;
      usedSet.insert(z);
      m.chain.push_back(z);
    }
    m.length += 1;
    VertexId nxt = third(r5, r3, r4);
    if (nxt < 0) return std::nullopt;
    if (!tri.at(nxt)) {
      m.far_end = nxt;
      return m;
    }
    prev = r5;
    c0 = nxt;
  }
}

}  // namespace bd_detail

// ---------------------------------------------------------------------------
// Contraction: replace every recognized expanded edge by a single colored
// edge; contractions that would create parallel edges or loops are reversed
// and their chains pass through untouched.

struct ContractResult {
  LabeledGraph graph;
  std::map<EdgeKey, std::int64_t> coloring;  // recovered colors
};

inline ContractResult contract_db(const LabeledGraph& gp) {
  auto tri = classify_triangle_vertices(gp);
  struct Cand {
    VertexId u, v;
    std::vector<VertexId> chain;
    std::int64_t length;
  };
  std::vector<Cand> cands;
  std::set<VertexId> consumed;
  for (VertexId u : gp.vertices()) {
    if (tri.at(u)) continue;
    for (VertexId w : gp.neighbors(u)) {
      if (!tri.at(w) || consumed.count(w)) continue;
      auto m = bd_detail::match_chain(gp, tri, u, w);
      if (!m) continue;
      if (m->far_end == u && m->chain.front() == w) {
        // seen from the other side too; dedupe by the smaller entry
      }
      bool clash = false;
      for (VertexId z : m->chain)
        if (consumed.count(z)) clash = true;
      if (clash) continue;
      // record once per chain: orient from the smaller endpoint, tie-break
      // on the entry vertex
      VertexId a = u, b = m->far_end;
      if (a > b || (a == b && m->chain.front() > m->chain.back())) continue;
      for (VertexId z : m->chain) consumed.insert(z);
      cands.push_back(Cand{a, b, m->chain, m->length});
    }
  }

  // reversal pass: contractions creating loops or parallel edges are undone
  std::map<EdgeKey, int> mult;
  for (const auto& c : cands) mult[edge_key(c.u, c.v)] += 1;
  for (const auto& [e, info] : gp.edges()) {
    (void)info;
    bool internal = false;
    // an original-original edge contributes to multiplicity checks
    if (!tri.at(e.first) && !tri.at(e.second)) mult[e] += 1;
    (void)internal;
  }

  ContractResult out;
  std::set<VertexId> contracted;
  std::vector<const Cand*> keep;
  for (const auto& c : cands) {
    EdgeKey e = edge_key(c.u, c.v);
    if (c.u == c.v || mult[e] > 1) continue;  // reversed
    keep.push_back(&c);
    for (VertexId z : c.chain) contracted.insert(z);
  }

  for (VertexId v : gp.vertices())
    if (!contracted.count(v)) {
      out.graph.add_vertex(v);
      int l = gp.node_label(v);
      if (l != kNoLabel) out.graph.set_node_label(v, l);
    }
  for (const auto& [e, info] : gp.edges()) {
    (void)info;
    if (contracted.count(e.first) || contracted.count(e.second)) continue;
    out.graph.add_edge(e.first, e.second);
  }
  for (const Cand* c : keep) {
    out.graph.add_edge(c->u, c->v);
    out.graph.set_edge_label(c->u, c->v, static_cast<int>(c->length));
    out.coloring[edge_key(c->u, c->v)] = c->length;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived constants. A ball of radius r in a 3-regular graph has at most
// 3*2^r - 2 vertices and 9*2^(r-1) - 3 edges; k exceeds the edge bound and
// zeta exceeds the vertex bound at radius r_d.

struct DConstants {
  int r_b = 1;
  std::int64_t k = 0;
  std::int64_t r_d = 0;
  bool zeta_exact = false;  // whether zeta fits in 64 bits
  std::int64_t zeta = -1;

  static std::int64_t ball_vertex_bound(std::int64_t r) {
    if (r <= 0) return 1;
    if (r >= 62) return -1;  // beyond 64-bit range
    return 3 * (std::int64_t(1) << r) - 2;
  }
  static std::int64_t ball_edge_bound(std::int64_t r) {
    if (r <= 0) return 0;
    if (r >= 62) return -1;
    return 9 * (std::int64_t(1) << (r - 1)) - 3;
  }

  static DConstants from_rb(int r_b) {
    if (r_b < 1) throw std::invalid_argument("DConstants: r_b must be >= 1");
    DConstants dc;
    dc.r_b = r_b;
    dc.k = ball_edge_bound(r_b) + 1;
    dc.r_d = (4 * dc.k + 1) * r_b + 1;
    if (dc.r_d < 62) {
      dc.zeta_exact = true;
      dc.zeta = ball_vertex_bound(dc.r_d) + 1;
    }
    return dc;
  }
};

// ---------------------------------------------------------------------------
// Output labels for the PN-checkable problem: (coloring component, payload
// component) pairs, interned into small ids so they fit view node labels.

struct DLabelTable {
  int pack(std::int64_t chi, int b) {
    auto [it, inserted] =
        to_id.try_emplace({chi, b}, static_cast<int>(from_id.size()));
    if (inserted) from_id.push_back({chi, b});
    return it->second;
  }
  std::pair<std::int64_t, int> unpack(int id) const { return from_id.at(id); }
  std::int64_t chi_of(int id) const { return from_id.at(id).first; }
  int payload_of(int id) const { return from_id.at(id).second; }

  std::map<std::pair<std::int64_t, int>, int> to_id;
  std::vector<std::pair<std::int64_t, int>> from_id;
};

// ---------------------------------------------------------------------------
// Non-triangle restricted views. Triangle membership of a view node is
// read off the coloring component: under a locally injective coloring, two
// children c1, c2 of a node are adjacent in the graph exactly when c1 has a
// child colored like c2 (and likewise against the parent), which needs two
// levels of margin below the node.

struct NtView {
  RootedView view;
  std::vector<char> non_triangle;   // per pool node of `view`
  std::vector<std::int64_t> chi;    // coloring component per pool node
  std::vector<int> payload;         // payload component per pool node
};

namespace bd_detail {

struct NtBuilder {
  const RootedView& in;
  std::function<std::int64_t(int)> chi_of;
  std::function<int(int)> payload_of;
  int r_b;
  int radius;
  NtView out;
  // (node, parent color, cnt, depth) -> out id or -2 when the branch dies
  std::map<std::tuple<int, std::int64_t, int, int>, int> memo;

  // triangle status: needs children and grandchildren, i.e. depth + 2 <=
  // radius; parent_chi < 0 for the root
  std::optional<bool> classify(int n, std::int64_t parent_chi, int depth) {
    if (depth + 2 > radius) return std::nullopt;
    const auto& nd = in.node(n);
    for (std::size_t i = 0; i < nd.children.size(); ++i)
      for (std::size_t j = 0; j < nd.children.size(); ++j) {
        if (i == j) continue;
        int c1 = nd.children[i], c2 = nd.children[j];
        for (int gc : in.node(c1).children)
          if (chi_of(in.node(gc).node_label) == chi_of(in.node(c2).node_label))
            return true;
      }
    if (parent_chi >= 0)
      for (int c : nd.children)
        for (int gc : in.node(c).children)
          if (chi_of(in.node(gc).node_label) == parent_chi) return true;
    return false;
  }

  // returns the output node id, or -2 when the branch dies
  int build(int n, std::int64_t parent_chi, int cnt, int depth) {
    auto key = std::make_tuple(n, parent_chi, cnt, depth);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int result = -2;
    auto cls = classify(n, parent_chi, depth);
    if (!cls.has_value()) {
      // unclassifiable frontier: cannot complete a path here
      memo[key] = -2;
      return -2;
    }
    bool nt = !*cls;
    int ncnt = cnt + (nt ? 1 : 0);
    std::int64_t myChi = chi_of(in.node(n).node_label);
    if (nt && ncnt == r_b) {
      result = out.view.add_node(in.node(n).node_label, in.node(n).edge_label, {});
      out.non_triangle.push_back(1);
      out.chi.push_back(myChi);
      out.payload.push_back(payload_of(in.node(n).node_label));
    } else {
      std::vector<int> kept;
      for (int c : in.node(n).children) {
        int k = build(c, myChi, ncnt, depth + 1);
        if (k >= 0) kept.push_back(k);
      }
      if (!kept.empty()) {
        result = out.view.add_node(in.node(n).node_label, in.node(n).edge_label,
                                   std::move(kept));
        out.non_triangle.push_back(nt ? 1 : 0);
        out.chi.push_back(myChi);
        out.payload.push_back(payload_of(in.node(n).node_label));
      }
    }
    memo[key] = result;
    return result;
  }
};

}  // namespace bd_detail

// Builds the non-triangle restricted view: the maximal subtree in which
// every root-to-leaf path passes exactly r_b non-triangle vertices past the
// root and stops at the r_b-th. Returns nothing when the root is a triangle
// vertex or no path completes. Throws when the view cannot even classify
// its root (radius < 2).
inline std::optional<NtView> nt_restricted_view(
    const RootedView& t, int r_b, std::function<std::int64_t(int)> chi_of,
    std::function<int(int)> payload_of = [](int) { return 0; }) {
  if (r_b < 1) throw std::invalid_argument("nt_restricted_view: r_b >= 1");
  if (t.radius() < 2)
    throw std::invalid_argument(
        "nt_restricted_view: radius too small to classify the root");
  bd_detail::NtBuilder b{t, chi_of, payload_of, r_b, t.radius(), {}, {}};
  auto rootCls = b.classify(t.root(), -1, 0);
  if (!rootCls.has_value())
    throw std::invalid_argument("nt_restricted_view: unclassifiable root");
  if (*rootCls) return std::nullopt;  // triangle root

  std::int64_t rootChi = b.chi_of(t.node(t.root()).node_label);
  std::vector<int> kept;
  for (int c : t.node(t.root()).children) {
    int k = b.build(c, rootChi, 0, 1);
    if (k >= 0) kept.push_back(k);
  }
  if (kept.empty()) return std::nullopt;
  int root = b.out.view.add_node(t.node(t.root()).node_label, kNoLabel,
                                 std::move(kept));
  b.out.non_triangle.push_back(1);
  b.out.chi.push_back(rootChi);
  b.out.payload.push_back(b.payload_of(t.node(t.root()).node_label));
  b.out.view.set_root(root, t.radius());
  return std::move(b.out);
}

// ---------------------------------------------------------------------------
// First reconstruction: quotient of the restricted view by the coloring
// component. One vertex per occupied color, one edge per projected view
// edge; a collapsed view edge between equal colors is recorded as a loop.

struct R1Result {
  LabeledGraph graph;           // simple; meaningless when has_loop
  VertexId center = -1;
  bool has_loop = false;
  std::map<std::int64_t, VertexId> class_of_color;
};

inline R1Result reconstruct_r1(const NtView& tv) {
  R1Result r;
  std::set<std::int64_t> colors;
  for (std::size_t i = 0; i < tv.view.pool_size(); ++i) colors.insert(tv.chi[i]);
  VertexId next = 0;
  for (std::int64_t c : colors) r.class_of_color[c] = next++;
  for (const auto& [c, id] : r.class_of_color) {
    (void)c;
    r.graph.add_vertex(id);
  }
  std::set<EdgeKey> added;
  for (std::size_t i = 0; i < tv.view.pool_size(); ++i) {
    for (int ch : tv.view.node(static_cast<int>(i)).children) {
      VertexId a = r.class_of_color.at(tv.chi[i]);
      VertexId b = r.class_of_color.at(tv.chi[ch]);
      if (a == b) {
        r.has_loop = true;
        continue;
      }
      if (added.insert(edge_key(a, b)).second) r.graph.add_edge(a, b);
    }
  }
  r.center = r.class_of_color.at(tv.chi[tv.view.root()]);
  return r;
}

// ---------------------------------------------------------------------------
// Membership in the set of gballs of correctly gadgeted graphs, decided
// structurally: non-triangle center, no bare original-original edges, every
// triangle component an exact gadget chain between two distinct originals,
// chain lengths pairwise distinct, interior originals of full degree, and
// everything within the gdist budget.

inline bool is_correctly_gadgeted_ball(const CenteredGraph& h) {
  const LabeledGraph& g = h.graph;
  if (!g.has_vertex(h.center)) return false;
  if (!g.is_simple()) return false;
  int r = h.radius;
  if (r < 1) return false;

  auto tri = classify_triangle_vertices(g);
  if (tri.at(h.center)) return false;

  for (const auto& [e, info] : g.edges()) {
    (void)info;
    if (!tri.at(e.first) && !tri.at(e.second)) return false;
  }
  for (VertexId v : g.vertices())
    if (g.degree(v) > 3) return false;

  // every triangle vertex must belong to exactly one recognized chain
  std::set<VertexId> covered;
  std::vector<std::pair<EdgeKey, std::int64_t>> chains;
  std::map<EdgeKey, int> pairCount;
  for (VertexId u : g.vertices()) {
    if (tri.at(u)) continue;
    for (VertexId w : g.neighbors(u)) {
      if (!tri.at(w)) return false;  // bare edge, already rejected above
      if (covered.count(w)) continue;
      auto m = bd_detail::match_chain(g, tri, u, w);
      if (!m) return false;
      if (m->far_end == u && m->chain.front() > m->chain.back())
        continue;  // loop chain would be walked twice; dedupe
      if (tri.at(m->far_end)) return false;
      if (m->far_end == u) return false;  // loop: simple sources have none
      for (VertexId z : m->chain) {
        if (covered.count(z)) return false;
        covered.insert(z);
      }
      EdgeKey e = edge_key(u, m->far_end);
      pairCount[e] += 1;
      if (pairCount[e] > 1) return false;  // parallel chains
      chains.push_back({e, m->length});
    }
  }
  for (VertexId v : g.vertices())
    if (tri.at(v) && !covered.count(v)) return false;

  // pairwise distinct lengths within the ball
  std::set<std::int64_t> lengths;
  for (const auto& [e, len] : chains) {
    (void)e;
    if (!lengths.insert(len).second) return false;
  }

  // gdist budget with the implied weights
  LabeledGraph weighted = g;
  for (const auto& [e, info] : g.edges()) {
    (void)info;
    bool touches = !tri.at(e.first) || !tri.at(e.second);
    weighted.set_edge_weight_halves(e.first, e.second, touches ? 1 : 0);
  }
  auto gd = gdist_halves_from(weighted, h.center);
  for (VertexId v : g.vertices()) {
    auto it = gd.find(v);
    if (it == gd.end() || it->second > 2LL * r) return false;
  }
  for (const auto& [e, info] : g.edges()) {
    (void)info;
    std::int64_t reach = std::min(gd.at(e.first), gd.at(e.second)) +
                         weighted.edge_weight_halves(e.first, e.second);
    if (reach > 2LL * r) return false;
  }
  // interior originals are complete
  for (VertexId v : g.vertices())
    if (!tri.at(v) && gd.at(v) < 2LL * r && g.degree(v) != 3) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Second reconstruction: contract the restricted view onto its non-triangle
// classes. An edge joins two classes when a view node of one has a nearest
// non-triangle ancestor of the other with only triangle vertices between;
// payload labels must agree within each class.

struct R2Result {
  bool valid = false;  // payload classes consistent
  CenteredGraph ball;
  Labeling out;
};

inline R2Result reconstruct_r2(const NtView& tv, int r_b) {
  R2Result r;
  const RootedView& v = tv.view;
  // classes over non-triangle nodes
  std::map<std::int64_t, VertexId> cls;
  std::map<std::int64_t, int> payload;
  for (std::size_t i = 0; i < v.pool_size(); ++i) {
    if (!tv.non_triangle[i]) continue;
    auto [it, inserted] =
        cls.try_emplace(tv.chi[i], static_cast<VertexId>(cls.size()));
    (void)it;
    auto [pit, pinserted] = payload.try_emplace(tv.chi[i], tv.payload[i]);
    if (!pinserted && pit->second != tv.payload[i]) return r;  // inconsistent
    (void)inserted;
  }

  // nearest non-triangle ancestor classes, propagated down the DAG. The
  // pool is built children-first, so parents have larger indices.
  std::vector<std::set<std::int64_t>> anc(v.pool_size());
  std::set<EdgeKey> edges;
  for (std::size_t i = v.pool_size(); i-- > 0;) {
    int n = static_cast<int>(i);
    const auto& nd = v.node(n);
    for (int ch : nd.children) {
      std::set<std::int64_t> down =
          tv.non_triangle[n] ? std::set<std::int64_t>{tv.chi[n]} : anc[n];
      if (tv.non_triangle[ch]) {
        for (std::int64_t a : down)
          if (a != tv.chi[ch])
            edges.insert(edge_key(cls.at(a), cls.at(tv.chi[ch])));
      }
      anc[ch].insert(down.begin(), down.end());
    }
  }

  r.valid = true;
  for (const auto& [c, id] : cls) {
    r.ball.graph.add_vertex(id);
    r.out.node[id] = payload.at(c);
    (void)c;
  }
  for (const EdgeKey& e : edges) r.ball.graph.add_edge(e.first, e.second);
  r.ball.center = cls.at(tv.chi[v.root()]);
  r.ball.radius = r_b;
  return r;
}

// ---------------------------------------------------------------------------
// Reconstructibility of the coloring component on a view: every node's
// closed neighborhood carries distinct colors, and equal-colored nodes have
// equal neighbor color sets. The second condition binds nodes whose full
// neighborhood is visible (they have children); a leaf only contributes its
// parent color, which must appear in the class's full set when one exists.

inline bool is_reconstructible(const RootedView& v,
                               const std::function<std::int64_t(int)>& chi_of) {
  std::vector<std::int64_t> chi(v.pool_size());
  for (std::size_t i = 0; i < v.pool_size(); ++i)
    chi[i] = chi_of(v.node(static_cast<int>(i)).node_label);

  using Small = std::vector<std::int64_t>;  // sorted neighbor color lists
  auto neighbor_colors = [&](int n, std::int64_t parent) {
    Small s;
    if (parent >= 0) s.push_back(parent);
    for (int c : v.node(n).children) s.push_back(chi[c]);
    std::sort(s.begin(), s.end());
    return s;
  };
  auto distinct_with_self = [&](const Small& s, std::int64_t self) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == self) return false;
      if (i + 1 < s.size() && s[i] == s[i + 1]) return false;
    }
    return true;
  };

  std::unordered_map<std::int64_t, Small> full;      // class -> full set
  std::unordered_map<std::int64_t, Small> partial;   // class -> leaf parents
  auto visit = [&](int n, std::int64_t parent) -> bool {
    Small s = neighbor_colors(n, parent);
    if (!distinct_with_self(s, chi[n])) return false;
    if (v.node(n).children.empty() && parent >= 0) {
      partial[chi[n]].push_back(parent);
      return true;
    }
    auto [it, inserted] = full.try_emplace(chi[n], s);
    if (!inserted && it->second != s) return false;
    return true;
  };
  if (!visit(v.root(), -1)) return false;
  for (std::size_t i = 0; i < v.pool_size(); ++i) {
    const auto& nd = v.node(static_cast<int>(i));
    for (int ch : nd.children)
      if (!visit(ch, chi[i])) return false;
  }
  // a leaf's lone parent color must show up in its class's full set
  for (const auto& [c, ps] : partial) {
    auto it = full.find(c);
    if (it == full.end()) continue;
    for (std::int64_t p : ps)
      if (!std::binary_search(it->second.begin(), it->second.end(), p))
        return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The PN-checkable problem: a radius-r_d view with paired output labels is
// accepted when the coloring component is reconstructible and either the
// restricted view reconstructs a genuine gball whose contraction satisfies
// the source constraint, or no such reconstruction exists at all.

inline bool problem_d_membership(const DConstants& dc, const LCLProblem& B,
                                 const DLabelTable& table,
                                 const RootedView& view) {
  auto chi_of = [&table](int label) { return table.chi_of(label); };
  auto payload_of = [&table](int label) { return table.payload_of(label); };

  if (!is_reconstructible(view, chi_of)) return false;

  std::optional<NtView> tv = nt_restricted_view(view, dc.r_b, chi_of, payload_of);
  if (!tv.has_value()) return true;  // second rule

  R1Result r1 = reconstruct_r1(*tv);
  if (r1.has_loop) return true;  // quotient is not even a simple graph
  if (!is_correctly_gadgeted_ball(
          CenteredGraph{r1.graph, r1.center, dc.r_b}))
    return true;  // second rule

  R2Result r2 = reconstruct_r2(*tv, dc.r_b);
  if (!r2.valid) return false;
  return B.constraint(LabeledBall{r2.ball, r2.out});
}

// The compiled problem; `B` must be the radius-r_b source problem whose
// constraint the reconstruction is checked against.
inline PNProblem make_problem_d(const LCLProblem& B, const DConstants& dc,
                                std::shared_ptr<DLabelTable> table) {
  if (B.radius != dc.r_b)
    throw std::invalid_argument("make_problem_d: radius mismatch");
  PNProblem D;
  D.radius = static_cast<int>(dc.r_d);
  D.name = B.name + "-pn";
  D.open_alphabet = true;  // [zeta] x the source alphabet, never materialized
  D.constraint = [B, dc, table](const RootedView& v) {
    return problem_d_membership(dc, B, *table, v);
  };
  return D;
}

// ---------------------------------------------------------------------------
// Lifts between the source problem and the gadgeted instance.

// chi must be a distance-2*r_d vertex coloring of the gadgeted graph.
inline void validate_distance_coloring(
    const LabeledGraph& g, const std::map<VertexId, std::int64_t>& chi,
    std::int64_t distance) {
  for (VertexId v : g.vertices())
    if (!chi.count(v))
      throw std::invalid_argument("coloring: vertex " + std::to_string(v) +
                                  " uncolored");
  for (VertexId v : g.vertices()) {
    auto d = bfs_distances(g, v);
    for (const auto& [u, du] : d)
      if (u > v && du <= distance && chi.at(u) == chi.at(v))
        throw std::invalid_argument("coloring: vertices " + std::to_string(v) +
                                    " and " + std::to_string(u) +
                                    " share a color within distance " +
                                    std::to_string(distance));
  }
}

// sigma_D = (chi, payload): originals carry their source output, gadget
// vertices the default.
inline Labeling lift_b_to_d(const Labeling& b_out,
                            const std::map<VertexId, std::int64_t>& chi,
                            const GadgetedGraph& gg, const DConstants& dc,
                            DLabelTable& table, int bot_payload) {
  validate_distance_coloring(gg.graph, chi, 2 * dc.r_d);
  Labeling d;
  for (VertexId v : gg.graph.vertices()) {
    int payload = bot_payload;
    if (gg.vclass.at(v) == VClass::Original) payload = b_out.node.at(v);
    d.node[v] = table.pack(chi.at(v), payload);
  }
  return d;
}

// reads the payload component at each original vertex
inline Labeling lift_d_to_b(const Labeling& d_out, const GadgetedGraph& gg,
                            const DLabelTable& table) {
  Labeling b;
  for (const auto& [v, c] : gg.vclass)
    if (c == VClass::Original)
      b.node[v] = table.payload_of(d_out.node.at(v));
  return b;
}

// ---------------------------------------------------------------------------
// Brute-force harness for the coloring statement: enumerate all labelings
// that are distance-2 colorings and edge-consistent in every r-gball, and
// look for one where some original's r-gball repeats a color. Colorings are
// enumerated as canonical partitions (classes ordered by first occurrence).

enum class TheoremStatus { ExhaustedOk, Counterexample, BudgetExceeded };

struct TheoremCheck {
  TheoremStatus status = TheoremStatus::ExhaustedOk;
  std::map<VertexId, std::int64_t> chi;  // the counterexample, when found
  std::int64_t colorings_checked = 0;
  std::int64_t nodes_visited = 0;
};

inline TheoremCheck check_coloring_theorem(const GadgetedGraph& gg, int r,
                                           std::int64_t max_nodes = 50'000'000,
                                           std::size_t max_vertices = 48) {
  const LabeledGraph& g = gg.graph;
  TheoremCheck out;
  if (g.num_vertices() > max_vertices) {
    out.status = TheoremStatus::BudgetExceeded;
    return out;
  }

  std::vector<VertexId> order;
  {
    // BFS order from the smallest vertex so neighborhoods complete early
    std::set<VertexId> seen;
    for (VertexId s : g.vertices()) {
      if (seen.count(s)) continue;
      std::queue<VertexId> q;
      q.push(s);
      seen.insert(s);
      while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        order.push_back(v);
        for (VertexId w : g.neighbors(v))
          if (seen.insert(w).second) q.push(w);
      }
    }
  }
  std::map<VertexId, int> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);

  // pairwise distances (graph metric) and gdist-halves for the gball scopes
  std::map<VertexId, std::map<VertexId, int>> dist2;
  for (VertexId v : g.vertices()) dist2[v] = bfs_distances(g, v);
  std::map<VertexId, std::map<VertexId, std::int64_t>> gd;
  for (VertexId v : g.vertices()) gd[v] = gdist_halves_from(g, v);
  auto in_gball = [&](VertexId center, VertexId v) {
    auto it = gd.at(center).find(v);
    return it != gd.at(center).end() && it->second <= 2LL * r;
  };

  std::vector<VertexId> originals;
  for (const auto& [v, c] : gg.vclass)
    if (c == VClass::Original) originals.push_back(v);

  std::vector<int> color(order.size(), -1);
  int numClasses = 0;

  auto class_neighbor_sets_consistent = [&]() {
    // full hypothesis-2 check on a complete labeling, per the gball scope
    for (VertexId v : g.vertices())
      for (VertexId vp : g.vertices()) {
        if (v == vp || color[pos[v]] != color[pos[vp]]) continue;
        if (!in_gball(v, vp)) continue;
        for (VertexId u : g.neighbors(v)) {
          bool matched = false;
          for (VertexId up : g.neighbors(vp))
            if (color[pos[up]] == color[pos[u]]) matched = true;
          if (!matched) return false;
        }
      }
    return true;
  };

  auto conclusion_violated = [&]() -> bool {
    for (VertexId o : originals) {
      std::map<int, int> seen;
      for (VertexId v : g.vertices())
        if (in_gball(o, v) && ++seen[color[pos[v]]] > 1) return true;
    }
    return false;
  };

  // Feasibility of hypothesis 2 for a same-class pair (x,y) under a partial
  // assignment: the assigned neighbor colors of either side must still be
  // coverable by the other side's unassigned neighbor slots.
  auto pair_feasible = [&](VertexId x, VertexId y) {
    std::set<int> sx, sy;
    int ux = 0, uy = 0;
    for (VertexId w : g.neighbors(x)) {
      int c = color[pos.at(w)];
      if (c < 0)
        ++ux;
      else
        sx.insert(c);
    }
    for (VertexId w : g.neighbors(y)) {
      int c = color[pos.at(w)];
      if (c < 0)
        ++uy;
      else
        sy.insert(c);
    }
    int missing_in_y = 0, missing_in_x = 0;
    for (int c : sx)
      if (!sy.count(c)) ++missing_in_y;
    for (int c : sy)
      if (!sx.count(c)) ++missing_in_x;
    return missing_in_y <= uy && missing_in_x <= ux;
  };

  bool exceeded = false;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (++out.nodes_visited > max_nodes) {
      exceeded = true;
      return true;
    }
    if (i == order.size()) {
      if (!class_neighbor_sets_consistent()) return false;
      ++out.colorings_checked;
      if (conclusion_violated()) {
        for (std::size_t j = 0; j < order.size(); ++j)
          out.chi[order[j]] = color[j];
        return true;
      }
      return false;
    }
    VertexId v = order[i];
    int limit = std::min<int>(numClasses + 1, static_cast<int>(order.size()));
    for (int c = 0; c < limit; ++c) {
      // distance-2 pruning
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (color[j] == c && dist2.at(order[j]).count(v) &&
            dist2.at(order[j]).at(v) <= 2)
          ok = false;
      if (!ok) continue;

      color[i] = c;
      // assigning v changes the neighbor sets of N[v]: recheck every
      // in-scope same-class pair one of those vertices participates in
      bool consistent = true;
      std::vector<VertexId> touched{v};
      for (VertexId w : g.neighbors(v)) touched.push_back(w);
      for (VertexId x : touched) {
        if (!consistent) break;
        if (color[pos.at(x)] < 0) continue;
        for (std::size_t j = 0; j <= i && consistent; ++j) {
          VertexId y = order[j];
          if (y == x || color[j] != color[pos.at(x)]) continue;
          if (!in_gball(x, y)) continue;
          if (!pair_feasible(x, y)) consistent = false;
        }
      }
      if (consistent) {
        int prevClasses = numClasses;
        if (c == numClasses) ++numClasses;
        if (rec(i + 1)) return true;
        numClasses = prevClasses;
      }
      color[i] = -1;
    }
    return false;
  };

  bool found = rec(0);
  if (exceeded) {
    out.status = TheoremStatus::BudgetExceeded;
  } else if (found) {
    out.status = TheoremStatus::Counterexample;
  } else {
    out.status = TheoremStatus::ExhaustedOk;
  }
  return out;
}

}  // namespace lclre
