//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "lclre/problem.hpp"
#include "lclre/view.hpp"

namespace lclre {

// Handles to the root's children of a view; these stand for the root's
// neighbors.
inline std::vector<int> root_children(const RootedView& t) {
  return t.node(t.root()).children;
}

// Re-rooting at a child: the subtree hanging below it, depth r-1.
inline RootedView directional_subtree(const RootedView& t, int child) {
  const auto& ch = t.node(t.root()).children;
  if (std::find(ch.begin(), ch.end(), child) == ch.end())
    throw std::invalid_argument("directional_subtree: not a root child");
  return truncate_view(t, child, t.radius() - 1);
}

// Removing the branch of a child and truncating to depth r-1.
inline RootedView pruned_subtree(const RootedView& t, int child) {
  const auto& rootNode = t.node(t.root());
  const auto& ch = rootNode.children;
  if (std::find(ch.begin(), ch.end(), child) == ch.end())
    throw std::invalid_argument("pruned_subtree: not a root child");
  RootedView out;
  int depth = t.radius() - 1;
  std::vector<int> kept;
  if (depth >= 1) {
    std::unordered_map<std::int64_t, int> memo;
    auto rec = [&](auto&& self, int n, int d) -> int {
      std::int64_t key = static_cast<std::int64_t>(n) * 100000 + d;
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      std::vector<int> cs;
      if (d > 0)
        for (int c : t.node(n).children) cs.push_back(self(self, c, d - 1));
      int id = out.add_node(t.node(n).node_label, t.node(n).edge_label,
                            std::move(cs));
      memo[key] = id;
      return id;
    };
    bool dropped = false;
    for (int c : ch) {
      if (c == child && !dropped) {
        dropped = true;  // drop exactly one branch handle
        continue;
      }
      kept.push_back(rec(rec, c, depth - 1));
    }
  }
  int root = out.add_node(rootNode.node_label, kNoLabel, std::move(kept));
  out.set_root(root, depth < 0 ? 0 : depth);
  return out;
}

// Canonical neighbor enumeration: children ordered by the canonical form of
// their directional subtree, ties by the pruned subtree, residual ties by
// child position (any stable rule works for isomorphic branches).
struct PortInfo {
  std::vector<int> order;  // order[port-1] = child handle
  std::vector<std::pair<std::int64_t, std::int64_t>> sig;  // (dir, pruned) per port
};

// Canonical ids of the directional and pruned subtree at every root child,
// computed on the shared pool without materializing the subtrees, plus the
// resulting port order.
inline PortInfo port_info(const RootedView& t) {
  TreeCanon& tc = TreeCanon::global();
  const auto& ch = t.node(t.root()).children;
  int r = t.radius();
  std::unordered_map<std::int64_t, std::int64_t> memo;
  std::vector<std::int64_t> dir(ch.size()), pruDepth(ch.size());
  for (std::size_t i = 0; i < ch.size(); ++i) {
    dir[i] = tc.canon_at_depth_memo(t, ch[i], r - 1, memo);
    if (r - 2 >= 0) pruDepth[i] = tc.canon_at_depth_memo(t, ch[i], r - 2, memo);
  }
  std::int64_t rootLabel = t.node(t.root()).node_label;
  std::vector<std::tuple<std::int64_t, std::int64_t, std::size_t>> keys;
  for (std::size_t i = 0; i < ch.size(); ++i) {
    std::vector<std::pair<int, std::int64_t>> rest;
    if (r - 2 >= 0)
      for (std::size_t j = 0; j < ch.size(); ++j)
        if (j != i)
          rest.push_back({t.node(ch[j]).edge_label, pruDepth[j]});
    std::int64_t pru = tc.intern_key(rootLabel, std::move(rest));
    keys.push_back({dir[i], pru, i});
  }
  std::sort(keys.begin(), keys.end());
  PortInfo out;
  for (const auto& [d, p, i] : keys) {
    out.order.push_back(ch[i]);
    out.sig.push_back({d, p});
  }
  return out;
}

inline std::vector<int> enumerate_ports(const RootedView& t) {
  return port_info(t).order;
}

inline int port_of_neighbor(const RootedView& t, int child) {
  auto order = enumerate_ports(t);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == child) return static_cast<int>(i) + 1;
  throw std::invalid_argument("port_of_neighbor: not a root child");
}

inline int neighbor_by_port(const RootedView& t, int port) {
  auto order = enumerate_ports(t);
  if (port < 1 || port > static_cast<int>(order.size()))
    throw std::invalid_argument("neighbor_by_port: port out of range");
  return order[port - 1];
}

// Compatibility across an edge: the directional subtree on one side must
// match the pruned subtree on the other, both ways.
inline bool i_fit(const RootedView& a, int port_a, const RootedView& b,
                  int port_b) {
  if (port_a < 1 || port_a > 3 || port_b < 1 || port_b > 3) return false;
  auto ca = root_children(a);
  auto cb = root_children(b);
  if (port_a > static_cast<int>(ca.size()) ||
      port_b > static_cast<int>(cb.size()))
    return false;
  int u = neighbor_by_port(a, port_a);
  int ub = neighbor_by_port(b, port_b);
  TreeCanon& tc = TreeCanon::global();
  return tc.canon(directional_subtree(a, u)) ==
             tc.canon(pruned_subtree(b, ub)) &&
         tc.canon(pruned_subtree(a, u)) ==
             tc.canon(directional_subtree(b, ub));
}

// ---------------------------------------------------------------------------
// The compiled half-edge problem. Output labels are (accepted view, port)
// pairs; views live in a registry keyed by canonical form, with membership
// in the source problem memoized there.

struct ReContext {
  std::function<bool(const RootedView&)> d_oracle;
  int radius = 1;
  std::map<std::int64_t, RootedView> views;
  std::map<std::int64_t, bool> certified;
  // per (view, port): canonical ids of the directional and pruned subtrees,
  // so edge checks need no subtree rebuilds
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, std::int64_t>>> sigs;

  std::int64_t register_view(const RootedView& v) {
    if (v.radius() != radius)
      throw std::invalid_argument("ReContext: view radius mismatch");
    std::int64_t id = TreeCanon::global().canon(v);
    if (!views.count(id)) {
      views.emplace(id, v);
      certified[id] = d_oracle(v);
    }
    return id;
  }

  bool known(std::int64_t id) const { return views.count(id) > 0; }

  const std::vector<std::pair<std::int64_t, std::int64_t>>& signatures(
      std::int64_t id) {
    auto it = sigs.find(id);
    if (it != sigs.end()) return it->second;
    return sigs.emplace(id, port_info(views.at(id)).sig).first->second;
  }

  static ReLabel pack(std::int64_t view_id, int port) {
    return view_id * 4 + port;
  }
  static std::int64_t view_of(ReLabel l) { return l / 4; }
  static int port_of(ReLabel l) { return static_cast<int>(l % 4); }
};

// Node constraint: the three half-edges share one certified view and their
// ports are exactly {1,2,3}. Edge constraint: the two sides fit.
inline REProblem problem_e(std::shared_ptr<ReContext> ctx) {
  REProblem p;
  p.name = "compiled-re";
  p.node_constraint = [ctx](const std::array<ReLabel, 3>& m) {
    std::int64_t a = ReContext::view_of(m[0]);
    for (int i = 1; i < 3; ++i)
      if (ReContext::view_of(m[i]) != a) return false;
    std::array<int, 3> ports{ReContext::port_of(m[0]), ReContext::port_of(m[1]),
                             ReContext::port_of(m[2])};
    std::sort(ports.begin(), ports.end());
    if (ports != std::array<int, 3>{1, 2, 3}) return false;
    auto it = ctx->certified.find(a);
    return it != ctx->certified.end() && it->second;
  };
  p.edge_constraint = [ctx](const std::array<ReLabel, 2>& m) {
    std::int64_t a = ReContext::view_of(m[0]);
    std::int64_t b = ReContext::view_of(m[1]);
    if (!ctx->known(a) || !ctx->known(b)) return false;
    int pa = ReContext::port_of(m[0]);
    int pb = ReContext::port_of(m[1]);
    const auto& sa = ctx->signatures(a);
    const auto& sb = ctx->signatures(b);
    if (pa < 1 || pa > static_cast<int>(sa.size()) || pb < 1 ||
        pb > static_cast<int>(sb.size()))
      return false;
    // directional vs pruned, both ways
    return sa[pa - 1].first == sb[pb - 1].second &&
           sa[pa - 1].second == sb[pb - 1].first;
  };
  return p;
}

// ---------------------------------------------------------------------------
// Lifts. The source labeling must be legal (every view certified); each
// half-edge gets the view at its vertex plus the port of the neighbor it
// points at.

inline HalfEdgeLabeling lift_d_to_e(const LabeledGraph& g, const Labeling& d_out,
                                    std::shared_ptr<ReContext> ctx) {
  if (!g.is_regular(3) || !g.is_simple())
    throw std::invalid_argument("lift_d_to_e: need a simple 3-regular graph");
  LabeledGraph labeled = g;
  for (const auto& [v, l] : d_out.node) labeled.set_node_label(v, l);

  HalfEdgeLabeling hel;
  for (VertexId v : g.vertices()) {
    RootedView view = pn_view(labeled, v, ctx->radius);
    std::int64_t id = ctx->register_view(view);
    if (!ctx->certified.at(id))
      throw std::invalid_argument("lift_d_to_e: labeling not legal at vertex " +
                                  std::to_string(v));
    // root children are built in sorted neighbor order
    const auto& nb = g.neighbors(v);
    auto ch = root_children(view);
    auto order = enumerate_ports(view);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      int port = 1;
      while (order[port - 1] != ch[i]) ++port;
      hel.set(v, edge_key(v, nb[i]), ReContext::pack(id, port));
    }
  }
  return hel;
}

// Reads the root label of the view component at each vertex; the labeling
// must pass the compiled verifier first.
inline Labeling lift_e_to_d(const LabeledGraph& g, const HalfEdgeLabeling& hel,
                            std::shared_ptr<ReContext> ctx) {
  auto p = problem_e(ctx);
  auto verdict = verify_re(p, g, hel);
  if (!verdict.ok)
    throw std::invalid_argument("lift_e_to_d: labeling is not legal");
  Labeling out;
  for (VertexId v : g.vertices()) {
    const auto& nb = g.neighbors(v);
    ReLabel l = hel.get(v, edge_key(v, nb[0]));
    out.node[v] = ctx->views.at(ReContext::view_of(l)).root_label();
  }
  return out;
}

// The per-vertex view claimed by a legal half-edge labeling matches the
// real view layer by layer (depths 0..r).
inline bool t_good_layers(const LabeledGraph& g, const HalfEdgeLabeling& hel,
                          const Labeling& d_out, std::shared_ptr<ReContext> ctx) {
  LabeledGraph labeled = g;
  for (const auto& [v, l] : d_out.node) labeled.set_node_label(v, l);
  TreeCanon& tc = TreeCanon::global();
  for (VertexId v : g.vertices()) {
    const auto& nb = g.neighbors(v);
    ReLabel l = hel.get(v, edge_key(v, nb[0]));
    if (l == kNoReLabel) return false;
    const RootedView& claimed = ctx->views.at(ReContext::view_of(l));
    RootedView real = pn_view(labeled, v, ctx->radius);
    for (int k = 0; k <= ctx->radius; ++k)
      if (tc.canon_at_depth(real, real.root(), k) !=
          tc.canon_at_depth(claimed, claimed.root(), k))
        return false;
  }
  return true;
}

}  // namespace lclre
