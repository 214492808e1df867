//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lclre/graph.hpp"

namespace lclre {

// Rooted labeled tree stored as a node pool. Children may be shared between
// parents: a node pool entry stands for a subtree, and the logical tree is
// the unfolding from the root. PN-views of radius r in a finite graph have
// exponentially many walks but only O(r * |E|) distinct subtrees, so
// pn_view builds them in this shared form and all operations below are
// dynamic programs over the pool.
class RootedView {
 public:
  struct Node {
    int node_label = kNoLabel;
    int edge_label = kNoLabel;  // label of the edge to the parent
    std::vector<int> children;
  };

  int add_node(int node_label, int edge_label, std::vector<int> children) {
    for (int c : children)
      if (c < 0 || c >= static_cast<int>(nodes_.size()))
        throw std::invalid_argument("RootedView: bad child index");
    nodes_.push_back(Node{node_label, edge_label, std::move(children)});
    return static_cast<int>(nodes_.size()) - 1;
  }

  void set_root(int root, int radius) {
    if (root < 0 || root >= static_cast<int>(nodes_.size()))
      throw std::invalid_argument("RootedView: bad root");
    if (radius < 0) throw std::invalid_argument("RootedView: negative radius");
    root_ = root;
    radius_ = radius;
  }

  int root() const { return root_; }
  int radius() const { return radius_; }
  const Node& node(int i) const { return nodes_.at(i); }
  std::size_t pool_size() const { return nodes_.size(); }
  int root_label() const { return nodes_.at(root_).node_label; }

  static RootedView single(int label) {
    RootedView v;
    int r = v.add_node(label, kNoLabel, {});
    v.set_root(r, 0);
    return v;
  }

  // Number of nodes of the logical (unfolded) tree, saturating at cap.
  std::int64_t logical_size(std::int64_t cap = 1'000'000'000) const {
    std::vector<std::int64_t> memo(nodes_.size(), -1);
    return logical_size_rec(root_, memo, cap);
  }

 private:
  std::int64_t logical_size_rec(int n, std::vector<std::int64_t>& memo,
                                std::int64_t cap) const {
    if (memo[n] >= 0) return memo[n];
    std::int64_t s = 1;
    for (int c : nodes_[n].children) {
      s += logical_size_rec(c, memo, cap);
      if (s >= cap) {
        s = cap;
        break;
      }
    }
    return memo[n] = s;
  }

  std::vector<Node> nodes_;
  int root_ = -1;
  int radius_ = 0;
};

// PN-view of radius r: the tree of non-backtracking walks from v, with node
// and edge labels inherited from the walk endpoints. Subtrees are shared by
// (remaining depth, endpoint, predecessor) state.
inline RootedView pn_view(const LabeledGraph& g, VertexId v, int r) {
  if (!g.has_vertex(v)) throw std::invalid_argument("pn_view: unknown vertex");
  if (r < 0) throw std::invalid_argument("pn_view: negative radius");
  if (!g.is_simple())
    throw std::invalid_argument("pn_view: defined on simple graphs");

  RootedView view;
  // state (u, p): walk arrived at u, coming from p; indexed densely as
  // (vertex position, neighbor position of p). Layer d holds the states
  // with d remaining levels below them; layers 0 .. r-1 exist.
  std::vector<VertexId> vs = g.vertices();
  std::map<VertexId, int> pos;
  for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = static_cast<int>(i);
  std::vector<int> offset(vs.size() + 1, 0);
  for (std::size_t i = 0; i < vs.size(); ++i)
    offset[i + 1] = offset[i] + static_cast<int>(g.neighbors(vs[i]).size());
  int nstates = offset[vs.size()];
  // back[state of (u, j-th neighbor w)] = position of u among w's neighbors
  std::vector<int> back(nstates);
  std::vector<int> labels(vs.size()), elabels(nstates);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    labels[i] = g.node_label(vs[i]);
    const auto& nb = g.neighbors(vs[i]);
    for (std::size_t j = 0; j < nb.size(); ++j) {
      elabels[offset[i] + static_cast<int>(j)] = g.edge_label(vs[i], nb[j]);
      const auto& nbw = g.neighbors(nb[j]);
      back[offset[i] + static_cast<int>(j)] = static_cast<int>(
          std::lower_bound(nbw.begin(), nbw.end(), vs[i]) - nbw.begin());
    }
  }
  // state id for "arrived at u coming from its j-th neighbor" is
  // offset[pos(u)] + j; below, `prev[s]` is its pool node one layer down
  std::vector<int> prev(nstates, -1), cur(nstates, -1);
  for (int d = 0; d < r; ++d) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto& nb = g.neighbors(vs[i]);
      for (std::size_t j = 0; j < nb.size(); ++j) {
        int s = offset[i] + static_cast<int>(j);
        std::vector<int> ch;
        if (d > 0) {
          for (std::size_t m = 0; m < nb.size(); ++m) {
            if (m == j) continue;
            int wpos = pos.at(nb[m]);
            ch.push_back(prev[offset[wpos] + back[offset[i] + static_cast<int>(m)]]);
          }
        }
        cur[s] = view.add_node(labels[i], elabels[s], std::move(ch));
      }
    }
    std::swap(prev, cur);
  }
  std::vector<int> rootCh;
  if (r > 0) {
    int i = pos.at(v);
    const auto& nb = g.neighbors(v);
    for (std::size_t m = 0; m < nb.size(); ++m) {
      int wpos = pos.at(nb[m]);
      rootCh.push_back(prev[offset[wpos] + back[offset[i] + static_cast<int>(m)]]);
    }
  }
  int root = view.add_node(g.node_label(v), kNoLabel, std::move(rootCh));
  view.set_root(root, r);
  return view;
}

// Canonical forms for rooted labeled trees, interned process-wide so ids
// are comparable across views. A node's canonical id is determined by its
// label and the sorted multiset of (edge label, child canonical id) pairs;
// the root's own edge label does not participate.
class TreeCanon {
 public:
  using Key = std::pair<std::int64_t, std::vector<std::pair<int, std::int64_t>>>;

  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 1469598103934665603ull ^
                        static_cast<std::uint64_t>(k.first) * 1099511628211ull;
      for (const auto& [e, c] : k.second) {
        h = (h ^ static_cast<std::uint64_t>(e + 2)) * 1099511628211ull;
        h = (h ^ static_cast<std::uint64_t>(c)) * 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

  std::int64_t canon(const RootedView& v) {
    std::vector<std::int64_t> memo(v.pool_size(), -1);
    return canon_rec(v, v.root(), memo);
  }

  // Canonical id of the logical tree truncated to depth d below `node`.
  std::int64_t canon_at_depth(const RootedView& v, int node, int d) {
    std::unordered_map<std::int64_t, std::int64_t> memo;
    return canon_depth_rec(v, node, d, memo);
  }

  // Same, with a caller-held memo shared across related queries.
  std::int64_t canon_at_depth_memo(const RootedView& v, int node, int d,
                                   std::unordered_map<std::int64_t, std::int64_t>& memo) {
    return canon_depth_rec(v, node, d, memo);
  }

  std::int64_t intern_key(std::int64_t label,
                          std::vector<std::pair<int, std::int64_t>> children) {
    std::sort(children.begin(), children.end());
    return intern({label, std::move(children)});
  }

  // Human-readable canonical string; only for trees of bounded size.
  std::string canon_string(const RootedView& v,
                           std::int64_t max_nodes = 100000) {
    if (v.logical_size(max_nodes) >= max_nodes)
      throw std::invalid_argument("canon_string: tree too large");
    return string_rec(v, v.root());
  }

  static TreeCanon& global() {
    static TreeCanon instance;
    return instance;
  }

 private:
  std::int64_t intern(Key key) {
    auto [it, _] = table_.try_emplace(std::move(key),
                                      static_cast<std::int64_t>(table_.size()));
    return it->second;
  }

  std::int64_t canon_rec(const RootedView& v, int n,
                         std::vector<std::int64_t>& memo) {
    if (memo[n] >= 0) return memo[n];
    std::vector<std::pair<int, std::int64_t>> ch;
    for (int c : v.node(n).children)
      ch.emplace_back(v.node(c).edge_label, canon_rec(v, c, memo));
    std::sort(ch.begin(), ch.end());
    return memo[n] = intern({v.node(n).node_label, std::move(ch)});
  }

  std::int64_t canon_depth_rec(const RootedView& v, int n, int d,
                               std::unordered_map<std::int64_t, std::int64_t>& memo) {
    std::int64_t key = static_cast<std::int64_t>(n) * 100000 + d;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<std::pair<int, std::int64_t>> ch;
    if (d > 0)
      for (int c : v.node(n).children)
        ch.emplace_back(v.node(c).edge_label, canon_depth_rec(v, c, d - 1, memo));
    std::sort(ch.begin(), ch.end());
    std::int64_t id = intern({v.node(n).node_label, std::move(ch)});
    memo[key] = id;
    return id;
  }

  std::string string_rec(const RootedView& v, int n) {
    std::vector<std::string> parts;
    for (int c : v.node(n).children)
      parts.push_back(std::to_string(v.node(c).edge_label) + ":" +
                      string_rec(v, c));
    std::sort(parts.begin(), parts.end());
    std::string s = "(" + std::to_string(v.node(n).node_label);
    for (const auto& p : parts) s += " " + p;
    s += ")";
    return s;
  }

  std::unordered_map<Key, std::int64_t, KeyHash> table_;
};

// Label-preserving rooted tree isomorphism via canonical forms.
inline bool rooted_tree_iso(const RootedView& a, const RootedView& b) {
  TreeCanon& tc = TreeCanon::global();
  return tc.canon(a) == tc.canon(b);
}

// Copy of the logical tree below `node`, truncated to depth `depth`, as a
// fresh view with the given radius. Shared subtrees stay shared.
inline RootedView truncate_view(const RootedView& v, int node, int depth) {
  if (depth < 0) throw std::invalid_argument("truncate: negative depth");
  RootedView out;
  std::unordered_map<std::int64_t, int> memo;
  auto rec = [&](auto&& self, int n, int d) -> int {
    std::int64_t key = static_cast<std::int64_t>(n) * 100000 + d;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<int> ch;
    if (d > 0)
      for (int c : v.node(n).children) ch.push_back(self(self, c, d - 1));
    int id = out.add_node(v.node(n).node_label, v.node(n).edge_label,
                          std::move(ch));
    memo[key] = id;
    return id;
  };
  int root = rec(rec, node, depth);
  out.set_root(root, depth);
  return out;
}

}  // namespace lclre
