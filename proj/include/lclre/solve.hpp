//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "lclre/problem.hpp"

namespace lclre {

struct SolveOptions {
  std::int64_t max_nodes = 5'000'000;  // search-tree node budget
  int max_solutions = 1;
};

enum class SolveStatus { Found, Unsolvable, BudgetExceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::Unsolvable;
  std::vector<Labeling> solutions;            // LCL / PN
  std::vector<HalfEdgeLabeling> re_solutions; // RE
};

namespace detail {

struct Slot {
  bool is_edge = false;
  VertexId v = -1;
  EdgeKey e{-1, -1};
};

// Exhaustive assignment with pruning: a center's constraint fires as soon
// as the last slot inside its ball is assigned. Deterministic order, so
// repeated runs enumerate solutions identically.
template <typename CheckCenter>
SolveResult backtrack_slots(const std::vector<Slot>& slots,
                            const std::vector<std::vector<int>>& domains,
                            const std::vector<std::vector<int>>& centers_done_at,
                            CheckCenter check_center, const SolveOptions& opt,
                            std::function<Labeling(const std::vector<int>&)> pack) {
  SolveResult result;
  std::vector<int> assign(slots.size(), -1);
  std::int64_t nodes = 0;
  bool exceeded = false;

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (++nodes > opt.max_nodes) {
      exceeded = true;
      return true;  // unwind
    }
    if (i == slots.size()) {
      result.solutions.push_back(pack(assign));
      return static_cast<int>(result.solutions.size()) >= opt.max_solutions;
    }
    for (int val : domains[i]) {
      assign[i] = val;
      bool ok = true;
      for (int c : centers_done_at[i])
        if (!check_center(c, assign)) {
          ok = false;
          break;
        }
      if (ok && rec(i + 1)) return true;
    }
    assign[i] = -1;
    return false;
  };
  rec(0);

  if (exceeded && result.solutions.empty())
    result.status = SolveStatus::BudgetExceeded;
  else if (result.solutions.empty())
    result.status = SolveStatus::Unsolvable;
  else
    result.status = SolveStatus::Found;
  // An exhausted budget with some solutions found still reports Found; the
  // caller can compare solution count against max_solutions.
  if (exceeded && !result.solutions.empty()) result.status = SolveStatus::Found;
  return result;
}

}  // namespace detail

// Exhaustive search for a valid LCL output labeling. Unsolvable is only
// reported when the search space was fully exhausted.
inline SolveResult brute_force_solve(const LCLProblem& p, const LabeledGraph& g,
                                     const SolveOptions& opt = {}) {
  using detail::Slot;
  std::vector<Slot> slots;
  std::vector<std::vector<int>> domains;
  std::map<VertexId, int> node_slot;
  std::map<EdgeKey, int> edge_slot;
  for (VertexId v : g.vertices()) {
    node_slot[v] = static_cast<int>(slots.size());
    slots.push_back(Slot{false, v, {-1, -1}});
    domains.push_back(p.out_alphabet);
  }
  if (!p.edge_out_alphabet.empty()) {
    for (const auto& [e, info] : g.edges()) {
      (void)info;
      edge_slot[e] = static_cast<int>(slots.size());
      slots.push_back(Slot{true, -1, e});
      domains.push_back(p.edge_out_alphabet);
    }
  }

  // Slots inside each center's ball, and the index at which each center's
  // ball becomes fully assigned.
  std::vector<CenteredGraph> balls;
  std::vector<std::vector<int>> centers_done_at(slots.size());
  {
    int ci = 0;
    for (VertexId v : g.vertices()) {
      balls.push_back(ball(g, v, p.radius));
      int last = -1;
      for (VertexId u : balls.back().graph.vertices())
        last = std::max(last, node_slot.at(u));
      if (!p.edge_out_alphabet.empty())
        for (const auto& [e, info] : balls.back().graph.edges()) {
          (void)info;
          last = std::max(last, edge_slot.at(e));
        }
      if (last >= 0) centers_done_at[last].push_back(ci);
      ++ci;
    }
  }

  auto check_center = [&](int c, const std::vector<int>& assign) {
    const CenteredGraph& b = balls[c];
    LabeledBall lb{b, {}};
    for (VertexId u : b.graph.vertices()) lb.out.node[u] = assign[node_slot.at(u)];
    if (!p.edge_out_alphabet.empty())
      for (const auto& [e, info] : b.graph.edges()) {
        (void)info;
        lb.out.edge[e] = assign[edge_slot.at(e)];
      }
    return p.constraint(lb);
  };

  auto pack = [&](const std::vector<int>& assign) {
    Labeling out;
    for (const auto& [v, i] : node_slot) out.node[v] = assign[i];
    for (const auto& [e, i] : edge_slot) out.edge[e] = assign[i];
    return out;
  };

  return detail::backtrack_slots(slots, domains, centers_done_at, check_center,
                                 opt, pack);
}

inline SolveResult brute_force_solve(const PNProblem& p, const LabeledGraph& g,
                                     const SolveOptions& opt = {}) {
  using detail::Slot;
  std::vector<Slot> slots;
  std::vector<std::vector<int>> domains;
  std::map<VertexId, int> node_slot;
  for (VertexId v : g.vertices()) {
    node_slot[v] = static_cast<int>(slots.size());
    slots.push_back(Slot{false, v, {-1, -1}});
    domains.push_back(p.out_alphabet);
  }
  std::vector<std::vector<int>> centers_done_at(slots.size());
  std::vector<VertexId> centers = g.vertices();
  for (std::size_t ci = 0; ci < centers.size(); ++ci) {
    auto b = ball(g, centers[ci], p.radius);
    int last = -1;
    for (VertexId u : b.graph.vertices()) last = std::max(last, node_slot.at(u));
    if (last >= 0) centers_done_at[last].push_back(static_cast<int>(ci));
  }

  auto check_center = [&](int c, const std::vector<int>& assign) {
    LabeledGraph labeled = g;
    for (const auto& [v, i] : node_slot)
      if (assign[i] >= 0) labeled.set_node_label(v, assign[i]);
    RootedView view = pn_view(labeled, centers[c], p.radius);
    return p.constraint(view);
  };

  auto pack = [&](const std::vector<int>& assign) {
    Labeling out;
    for (const auto& [v, i] : node_slot) out.node[v] = assign[i];
    return out;
  };

  return detail::backtrack_slots(slots, domains, centers_done_at, check_center,
                                 opt, pack);
}

// RE search assigns the three half-edge labels of one vertex at a time,
// filtering by the node constraint before descending; edge constraints fire
// once both endpoints are assigned. Requires a materialized alphabet.
inline SolveResult brute_force_solve(const REProblem& p, const LabeledGraph& g,
                                     const SolveOptions& opt = {}) {
  if (p.alphabet.empty())
    throw std::invalid_argument(
        "brute_force_solve(RE): explicit alphabet required");
  if (!g.is_regular(3) || !g.is_simple())
    throw std::invalid_argument("brute_force_solve(RE): need simple 3-regular");

  std::vector<VertexId> vs = g.vertices();
  std::map<VertexId, int> pos;
  for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = static_cast<int>(i);

  // Per-vertex candidate triples that satisfy the node constraint.
  std::vector<std::array<ReLabel, 3>> triples;
  for (ReLabel a : p.alphabet)
    for (ReLabel b : p.alphabet)
      for (ReLabel c : p.alphabet) {
        std::array<ReLabel, 3> t{a, b, c};
        std::array<ReLabel, 3> s = t;
        std::sort(s.begin(), s.end());
        if (p.node_constraint(s)) triples.push_back(t);
      }

  SolveResult result;
  HalfEdgeLabeling hel;
  std::int64_t nodes = 0;
  bool exceeded = false;

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (++nodes > opt.max_nodes) {
      exceeded = true;
      return true;
    }
    if (i == vs.size()) {
      result.re_solutions.push_back(hel);
      return static_cast<int>(result.re_solutions.size()) >= opt.max_solutions;
    }
    VertexId v = vs[i];
    const auto& nb = g.neighbors(v);
    for (const auto& t : triples) {
      bool ok = true;
      for (int j = 0; j < 3 && ok; ++j) {
        EdgeKey e = edge_key(v, nb[j]);
        if (pos.at(nb[j]) < static_cast<int>(i)) {
          std::array<ReLabel, 2> pairLabels{t[j], hel.get(nb[j], e)};
          std::sort(pairLabels.begin(), pairLabels.end());
          if (!p.edge_constraint(pairLabels)) ok = false;
        }
      }
      if (!ok) continue;
      for (int j = 0; j < 3; ++j) hel.set(v, edge_key(v, nb[j]), t[j]);
      if (rec(i + 1)) return true;
      for (int j = 0; j < 3; ++j) hel.at.erase({v, edge_key(v, nb[j])});
    }
    return false;
  };
  rec(0);

  if (exceeded && result.re_solutions.empty())
    result.status = SolveStatus::BudgetExceeded;
  else if (result.re_solutions.empty())
    result.status = SolveStatus::Unsolvable;
  else
    result.status = SolveStatus::Found;
  return result;
}

}  // namespace lclre
