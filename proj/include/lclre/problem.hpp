//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lclre/graph.hpp"
#include "lclre/iso.hpp"
#include "lclre/view.hpp"

namespace lclre {

// Output labelings; node and edge parts are independent and either may be
// unused by a given problem.
struct Labeling {
  std::map<VertexId, int> node;
  std::map<EdgeKey, int> edge;

  bool operator==(const Labeling&) const = default;
};

enum class FailReason {
  AlphabetViolation,
  ConstraintRejection,
  DegreeViolation,
  NotThreeRegular,
  MissingLabel,
};

inline const char* fail_reason_name(FailReason r) {
  switch (r) {
    case FailReason::AlphabetViolation: return "alphabet-violation";
    case FailReason::ConstraintRejection: return "constraint-rejection";
    case FailReason::DegreeViolation: return "degree-violation";
    case FailReason::NotThreeRegular: return "not-3-regular";
    case FailReason::MissingLabel: return "missing-label";
  }
  return "?";
}

struct Failure {
  bool is_edge = false;
  VertexId vertex = -1;
  EdgeKey edge{-1, -1};
  FailReason reason = FailReason::ConstraintRejection;
};

struct Verdict {
  bool ok = true;
  std::vector<Failure> failures;

  void fail_vertex(VertexId v, FailReason r) {
    ok = false;
    failures.push_back(Failure{false, v, {-1, -1}, r});
  }
  void fail_edge(EdgeKey e, FailReason r) {
    ok = false;
    failures.push_back(Failure{true, -1, e, r});
  }
};

// A radius-r ball whose graph carries the input labels, together with the
// output labeling restricted to it. This is what LCL constraints consume.
struct LabeledBall {
  CenteredGraph ball;
  Labeling out;
};

using LclOracle = std::function<bool(const LabeledBall&)>;

struct LCLProblem {
  int max_degree = 3;
  std::vector<int> in_alphabet;        // may be empty: input-free
  std::vector<int> out_alphabet;       // node outputs
  std::vector<int> edge_out_alphabet;  // empty when the problem has none
  int radius = 1;
  LclOracle constraint;
  std::string name;
};

// Packs (input label, output label) pairs into single labels so the
// single-layer iso kernel can compare input-output-labeled balls.
inline LabeledGraph combine_labels(const LabeledGraph& g, const Labeling& out) {
  constexpr int kShift = 1 << 12;
  LabeledGraph h(g.allow_multi());
  for (VertexId v : g.vertices()) {
    h.add_vertex(v);
    int in = g.node_label(v);
    auto it = out.node.find(v);
    int o = it == out.node.end() ? kNoLabel : it->second;
    h.set_node_label(v, (in + 2) * kShift + (o + 2));
  }
  for (const auto& [k, info] : g.edges()) {
    for (int i = 0; i < info.multiplicity; ++i) h.add_edge(k.first, k.second);
    auto it = out.edge.find(k);
    int o = it == out.edge.end() ? kNoLabel : it->second;
    h.set_edge_label(k.first, k.second, (info.label + 2) * kShift + (o + 2));
    if (info.weight_halves >= 0)
      h.set_edge_weight_halves(k.first, k.second, info.weight_halves);
  }
  return h;
}

// Constraint given by an explicit finite set of accepted labeled balls.
inline LclOracle explicit_lcl_oracle(std::vector<LabeledBall> members) {
  auto packed = std::make_shared<std::vector<CenteredGraph>>();
  for (const auto& m : members)
    packed->push_back(CenteredGraph{combine_labels(m.ball.graph, m.out),
                                    m.ball.center, m.ball.radius});
  return [packed](const LabeledBall& b) {
    CenteredGraph probe{combine_labels(b.ball.graph, b.out), b.ball.center,
                        b.ball.radius};
    for (const auto& m : *packed)
      if (centered_iso(probe, m)) return true;
    return false;
  };
}

namespace detail {

inline Labeling restrict_labeling(const Labeling& out, const LabeledGraph& sub) {
  Labeling r;
  for (const auto& [v, l] : out.node)
    if (sub.has_vertex(v)) r.node[v] = l;
  for (const auto& [e, l] : out.edge)
    if (sub.has_edge(e.first, e.second)) r.edge[e] = l;
  return r;
}

inline bool in_alphabet(const std::vector<int>& alpha, int v) {
  return std::find(alpha.begin(), alpha.end(), v) != alpha.end();
}

}  // namespace detail

inline Verdict verify_lcl(const LCLProblem& p, const LabeledGraph& g,
                          const Labeling& out) {
  Verdict verdict;
  for (VertexId v : g.vertices()) {
    if (g.degree(v) > p.max_degree) {
      verdict.fail_vertex(v, FailReason::DegreeViolation);
      continue;
    }
    auto it = out.node.find(v);
    if (it == out.node.end()) {
      if (!p.out_alphabet.empty())
        verdict.fail_vertex(v, FailReason::MissingLabel);
    } else if (!detail::in_alphabet(p.out_alphabet, it->second)) {
      verdict.fail_vertex(v, FailReason::AlphabetViolation);
    }
  }
  if (!p.edge_out_alphabet.empty()) {
    for (const auto& [e, info] : g.edges()) {
      (void)info;
      auto it = out.edge.find(e);
      if (it == out.edge.end())
        verdict.fail_edge(e, FailReason::MissingLabel);
      else if (!detail::in_alphabet(p.edge_out_alphabet, it->second))
        verdict.fail_edge(e, FailReason::AlphabetViolation);
    }
  }
  if (!verdict.ok) return verdict;

  for (VertexId v : g.vertices()) {
    CenteredGraph b = ball(g, v, p.radius);
    LabeledBall lb{b, detail::restrict_labeling(out, b.graph)};
    if (!p.constraint(lb)) verdict.fail_vertex(v, FailReason::ConstraintRejection);
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// PN-checkable problems: constraints on radius-r PN-views. Input-free; the
// views carry the output labels on their nodes.

struct PNProblem {
  std::vector<int> out_alphabet;
  // compiled problems have label sets far too large to materialize; they
  // set this and skip the alphabet check
  bool open_alphabet = false;
  int radius = 1;
  std::function<bool(const RootedView&)> constraint;
  std::string name;
};

inline Verdict verify_pn(const PNProblem& p, const LabeledGraph& g,
                         const Labeling& out) {
  Verdict verdict;
  for (VertexId v : g.vertices()) {
    auto it = out.node.find(v);
    if (it == out.node.end())
      verdict.fail_vertex(v, FailReason::MissingLabel);
    else if (!p.open_alphabet &&
             !detail::in_alphabet(p.out_alphabet, it->second))
      verdict.fail_vertex(v, FailReason::AlphabetViolation);
  }
  if (!verdict.ok) return verdict;

  LabeledGraph labeled = g;
  for (const auto& [v, l] : out.node) labeled.set_node_label(v, l);
  for (VertexId v : g.vertices()) {
    RootedView view = pn_view(labeled, v, p.radius);
    if (!p.constraint(view)) verdict.fail_vertex(v, FailReason::ConstraintRejection);
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// RE formalism: half-edge labels on 3-regular graphs, a node constraint on
// 3-element multisets and an edge constraint on 2-element multisets.

using ReLabel = std::int64_t;
constexpr ReLabel kNoReLabel = -1;

struct HalfEdgeLabeling {
  // key: (vertex, incident edge)
  std::map<std::pair<VertexId, EdgeKey>, ReLabel> at;

  ReLabel get(VertexId v, const EdgeKey& e) const {
    auto it = at.find({v, e});
    return it == at.end() ? kNoReLabel : it->second;
  }
  void set(VertexId v, const EdgeKey& e, ReLabel l) { at[{v, e}] = l; }

  bool operator==(const HalfEdgeLabeling&) const = default;
};

struct REProblem {
  // Explicit alphabet; may be empty when constraints are pure oracles over
  // labels produced elsewhere (the compiled problems are like that).
  std::vector<ReLabel> alphabet;
  std::function<bool(const std::array<ReLabel, 3>&)> node_constraint;  // sorted
  std::function<bool(const std::array<ReLabel, 2>&)> edge_constraint;  // sorted
  std::string name;
};

inline Verdict verify_re(const REProblem& p, const LabeledGraph& g,
                         const HalfEdgeLabeling& hel) {
  if (!g.is_simple())
    throw std::invalid_argument("verify_re: graph must be simple");
  if (!g.is_regular(3))
    throw std::invalid_argument("verify_re: graph must be 3-regular");

  Verdict verdict;
  for (VertexId v : g.vertices()) {
    std::array<ReLabel, 3> labels{};
    int i = 0;
    bool missing = false;
    for (VertexId w : g.neighbors(v)) {
      ReLabel l = hel.get(v, edge_key(v, w));
      if (l == kNoReLabel) missing = true;
      labels[i++] = l;
    }
    if (missing) {
      verdict.fail_vertex(v, FailReason::MissingLabel);
      continue;
    }
    std::sort(labels.begin(), labels.end());
    if (!p.node_constraint(labels))
      verdict.fail_vertex(v, FailReason::ConstraintRejection);
  }
  for (const auto& [e, info] : g.edges()) {
    (void)info;
    std::array<ReLabel, 2> labels{hel.get(e.first, e), hel.get(e.second, e)};
    if (labels[0] == kNoReLabel || labels[1] == kNoReLabel) {
      verdict.fail_edge(e, FailReason::MissingLabel);
      continue;
    }
    std::sort(labels.begin(), labels.end());
    if (!p.edge_constraint(labels))
      verdict.fail_edge(e, FailReason::ConstraintRejection);
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Built-in problems used as fixtures.

// Proper c-coloring as an LCL of radius 1: the center's color differs from
// every neighbor's. Input labels, when present, are ignored.
inline LCLProblem make_coloring_lcl(int colors, int max_degree) {
  LCLProblem p;
  p.max_degree = max_degree;
  for (int c = 0; c < colors; ++c) p.out_alphabet.push_back(c);
  p.radius = 1;
  p.name = "coloring" + std::to_string(colors);
  p.constraint = [](const LabeledBall& b) {
    int mine = b.out.node.at(b.ball.center);
    for (VertexId w : b.ball.graph.neighbors(b.ball.center))
      if (b.out.node.at(w) == mine) return false;
    return true;
  };
  return p;
}

// Maximal matching with node flags: edge label 1 marks matched edges, the
// node flag caches whether the vertex is matched, and an unmatched vertex
// must see only matched neighbors.
inline LCLProblem make_matching_lcl(int max_degree) {
  LCLProblem p;
  p.max_degree = max_degree;
  p.out_alphabet = {0, 1};
  p.edge_out_alphabet = {0, 1};
  p.radius = 1;
  p.name = "maximal-matching";
  p.constraint = [](const LabeledBall& b) {
    VertexId v = b.ball.center;
    int incident = 0;
    for (VertexId w : b.ball.graph.neighbors(v))
      incident += b.out.edge.at(edge_key(v, w)) == 1 ? 1 : 0;
    if (incident > 1) return false;
    if (b.out.node.at(v) != (incident == 1 ? 1 : 0)) return false;
    if (incident == 0)
      for (VertexId w : b.ball.graph.neighbors(v))
        if (b.out.node.at(w) != 1) return false;
    return true;
  };
  return p;
}

// Proper c-coloring as a PN-checkable problem of radius 1.
inline PNProblem make_coloring_pn(int colors) {
  PNProblem p;
  for (int c = 0; c < colors; ++c) p.out_alphabet.push_back(c);
  p.radius = 1;
  p.name = "pn-coloring" + std::to_string(colors);
  p.constraint = [](const RootedView& v) {
    int mine = v.root_label();
    for (int c : v.node(v.root()).children)
      if (v.node(c).node_label == mine) return false;
    return true;
  };
  return p;
}

// c-coloring in the RE formalism: all three half-edges of a node carry the
// node's color, the two ends of an edge differ.
inline REProblem make_coloring_re(int colors) {
  REProblem p;
  for (int c = 0; c < colors; ++c) p.alphabet.push_back(c);
  p.name = "re-coloring" + std::to_string(colors);
  p.node_constraint = [](const std::array<ReLabel, 3>& m) {
    return m[0] == m[1] && m[1] == m[2];
  };
  p.edge_constraint = [](const std::array<ReLabel, 2>& m) {
    return m[0] != m[1];
  };
  return p;
}

// Sinkless-orientation style problem: half-edge labels O (0, outgoing) and
// I (1, incoming); each edge is oriented (one O, one I) and no node has all
// three half-edges incoming.
inline REProblem make_sinkless_orientation_re() {
  REProblem p;
  p.alphabet = {0, 1};
  p.name = "sinkless-orientation";
  p.node_constraint = [](const std::array<ReLabel, 3>& m) {
    return !(m[0] == 1 && m[1] == 1 && m[2] == 1);
  };
  p.edge_constraint = [](const std::array<ReLabel, 2>& m) {
    return m[0] == 0 && m[1] == 1;
  };
  return p;
}

}  // namespace lclre
