//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "lclre/encode_ab.hpp"
#include "lclre/graph.hpp"
#include "lclre/problem.hpp"
#include "lclre/rational.hpp"

namespace lclre {

// ---------------------------------------------------------------------------
// Deterministic round-free realization of the message-passing model: an
// algorithm of locality T is a function of the radius-T annotated ball.

struct SimInstance {
  LabeledGraph graph;                    // carries the input labels
  std::map<VertexId, std::int64_t> ids;  // unique, polynomially bounded
  int round_budget = 64;
  int id_exponent = 3;
};

inline SimInstance make_sim_instance(const LabeledGraph& g, int round_budget = 64) {
  SimInstance inst;
  inst.graph = g;
  for (VertexId v : g.vertices()) inst.ids[v] = v;
  inst.round_budget = round_budget;
  return inst;
}

inline void validate_sim_instance(const SimInstance& inst) {
  std::set<std::int64_t> seen;
  std::int64_t n = static_cast<std::int64_t>(inst.graph.num_vertices());
  std::int64_t bound = 1;
  for (int i = 0; i < inst.id_exponent; ++i) {
    if (bound > (INT64_MAX / std::max<std::int64_t>(n, 2))) {
      bound = INT64_MAX;
      break;
    }
    bound *= std::max<std::int64_t>(n, 2);
  }
  for (VertexId v : inst.graph.vertices()) {
    auto it = inst.ids.find(v);
    if (it == inst.ids.end())
      throw std::invalid_argument("SimInstance: vertex without id");
    if (it->second < 0 || it->second >= bound)
      throw std::invalid_argument("SimInstance: id out of the polynomial range");
    if (!seen.insert(it->second).second)
      throw std::invalid_argument("SimInstance: duplicate id");
  }
}

struct AnnotatedBall {
  CenteredGraph ball;
  std::map<VertexId, std::int64_t> ids;
};

struct LocalAlgorithm {
  int locality = 0;
  std::function<int(const AnnotatedBall&)> f;
  std::string name;
};

struct RunResult {
  Labeling out;
  std::map<VertexId, int> ledger;  // radius actually queried, per vertex
};

inline AnnotatedBall annotated_ball(const LabeledGraph& g,
                                    const std::map<VertexId, std::int64_t>& ids,
                                    VertexId v, int r) {
  AnnotatedBall ab;
  ab.ball = ball(g, v, r);
  for (VertexId u : ab.ball.graph.vertices()) {
    auto it = ids.find(u);
    if (it != ids.end()) ab.ids[u] = it->second;
  }
  return ab;
}

inline RunResult run_local(const LocalAlgorithm& alg, const SimInstance& inst) {
  validate_sim_instance(inst);
  if (alg.locality > inst.round_budget)
    throw std::invalid_argument("run_local: locality exceeds the round budget");
  RunResult r;
  for (VertexId v : inst.graph.vertices()) {
    r.out.node[v] = alg.f(annotated_ball(inst.graph, inst.ids, v, alg.locality));
    r.ledger[v] = alg.locality;
  }
  return r;
}

// Sequential model: vertices processed in the given order; each reads the
// outputs already fixed inside its radius-T ball.
struct SequentialAlgorithm {
  int locality = 0;
  std::function<int(const AnnotatedBall&, const Labeling& fixed)> f;
  std::string name;
};

inline RunResult run_slocal(const SequentialAlgorithm& alg,
                            const SimInstance& inst,
                            const std::vector<VertexId>& order) {
  validate_sim_instance(inst);
  {
    auto vs = inst.graph.vertices();
    std::vector<VertexId> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != vs)
      throw std::invalid_argument("run_slocal: order is not a permutation");
  }
  RunResult r;
  for (VertexId v : order) {
    auto ab = annotated_ball(inst.graph, inst.ids, v, alg.locality);
    Labeling visible;
    for (VertexId u : ab.ball.graph.vertices()) {
      auto it = r.out.node.find(u);
      if (it != r.out.node.end()) visible.node[u] = it->second;
    }
    r.out.node[v] = alg.f(ab, visible);
    r.ledger[v] = alg.locality;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Symmetry breaking: greedy coloring of the k-th graph power, processed by
// id order. Palette is bounded by the maximum power-degree plus one.

struct SymmetryOracle {
  int k = 1;
  std::map<VertexId, std::int64_t> chi;
  std::int64_t color_bound = 0;
};

inline SymmetryOracle distance_k_coloring(const SimInstance& inst, int k) {
  if (k < 1) throw std::invalid_argument("distance_k_coloring: k >= 1");
  validate_sim_instance(inst);
  const LabeledGraph& g = inst.graph;
  SymmetryOracle o;
  o.k = k;
  std::vector<VertexId> vs = g.vertices();
  std::sort(vs.begin(), vs.end(), [&](VertexId a, VertexId b) {
    return inst.ids.at(a) < inst.ids.at(b);
  });
  std::int64_t maxPowerDeg = 0;
  std::map<VertexId, std::vector<VertexId>> within;
  for (VertexId v : vs) {
    for (const auto& [u, d] : bfs_distances(g, v))
      if (u != v && d <= k) within[v].push_back(u);
    maxPowerDeg = std::max<std::int64_t>(maxPowerDeg,
                                         static_cast<std::int64_t>(within[v].size()));
  }
  for (VertexId v : vs) {
    std::set<std::int64_t> used;
    for (VertexId u : within[v]) {
      auto it = o.chi.find(u);
      if (it != o.chi.end()) used.insert(it->second);
    }
    std::int64_t c = 1;
    while (used.count(c)) ++c;
    o.chi[v] = c;
  }
  o.color_bound = maxPowerDeg + 1;
  return o;
}

// Greedy distance-k edge coloring: colors from 1, no two edges within
// min-endpoint distance k share one.
inline std::map<EdgeKey, std::int64_t> distance_k_edge_coloring(
    const LabeledGraph& g, int k) {
  std::map<EdgeKey, std::int64_t> col;
  std::vector<EdgeKey> es;
  for (const auto& [e, info] : g.edges()) {
    (void)info;
    es.push_back(e);
  }
  std::map<VertexId, std::map<VertexId, int>> dist;
  for (VertexId v : g.vertices()) dist[v] = bfs_distances(g, v);
  auto edist = [&](const EdgeKey& a, const EdgeKey& b) {
    int d = kInfDist;
    for (VertexId x : {a.first, a.second})
      for (VertexId y : {b.first, b.second}) {
        auto it = dist.at(x).find(y);
        if (it != dist.at(x).end()) d = std::min(d, it->second);
      }
    return d;
  };
  for (const EdgeKey& e : es) {
    std::set<std::int64_t> used;
    for (const auto& [f, c] : col)
      if (edist(e, f) <= k) used.insert(c);
    std::int64_t c = 1;
    while (used.count(c)) ++c;
    col[e] = c;
  }
  return col;
}

// ---------------------------------------------------------------------------
// Simulation across the encoding, both directions. Encoded-side vertices
// recover the decoded instance from a bounded ball and run the original
// algorithm on it; decoded-side vertices encode their ball locally and run
// the encoded-graph algorithm at their gadget's representative.

// Every vertex of g' computes the output its decoded vertex's algorithm
// produces; edge-gadget vertices take the default label. The gather radius
// is lambda*(T+2): lambda*T for the decoded view plus slack so that every
// gadget of the view lies wholly inside the ball.
inline RunResult simulate_a1_prime(const LocalAlgorithm& algA,
                                   const LabeledGraph& gp,
                                   const AbScheme& scheme, int bot_out) {
  int lambda = ab_lambda(scheme);
  int gather = lambda * (algA.locality + 2);
  RunResult r;
  for (VertexId v : gp.vertices()) {
    CenteredGraph B = ball(gp, v, gather);
    DecodeAbResult dec = decode_ab(B.graph, scheme);
    r.ledger[v] = gather;
    auto owner = dec.dm.owner(v);
    if (!owner) {
      r.out.node[v] = bot_out;  // edge-gadget member
      continue;
    }
    CenteredGraph db = ball(dec.decoded, *owner, algA.locality);
    AnnotatedBall ab;
    ab.ball = db;
    for (VertexId u : db.graph.vertices()) ab.ids[u] = u;  // decoded ids
    r.out.node[v] = algA.f(ab);
  }
  return r;
}

// The reference it must match: decode globally, run, lift.
inline RunResult decode_run_lift(const LocalAlgorithm& algA,
                                 const LabeledGraph& gp, const AbScheme& scheme,
                                 int bot_out) {
  DecodeAbResult dec = decode_ab(gp, scheme);
  Labeling aout;
  for (VertexId u : dec.decoded.vertices()) {
    AnnotatedBall ab;
    ab.ball = ball(dec.decoded, u, algA.locality);
    for (VertexId w : ab.ball.graph.vertices()) ab.ids[w] = w;
    aout.node[u] = algA.f(ab);
  }
  RunResult r;
  r.out = lift_out_a_to_b(aout, dec.dm, gp, bot_out);
  return r;
}

// Every decoded vertex encodes its radius-(T+1) ball, locates its gadget's
// representative and evaluates the encoded-graph algorithm there. The
// recorded locality is T: the extra level is part of the encoding step.
inline RunResult simulate_a2_prime(const LocalAlgorithm& algB,
                                   const LabeledGraph& g,
                                   const AbScheme& scheme) {
  RunResult r;
  for (VertexId v : g.vertices()) {
    CenteredGraph sub = ball(g, v, algB.locality + 1);
    EncodeAbResult enc = encode_ab(sub.graph, scheme);
    VertexId a = *std::min_element(enc.dm.node_sets.at(v).begin(),
                                   enc.dm.node_sets.at(v).end());
    AnnotatedBall ab;
    ab.ball = ball(enc.graph, a, algB.locality);
    for (VertexId w : ab.ball.graph.vertices()) ab.ids[w] = w;
    r.out.node[v] = algB.f(ab);
    r.ledger[v] = algB.locality;
  }
  return r;
}

// The reference: encode globally, run at every vertex, read back each
// gadget's representative.
inline RunResult encode_run_liftback(const LocalAlgorithm& algB,
                                     const LabeledGraph& g,
                                     const AbScheme& scheme) {
  EncodeAbResult enc = encode_ab(g, scheme);
  Labeling bout;
  for (VertexId w : enc.graph.vertices()) {
    AnnotatedBall ab;
    ab.ball = ball(enc.graph, w, algB.locality);
    for (VertexId x : ab.ball.graph.vertices()) ab.ids[x] = x;
    bout.node[w] = algB.f(ab);
  }
  RunResult r;
  r.out = lift_out_b_to_a(bout, enc.dm);
  return r;
}

// ---------------------------------------------------------------------------
// Finite-support outcomes and the probability-preserving lift.

struct Outcome {
  std::vector<std::pair<Labeling, Rational>> support;
};

inline void validate_outcome(const Outcome& o) {
  Rational sum(0);
  for (const auto& [l, p] : o.support) {
    (void)l;
    if (p < Rational(0)) throw std::invalid_argument("Outcome: negative mass");
    sum = sum + p;
  }
  if (!(sum == Rational(1)))
    throw std::invalid_argument("Outcome: probabilities sum to " + sum.str());
}

inline Rational success_probability(
    const std::function<bool(const Labeling&)>& legal, const Outcome& o) {
  Rational s(0);
  for (const auto& [l, p] : o.support)
    if (legal(l)) s = s + p;
  return s;
}

struct OutcomeLift {
  Outcome lifted;
  Rational src_success;
  Rational dst_success;
};

// Pushes an outcome through a labeling lift and accounts for the success
// probabilities on both sides. When the lift is sound the destination
// success is at least the source success; the caller asserts that.
inline OutcomeLift lift_outcome(const Outcome& o,
                                const std::function<Labeling(const Labeling&)>& lift,
                                const std::function<bool(const Labeling&)>& src_legal,
                                const std::function<bool(const Labeling&)>& dst_legal) {
  validate_outcome(o);
  OutcomeLift res;
  for (const auto& [l, p] : o.support) res.lifted.support.push_back({lift(l), p});
  res.src_success = success_probability(src_legal, o);
  res.dst_success = success_probability(dst_legal, res.lifted);
  return res;
}

}  // namespace lclre
