//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lclre/encode_ab.hpp"
#include "lclre/iso.hpp"
#include "lclre/solve.hpp"

using namespace lclre;

namespace {

LabeledGraph k2_labeled(int lu, int lv) {
  LabeledGraph g;
  g.add_vertex(0);
  g.add_vertex(1);
  g.add_edge(0, 1);
  g.set_node_label(0, lu);
  g.set_node_label(1, lv);
  return g;
}

LabeledGraph complete_bipartite_33() {
  LabeledGraph g;
  for (int i = 0; i < 6; ++i) g.add_vertex(i);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) g.add_edge(i, j);
  return g;
}

// what the decoder should reproduce: the input with derived edge labels
LabeledGraph expected_decode(const LabeledGraph& g) {
  LabeledGraph h(true);
  for (VertexId v : g.vertices()) {
    h.add_vertex(v);
    h.set_node_label(v, g.node_label(v));
  }
  for (const auto& [e, info] : g.edges()) {
    (void)info;
    h.add_edge(e.first, e.second);
    h.set_edge_label(e.first, e.second,
                     pack_ab_edge_label(g.node_label(e.first),
                                        g.node_label(e.second)));
  }
  return h;
}

LabeledGraph random_encodable_graph(std::mt19937& rng, int max_n) {
  while (true) {
    int n = 2 + static_cast<int>(rng() % (max_n - 1));
    LabeledGraph g;
    for (int i = 0; i < n; ++i) {
      g.add_vertex(i);
      g.set_node_label(i, static_cast<int>(rng() % 3));
    }
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (auto [i, j] : pairs)
      if (rng() % 2 == 0 && g.degree(i) < 3 && g.degree(j) < 3) g.add_edge(i, j);
    // encode_ab rejects isolated vertices
    bool ok = true;
    for (VertexId v : g.vertices())
      if (g.degree(v) == 0) ok = false;
    if (ok) return g;
  }
}

}  // namespace

TEST_CASE("ladder gadget structure") {
  // k=0: vertex and edge counts enumerated from the construction
  auto h0 = ladder_gadget(0);
  CHECK(h0.graph.num_vertices() == 7);
  CHECK(h0.graph.num_edges() == 10);

  auto h1 = ladder_gadget(1);
  CHECK(h1.graph.num_vertices() == 9);
  for (VertexId v : h1.graph.vertices()) {
    if (v == h1.attach)
      CHECK(h1.graph.degree(v) == 2);
    else
      CHECK(h1.graph.degree(v) == 3);
  }

  for (int k = 0; k <= 4; ++k)
    CHECK(ladder_gadget(k).graph.num_vertices() ==
          static_cast<std::size_t>(2 * k + 7));

  CHECK_THROWS_AS(ladder_gadget(-1), std::invalid_argument);
}

TEST_CASE("ladder gadget has exactly one triangle through x") {
  for (int k = 0; k <= 3; ++k) {
    auto lad = ladder_gadget(k);
    const auto& g = lad.graph;
    int triangles = 0;
    const auto& nb = g.neighbors(lad.attach);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (g.has_edge(nb[i], nb[j])) ++triangles;
    CHECK(triangles == 1);
  }
}

TEST_CASE("encode_ab K2 with labels 1,1 gives 62 vertices, 3-regular") {
  // hand count: 2 node gadgets of 3+2*9 vertices, edge gadget of 2+2*9
  AbScheme scheme;
  auto g = k2_labeled(1, 1);
  auto enc = encode_ab(g, scheme);
  CHECK(enc.graph.num_vertices() == 62);
  CHECK(enc.graph.is_regular(3));
  CHECK(enc.graph.is_simple());
}

TEST_CASE("encode_ab rejects degree-0 vertices and bad labels") {
  AbScheme scheme;
  LabeledGraph g;
  g.add_vertex(0);
  g.set_node_label(0, 1);
  CHECK_THROWS_AS(encode_ab(g, scheme), std::invalid_argument);

  auto g2 = k2_labeled(1, 99);
  CHECK_THROWS_AS(encode_ab(g2, scheme), std::invalid_argument);
}

TEST_CASE("decode_ab inverts encode_ab on K2") {
  AbScheme scheme;
  auto g = k2_labeled(1, 2);
  auto enc = encode_ab(g, scheme);
  auto dec = decode_ab(enc.graph, scheme);
  CHECK(dec.dm.malformed_vertices.empty());
  CHECK(dec.dm.malformed_edges.empty());
  CHECK(labeled_graph_iso(dec.decoded, expected_decode(g)));
}

TEST_CASE("decode_ab roundtrip on random graphs") {
  AbScheme scheme;
  std::mt19937 rng(2024);
  for (int it = 0; it < 12; ++it) {
    auto g = random_encodable_graph(rng, 6);
    auto enc = encode_ab(g, scheme);
    CHECK(enc.graph.is_regular(3));
    auto dec = decode_ab(enc.graph, scheme);
    CHECK(dec.dm.malformed_vertices.empty());
    REQUIRE(labeled_graph_iso(dec.decoded, expected_decode(g)));
  }
}

TEST_CASE("decode_ab on a gadget-free graph marks everything malformed") {
  AbScheme scheme;
  auto g = complete_bipartite_33();
  auto dec = decode_ab(g, scheme);
  CHECK(dec.dm.node_sets.empty());
  CHECK(dec.dm.malformed_vertices.size() == 6);
  for (VertexId v : dec.decoded.vertices())
    CHECK(dec.decoded.node_label(v) == scheme.bot_label);
  CHECK(dec.decoded.num_edges() == 9);
}

TEST_CASE("decode_ab with injected structure degrades locally, never crashes") {
  AbScheme scheme;
  auto g = k2_labeled(1, 1);
  auto enc = encode_ab(g, scheme);
  // subdivide one edge through a fresh vertex: breaks 3-regularity locally
  // and must push the touched gadgets into malformed territory
  LabeledGraph h;
  for (VertexId v : enc.graph.vertices()) h.add_vertex(v);
  EdgeKey victim = enc.graph.edges().begin()->first;
  for (const auto& [e, info] : enc.graph.edges()) {
    (void)info;
    if (e == victim) continue;
    h.add_edge(e.first, e.second);
  }
  VertexId fresh = 1000000;
  h.add_vertex(fresh);
  h.add_edge(victim.first, fresh);
  h.add_edge(victim.second, fresh);

  auto dec = decode_ab(h, scheme);
  CHECK(dec.dm.malformed_vertices.count(fresh) > 0);
  // decoding is total: every encoded vertex is owned or in an edge gadget
  for (VertexId v : h.vertices()) {
    bool covered = dec.dm.owner(v).has_value() || dec.dm.in_edge_gadget(v);
    CHECK(covered);
  }
}

TEST_CASE("gadget sets partition the encoded graph") {
  AbScheme scheme;
  std::mt19937 rng(7);
  auto g = random_encodable_graph(rng, 5);
  auto enc = encode_ab(g, scheme);
  auto dec = decode_ab(enc.graph, scheme);
  std::set<VertexId> seen;
  std::size_t total = 0;
  for (const auto& [u, set] : dec.dm.node_sets) {
    (void)u;
    for (VertexId v : set) CHECK(seen.insert(v).second);
    total += set.size();
  }
  for (const auto& item : dec.dm.edge_items) {
    for (VertexId v : item.set) CHECK(seen.insert(v).second);
    total += item.set.size();
  }
  total += dec.dm.malformed_vertices.size();
  CHECK(total == enc.graph.num_vertices());
}

TEST_CASE("locality of encoding: balls of encodings match encodings of balls") {
  AbScheme scheme;
  std::mt19937 rng(31);
  auto g = random_encodable_graph(rng, 6);
  auto enc = encode_ab(g, scheme);
  for (int T : {0, 1, 2}) {
    for (VertexId x : g.vertices()) {
      auto sub = ball(g, x, T + 1);
      bool encodable = true;
      for (VertexId v : sub.graph.vertices())
        if (sub.graph.degree(v) == 0) encodable = false;
      if (!encodable) continue;
      auto encSub = encode_ab(sub.graph, scheme);
      // corresponding vertex: the id scheme is local, so ids coincide
      VertexId a = *enc.dm.node_sets.at(x).begin();
      REQUIRE(encSub.dm.node_sets.count(x));
      VertexId aH = *encSub.dm.node_sets.at(x).begin();
      CHECK(a == aH);
      auto bg = ball(enc.graph, a, T);
      auto bh = ball(encSub.graph, aH, T);
      CHECK(centered_iso(bg, bh));
    }
  }
}

TEST_CASE("local_decode agrees with the global decode") {
  AbScheme scheme;
  int lambda = ab_lambda(scheme);
  auto g = k2_labeled(2, 1);
  auto enc = encode_ab(g, scheme);
  auto globalDec = decode_ab(enc.graph, scheme);

  for (VertexId v : enc.graph.vertices()) {
    auto ld = local_decode(enc.graph, v, scheme, lambda);
    if (globalDec.dm.in_edge_gadget(v)) {
      CHECK(ld.kind == LocalDecodeKind::EdgeGadgetMember);
      continue;
    }
    auto owner = globalDec.dm.owner(v);
    REQUIRE(owner.has_value());
    if (globalDec.dm.malformed_vertices.count(*owner)) {
      CHECK(ld.kind == LocalDecodeKind::Malformed);
      continue;
    }
    REQUIRE(ld.kind == LocalDecodeKind::NodeGadgetMember);
    CHECK(ld.decoded_vertex == *owner);
    CHECK(ld.representative == (globalDec.dm.representative(*owner) == v));
    auto want = ball(globalDec.decoded, *owner, 1);
    CHECK(centered_iso(ld.neighborhood, want));
    for (const auto& [w, path] : ld.paths) {
      (void)w;
      CHECK(static_cast<int>(path.size()) - 1 <= lambda);
    }
  }
}

TEST_CASE("problem B membership on the K2 fixture") {
  AbScheme scheme;
  auto A = make_coloring_lcl(2, 3);  // proper 2-coloring, K2 is 2-colorable
  auto g = k2_labeled(1, 1);
  auto enc = encode_ab(g, scheme);
  auto B = make_problem_b(A, scheme);

  // lift of a legal A-output is legal for B
  Labeling aout;
  aout.node[0] = 0;
  aout.node[1] = 1;
  REQUIRE(verify_lcl(A, g, aout).ok);
  auto bout = lift_out_a_to_b(aout, enc.dm, enc.graph, A.out_alphabet[0]);
  CHECK(verify_lcl(B, enc.graph, bout).ok);

  // violating the source constraint at the decoded center rejects
  Labeling bad = bout;
  for (VertexId v : enc.dm.node_sets.at(1)) bad.node[v] = 0;
  CHECK_FALSE(verify_lcl(B, enc.graph, bad).ok);

  // scrambling edge-gadget outputs keeps legality (free centers)
  Labeling scrambled = bout;
  for (const auto& item : enc.dm.edge_items)
    for (VertexId v : item.set) scrambled.node[v] = 1;
  CHECK(verify_lcl(B, enc.graph, scrambled).ok);

  // non-uniform output inside a node gadget rejects
  Labeling split = bout;
  split.node[*enc.dm.node_sets.at(0).rbegin()] = 1;
  CHECK_FALSE(verify_lcl(B, enc.graph, split).ok);
}

TEST_CASE("lift round trip is the identity on source outputs") {
  AbScheme scheme;
  auto g = k2_labeled(0, 2);
  auto enc = encode_ab(g, scheme);
  Labeling aout;
  aout.node[0] = 3;
  aout.node[1] = 1;
  auto bout = lift_out_a_to_b(aout, enc.dm, enc.graph, 0);
  auto back = lift_out_b_to_a(bout, enc.dm);
  CHECK(back == aout);

  // constant source output lifts to gadget-uniform labels
  Labeling c;
  c.node[0] = 5;
  c.node[1] = 5;
  auto bc = lift_out_a_to_b(c, enc.dm, enc.graph, 0);
  for (const auto& [u, set] : enc.dm.node_sets) {
    (void)u;
    for (VertexId v : set) CHECK(bc.node.at(v) == 5);
  }
  for (const auto& item : enc.dm.edge_items)
    for (VertexId v : item.set) CHECK(bc.node.at(v) == 0);
}

TEST_CASE("uniqueness of encoding on a small pool") {
  AbScheme scheme;
  std::mt19937 rng(55);
  std::vector<LabeledGraph> pool;
  for (int i = 0; i < 6; ++i) pool.push_back(random_encodable_graph(rng, 4));
  std::vector<LabeledGraph> encoded;
  for (const auto& g : pool) encoded.push_back(encode_ab(g, scheme).graph);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j) {
      bool inputsIso = labeled_graph_iso(pool[i], pool[j]);
      bool encIso = labeled_graph_iso(encoded[i], encoded[j]);
      CHECK(inputsIso == encIso);
    }
}
