//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "lclre/graph.hpp"
#include "lclre/iso.hpp"
#include "lclre/view.hpp"

using namespace lclre;

namespace {

LabeledGraph path_graph(int n) {
  LabeledGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

LabeledGraph cycle_graph(int n) {
  LabeledGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

LabeledGraph complete_graph(int n) {
  LabeledGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

// Independent oracle for small graphs: isomorphism by full permutation
// search, no pruning. Used to cross-check the production kernel.
bool naive_iso(const LabeledGraph& a, const LabeledGraph& b) {
  auto va = a.vertices();
  auto vb = b.vertices();
  if (va.size() != vb.size()) return false;
  std::sort(vb.begin(), vb.end());
  do {
    bool ok = true;
    for (std::size_t i = 0; i < va.size() && ok; ++i) {
      if (a.node_label(va[i]) != b.node_label(vb[i])) ok = false;
      for (std::size_t j = 0; j < va.size() && ok; ++j) {
        if (a.edge_multiplicity(va[i], va[j]) !=
            b.edge_multiplicity(vb[i], vb[j]))
          ok = false;
        else if (a.edge_multiplicity(va[i], va[j]) > 0 &&
                 a.edge_label(va[i], va[j]) != b.edge_label(vb[i], vb[j]))
          ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(vb.begin(), vb.end()));
  return false;
}

LabeledGraph random_graph(std::mt19937& rng, int max_n) {
  std::uniform_int_distribution<int> nd(1, max_n);
  int n = nd(rng);
  LabeledGraph g;
  for (int i = 0; i < n; ++i) {
    g.add_vertex(i);
    g.set_node_label(i, std::uniform_int_distribution<int>(0, 2)(rng));
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (auto [i, j] : pairs)
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0 &&
        g.degree(i) < 3 && g.degree(j) < 3)
      g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_CASE("ball basics") {
  // path a-b-c, center b, r=1: the whole graph
  auto g = path_graph(3);
  auto b1 = ball(g, 1, 1);
  CHECK(b1.graph.num_vertices() == 3);
  CHECK(b1.graph.num_edges() == 2);

  // r = 0: single vertex, no edges
  auto b0 = ball(g, 1, 0);
  CHECK(b0.graph.num_vertices() == 1);
  CHECK(b0.graph.num_edges() == 0);

  CHECK_THROWS_AS(ball(g, 99, 1), std::invalid_argument);
}

TEST_CASE("ball on C6 radius 2 is a 5-vertex path") {
  // oracle: BFS by hand on C6 from vertex 0: dist<=2 gives {4,5,0,1,2};
  // edges with an endpoint at dist<2 gives the four path edges.
  auto g = cycle_graph(6);
  auto b = ball(g, 0, 2);
  CHECK(b.graph.num_vertices() == 5);
  CHECK(b.graph.num_edges() == 4);
  auto p = path_graph(5);
  CHECK(labeled_graph_iso(b.graph, p));
}

TEST_CASE("ball edge rule drops frontier-frontier edges") {
  // triangle: ball of radius 1 at any vertex keeps only the two incident
  // edges; the opposite edge has both endpoints at distance 1.
  auto g = complete_graph(3);
  auto b = ball(g, 0, 1);
  CHECK(b.graph.num_vertices() == 3);
  CHECK(b.graph.num_edges() == 2);
}

TEST_CASE("pn_view of K3 and C10 agree at radius 2") {
  auto k3 = complete_graph(3);
  auto c10 = cycle_graph(10);
  auto v1 = pn_view(k3, 0, 2);
  auto v2 = pn_view(c10, 3, 2);
  // root, 2 children, each with 1 child
  CHECK(v1.logical_size() == 5);
  CHECK(v2.logical_size() == 5);
  CHECK(rooted_tree_iso(v1, v2));
}

TEST_CASE("pn_view of a single vertex") {
  LabeledGraph g;
  g.add_vertex(7);
  auto v = pn_view(g, 7, 3);
  CHECK(v.logical_size() == 1);
}

TEST_CASE("pn_view lift invariance on cycles") {
  // all cycle views of radius r < floor(k/2) are isomorphic across k
  auto base = pn_view(cycle_graph(7), 0, 2);
  for (int k = 5; k <= 10; ++k) {
    auto v = pn_view(cycle_graph(k), k / 2, 2);
    CHECK(rooted_tree_iso(base, v));
  }
}

TEST_CASE("pn_view on trees equals the ball") {
  // on trees the non-backtracking walk tree is the ball itself
  auto g = path_graph(6);
  auto v = pn_view(g, 2, 2);
  auto b = ball(g, 2, 2);
  CHECK(v.logical_size() == static_cast<std::int64_t>(b.graph.num_vertices()));
}

TEST_CASE("centered_iso") {
  auto g = complete_graph(3);
  for (int v : {0, 1, 2}) {
    auto a = ball(g, 0, 1);
    auto b = ball(g, v, 1);
    CHECK(centered_iso(a, b));
  }

  // K3 labeled (1,2,3) vs (1,2,2): label multiset differs
  auto a = complete_graph(3);
  a.set_node_label(0, 1);
  a.set_node_label(1, 2);
  a.set_node_label(2, 3);
  auto b = complete_graph(3);
  b.set_node_label(0, 1);
  b.set_node_label(1, 2);
  b.set_node_label(2, 2);
  CHECK_FALSE(centered_iso(CenteredGraph{a, 0, 1}, CenteredGraph{b, 0, 1}));
}

TEST_CASE("centered_iso distinguishes center orbits") {
  // C4 with a pendant vertex: the pendant's neighbor is in a different
  // orbit than the opposite cycle vertex. Oracle: exhaustive permutation
  // search confirms the graphs are isomorphic as plain graphs.
  LabeledGraph g = cycle_graph(4);
  g.add_vertex(4);
  g.add_edge(0, 4);
  CHECK(naive_iso(g, g));
  auto a = ball(g, 0, 3);
  auto b = ball(g, 2, 3);
  CHECK(a.graph.num_vertices() == b.graph.num_vertices());
  CHECK_FALSE(centered_iso(a, b));
}

TEST_CASE("iso kernel agrees with permutation oracle on random graphs") {
  std::mt19937 rng(12345);
  for (int it = 0; it < 60; ++it) {
    auto a = random_graph(rng, 5);
    auto b = random_graph(rng, 5);
    CHECK(labeled_graph_iso(a, b) == naive_iso(a, b));
    // relabeled copy is isomorphic
    LabeledGraph c;
    auto vs = a.vertices();
    std::vector<int> perm(vs.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      c.add_vertex(100 + perm[i]);
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      int l = a.node_label(vs[i]);
      if (l != kNoLabel) c.set_node_label(100 + perm[i], l);
    }
    std::map<VertexId, int> pos;
    for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = perm[i];
    for (const auto& [k, info] : a.edges()) {
      (void)info;
      c.add_edge(100 + pos[k.first], 100 + pos[k.second]);
    }
    CHECK(labeled_graph_iso(a, c));
  }
}

TEST_CASE("rooted_tree_iso ignores child order, respects labels") {
  RootedView a;
  int l1 = a.add_node(5, 1, {});
  int l2 = a.add_node(6, 2, {});
  int ra = a.add_node(0, kNoLabel, {l1, l2});
  a.set_root(ra, 1);

  RootedView b;
  int m2 = b.add_node(6, 2, {});
  int m1 = b.add_node(5, 1, {});
  int rb = b.add_node(0, kNoLabel, {m2, m1});
  b.set_root(rb, 1);
  CHECK(rooted_tree_iso(a, b));

  RootedView c;
  int n1 = c.add_node(5, 1, {});
  int n2 = c.add_node(6, 2, {});
  int rc = c.add_node(9, kNoLabel, {n1, n2});
  c.set_root(rc, 1);
  CHECK_FALSE(rooted_tree_iso(a, c));  // root labels differ
}

TEST_CASE("iso relations are equivalences on generated views") {
  std::mt19937 rng(777);
  std::vector<RootedView> pool;
  for (int it = 0; it < 12; ++it) {
    auto g = random_graph(rng, 5);
    auto vs = g.vertices();
    pool.push_back(pn_view(g, vs[rng() % vs.size()], 2));
  }
  for (const auto& v : pool) CHECK(rooted_tree_iso(v, v));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      bool ij = rooted_tree_iso(pool[i], pool[j]);
      bool ji = rooted_tree_iso(pool[j], pool[i]);
      CHECK(ij == ji);
      if (!ij) continue;
      for (std::size_t k = 0; k < pool.size(); ++k)
        if (rooted_tree_iso(pool[j], pool[k]))
          CHECK(rooted_tree_iso(pool[i], pool[k]));
    }
}

TEST_CASE("gdist on weighted graphs") {
  // u(0) - a(1) - b(2) - v(3); boundary edges weight 1/2, inner weight 0
  LabeledGraph g;
  for (int i = 0; i < 4; ++i) g.add_vertex(i);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.set_edge_weight_halves(0, 1, 1);
  g.set_edge_weight_halves(1, 2, 0);
  g.set_edge_weight_halves(2, 3, 1);

  CHECK(gdist_halves(g, 0, 0) == 0);
  CHECK(gdist_halves(g, 0, 3) == 2);  // gdist 1
  CHECK(gdist_halves(g, 0, 1) == 1);  // gdist 1/2

  g.add_vertex(9);
  CHECK(gdist_halves(g, 0, 9) == kInfGdist);
}

TEST_CASE("gdist triangle inequality on random weighted graphs") {
  std::mt19937 rng(4242);
  for (int it = 0; it < 20; ++it) {
    auto g = random_graph(rng, 6);
    for (const auto& [k, info] : g.edges()) {
      (void)info;
      g.set_edge_weight_halves(k.first, k.second, rng() % 2);
    }
    auto vs = g.vertices();
    for (VertexId a : vs)
      for (VertexId b : vs)
        for (VertexId c : vs) {
          auto ab = gdist_halves(g, a, b);
          auto bc = gdist_halves(g, b, c);
          auto ac = gdist_halves(g, a, c);
          if (ab != kInfGdist && bc != kInfGdist) {
            REQUIRE(ac != kInfGdist);
            CHECK(ac <= ab + bc);
          }
        }
  }
}

TEST_CASE("gball basics") {
  // original vertex with all incident edges weight 1/2: r=0 keeps only it
  LabeledGraph g;
  for (int i = 0; i < 3; ++i) g.add_vertex(i);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.set_edge_weight_halves(0, 1, 1);
  g.set_edge_weight_halves(0, 2, 1);
  auto b0 = gball(g, 0, 0);
  CHECK(b0.graph.num_vertices() == 1);
  CHECK(b0.graph.num_edges() == 0);

  // large r covers the component
  auto b9 = gball(g, 0, 9);
  CHECK(b9.graph.num_vertices() == 3);
  CHECK(b9.graph.num_edges() == 2);
}
