//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lclre/problem.hpp"
#include "lclre/solve.hpp"

using namespace lclre;

namespace {

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

Labeling node_labeling(std::initializer_list<std::pair<VertexId, int>> xs) {
  Labeling l;
  for (auto [v, c] : xs) l.node[v] = c;
  return l;
}

}  // namespace

TEST_CASE("verify_lcl 4-coloring on K4") {
  auto p = make_coloring_lcl(4, 3);
  auto g = complete_graph(4);

  auto ok = node_labeling({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  CHECK(verify_lcl(p, g, ok).ok);

  // repeated color: reject at both endpoints of the monochromatic edge
  auto bad = node_labeling({{0, 0}, {1, 0}, {2, 2}, {3, 3}});
  auto v = verify_lcl(p, g, bad);
  CHECK_FALSE(v.ok);
  std::set<VertexId> failed;
  for (const auto& f : v.failures) failed.insert(f.vertex);
  CHECK(failed == std::set<VertexId>{0, 1});
}

TEST_CASE("verify_lcl empty graph accepts vacuously") {
  auto p = make_coloring_lcl(4, 3);
  LabeledGraph g;
  CHECK(verify_lcl(p, g, {}).ok);
}

TEST_CASE("verify_lcl alphabet violation is a rejection, not a crash") {
  auto p = make_coloring_lcl(4, 3);
  auto g = complete_graph(2);
  auto out = node_labeling({{0, 0}, {1, 99}});
  auto v = verify_lcl(p, g, out);
  CHECK_FALSE(v.ok);
  REQUIRE(v.failures.size() == 1);
  CHECK(v.failures[0].reason == FailReason::AlphabetViolation);
}

TEST_CASE("verify_lcl degree violation") {
  auto p = make_coloring_lcl(4, 2);
  auto g = complete_graph(4);
  auto out = node_labeling({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  auto v = verify_lcl(p, g, out);
  CHECK_FALSE(v.ok);
  CHECK(v.failures[0].reason == FailReason::DegreeViolation);
}

TEST_CASE("verify_lcl is invariant under graph isomorphism") {
  auto p = make_coloring_lcl(3, 3);
  auto g = cycle_graph(5);
  auto out = node_labeling({{0, 0}, {1, 1}, {2, 0}, {3, 1}, {4, 2}});
  // relabel vertices i -> 10+((i+2) mod 5)
  LabeledGraph h;
  for (int i = 0; i < 5; ++i) h.add_vertex(10 + i);
  for (int i = 0; i < 5; ++i) h.add_edge(10 + (i + 2) % 5, 10 + (i + 3) % 5);
  Labeling out2;
  for (int i = 0; i < 5; ++i) out2.node[10 + (i + 2) % 5] = out.node[i];
  CHECK(verify_lcl(p, g, out).ok == verify_lcl(p, h, out2).ok);
}

TEST_CASE("verify_pn accept-all and mixed verdicts") {
  PNProblem all;
  all.out_alphabet = {0, 1};
  all.radius = 1;
  all.constraint = [](const RootedView&) { return true; };
  auto g = cycle_graph(4);
  auto out = node_labeling({{0, 0}, {1, 0}, {2, 1}, {3, 1}});
  CHECK(verify_pn(all, g, out).ok);

  auto p = make_coloring_pn(2);
  auto bad = node_labeling({{0, 0}, {1, 0}, {2, 1}, {3, 1}});
  auto v = verify_pn(p, g, bad);
  CHECK_FALSE(v.ok);
  std::set<VertexId> failed;
  for (const auto& f : v.failures) failed.insert(f.vertex);
  // exactly the centers whose view is violated
  CHECK(failed == std::set<VertexId>{0, 1, 2, 3});
}

TEST_CASE("verify_pn cannot distinguish C3 from C10 at r=2") {
  PNProblem p;
  p.out_alphabet = {0};
  p.radius = 2;
  p.constraint = [](const RootedView& v) {
    // some constraint depending only on the view shape
    return v.logical_size() == 5;
  };
  auto c3 = complete_graph(3);
  auto c10 = cycle_graph(10);
  Labeling o3, o10;
  for (int i = 0; i < 3; ++i) o3.node[i] = 0;
  for (int i = 0; i < 10; ++i) o10.node[i] = 0;
  CHECK(verify_pn(p, c3, o3).ok == verify_pn(p, c10, o10).ok);
}

TEST_CASE("verify_pn invariant under covering lifts") {
  auto p = make_coloring_pn(3);
  for (int k : {3, 4, 5}) {
    auto g1 = cycle_graph(k);
    auto g2 = cycle_graph(2 * k);
    Labeling o1, o2;
    for (int i = 0; i < k; ++i) o1.node[i] = i % 3;
    for (int i = 0; i < 2 * k; ++i) o2.node[i] = i % k % 3;
    CHECK(verify_pn(p, g1, o1).ok == verify_pn(p, g2, o2).ok);
  }
}

TEST_CASE("verify_re 4-coloring on K4") {
  auto p = make_coloring_re(4);
  auto g = complete_graph(4);
  HalfEdgeLabeling hel;
  for (VertexId v : g.vertices())
    for (VertexId w : g.neighbors(v)) hel.set(v, edge_key(v, w), v);
  CHECK(verify_re(p, g, hel).ok);

  // two adjacent nodes share a color: reject that edge
  HalfEdgeLabeling bad = hel;
  for (VertexId w : g.neighbors(1)) bad.set(1, edge_key(1, w), 0);
  auto v = verify_re(p, g, bad);
  CHECK_FALSE(v.ok);
  bool edge01 = false;
  for (const auto& f : v.failures)
    if (f.is_edge && f.edge == edge_key(0, 1)) edge01 = true;
  CHECK(edge01);
}

TEST_CASE("verify_re rejects every edge for empty edge constraint") {
  REProblem p;
  p.alphabet = {0};
  p.node_constraint = [](const std::array<ReLabel, 3>&) { return true; };
  p.edge_constraint = [](const std::array<ReLabel, 2>&) { return false; };
  auto g = complete_graph(4);
  HalfEdgeLabeling hel;
  for (VertexId v : g.vertices())
    for (VertexId w : g.neighbors(v)) hel.set(v, edge_key(v, w), 0);
  auto v = verify_re(p, g, hel);
  CHECK_FALSE(v.ok);
  int edge_failures = 0;
  for (const auto& f : v.failures) edge_failures += f.is_edge;
  CHECK(edge_failures == 6);
}

TEST_CASE("verify_re requires 3-regular input") {
  auto p = make_coloring_re(4);
  auto g = cycle_graph(4);
  CHECK_THROWS_AS(verify_re(p, g, {}), std::invalid_argument);
}

TEST_CASE("brute_force_solve coloring round trips through the verifier") {
  auto g = cycle_graph(5);

  auto p4 = make_coloring_lcl(4, 3);
  auto r = brute_force_solve(p4, g);
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(verify_lcl(p4, g, r.solutions[0]).ok);

  // odd cycle is not 2-colorable; exhaustive search proves it
  auto p2 = make_coloring_lcl(2, 3);
  CHECK(brute_force_solve(p2, g).status == SolveStatus::Unsolvable);
}

TEST_CASE("brute_force_solve budget exhaustion is distinct") {
  auto p = make_coloring_lcl(4, 3);
  auto g = cycle_graph(5);
  SolveOptions opt;
  opt.max_nodes = 2;
  CHECK(brute_force_solve(p, g, opt).status == SolveStatus::BudgetExceeded);
}

TEST_CASE("brute_force_solve RE 4-coloring on K4") {
  auto p = make_coloring_re(4);
  auto g = complete_graph(4);
  auto r = brute_force_solve(p, g);
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(verify_re(p, g, r.re_solutions[0]).ok);
  // each node's half-edges are uniform
  for (VertexId v : g.vertices()) {
    std::set<ReLabel> seen;
    for (VertexId w : g.neighbors(v))
      seen.insert(r.re_solutions[0].get(v, edge_key(v, w)));
    CHECK(seen.size() == 1);
  }
}

TEST_CASE("brute_force_solve PN coloring") {
  auto p = make_coloring_pn(3);
  auto g = cycle_graph(6);
  auto r = brute_force_solve(p, g);
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(verify_pn(p, g, r.solutions[0]).ok);
}

TEST_CASE("brute_force_solve matching and verifier round trip") {
  auto p = make_matching_lcl(3);
  auto g = complete_graph(4);
  SolveOptions opt;
  opt.max_solutions = 1000;
  auto r = brute_force_solve(p, g, opt);
  REQUIRE(r.status == SolveStatus::Found);
  for (const auto& sol : r.solutions) CHECK(verify_lcl(p, g, sol).ok);
  // K4 maximal matchings are the 3 perfect matchings
  CHECK(r.solutions.size() == 3);
}

TEST_CASE("explicit constraint sets behave like their oracle") {
  // accepted balls: a center with one neighbor, both labeled differently
  auto g2 = complete_graph(2);
  std::vector<LabeledBall> members;
  for (int a = 0; a < 2; ++a) {
    Labeling out;
    out.node[0] = a;
    out.node[1] = 1 - a;
    members.push_back(LabeledBall{ball(g2, 0, 1), out});
  }
  LCLProblem p;
  p.max_degree = 1;
  p.out_alphabet = {0, 1};
  p.radius = 1;
  p.constraint = explicit_lcl_oracle(members);

  auto good = node_labeling({{0, 1}, {1, 0}});
  CHECK(verify_lcl(p, g2, good).ok);
  auto bad = node_labeling({{0, 1}, {1, 1}});
  CHECK_FALSE(verify_lcl(p, g2, bad).ok);
}

TEST_CASE("solver solutions always pass the verifier (random instances)") {
  std::mt19937 rng(99);
  for (int it = 0; it < 10; ++it) {
    auto g = cycle_graph(3 + static_cast<int>(rng() % 4));
    auto p = make_coloring_lcl(3 + rng() % 2, 3);
    SolveOptions opt;
    opt.max_solutions = 50;
    auto r = brute_force_solve(p, g, opt);
    if (r.status != SolveStatus::Found) continue;
    for (const auto& sol : r.solutions) CHECK(verify_lcl(p, g, sol).ok);
  }
}
