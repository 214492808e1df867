//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "lclre/sim.hpp"
#include "lclre/solve.hpp"

using namespace lclre;
using fixtures::complete_graph;
using fixtures::cycle_graph;

namespace {

LabeledGraph labeled_k2(int lu, int lv) {
  LabeledGraph g;
  g.add_vertex(0);
  g.add_vertex(1);
  g.add_edge(0, 1);
  g.set_node_label(0, lu);
  g.set_node_label(1, lv);
  return g;
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a * b == Rational(1, 18));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("run_local constant and id-parity algorithms") {
  auto inst = make_sim_instance(cycle_graph(5));

  LocalAlgorithm constant{0, [](const AnnotatedBall&) { return 7; }, "const"};
  auto r = run_local(constant, inst);
  for (const auto& [v, l] : r.out.node) {
    (void)v;
    CHECK(l == 7);
  }

  LocalAlgorithm parity{
      0,
      [](const AnnotatedBall& b) {
        return static_cast<int>(b.ids.at(b.ball.center) % 2);
      },
      "parity"};
  auto r2 = run_local(parity, inst);
  for (VertexId v : inst.graph.vertices()) CHECK(r2.out.node.at(v) == v % 2);

  // determinism: a pure function of (graph, ids, inputs, algorithm)
  auto r3 = run_local(parity, inst);
  CHECK(r3.out == r2.out);

  LocalAlgorithm tooFar{100, [](const AnnotatedBall&) { return 0; }, "far"};
  CHECK_THROWS_AS(run_local(tooFar, inst), std::invalid_argument);
}

TEST_CASE("run_slocal greedy coloring is valid for any order") {
  auto g = complete_graph(4);
  auto inst = make_sim_instance(g);
  SequentialAlgorithm greedy{
      1,
      [](const AnnotatedBall& b, const Labeling& fixed) {
        std::set<int> used;
        for (VertexId u : b.ball.graph.neighbors(b.ball.center)) {
          auto it = fixed.node.find(u);
          if (it != fixed.node.end()) used.insert(it->second);
        }
        int c = 0;
        while (used.count(c)) ++c;
        return c;
      },
      "greedy"};

  auto p = make_coloring_lcl(4, 3);
  for (auto order : std::vector<std::vector<VertexId>>{
           {0, 1, 2, 3}, {3, 2, 1, 0}, {2, 0, 3, 1}}) {
    auto r = run_slocal(greedy, inst, order);
    CHECK(verify_lcl(p, g, r.out).ok);
    for (const auto& [v, c] : r.out.node) {
      (void)v;
      CHECK(c <= 3);  // at most Delta+1 colors
    }
  }

  CHECK_THROWS_AS(run_slocal(greedy, inst, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("run_slocal order-dependence on a path") {
  LabeledGraph p3;
  for (int i = 0; i < 3; ++i) p3.add_vertex(i);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  auto inst = make_sim_instance(p3);
  SequentialAlgorithm greedy{
      1,
      [](const AnnotatedBall& b, const Labeling& fixed) {
        std::set<int> used;
        for (VertexId u : b.ball.graph.neighbors(b.ball.center)) {
          auto it = fixed.node.find(u);
          if (it != fixed.node.end()) used.insert(it->second);
        }
        int c = 0;
        while (used.count(c)) ++c;
        return c;
      },
      "greedy"};
  // middle first: ends both get color 1; ends first: middle gets 1
  auto a = run_slocal(greedy, inst, {1, 0, 2});
  auto b = run_slocal(greedy, inst, {0, 2, 1});
  CHECK(a.out.node != b.out.node);
  auto p = make_coloring_lcl(2, 2);
  CHECK(verify_lcl(p, p3, a.out).ok);
  CHECK(verify_lcl(p, p3, b.out).ok);
}

TEST_CASE("distance_k_coloring validity") {
  // P3, k=1: middle differs from both ends
  LabeledGraph p3;
  for (int i = 0; i < 3; ++i) p3.add_vertex(i);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  auto o = distance_k_coloring(make_sim_instance(p3), 1);
  CHECK(o.chi.at(1) != o.chi.at(0));
  CHECK(o.chi.at(1) != o.chi.at(2));
  std::set<std::int64_t> used;
  for (const auto& [v, c] : o.chi) {
    (void)v;
    used.insert(c);
  }
  CHECK(used.size() <= 3);

  // C6, k=2: no two vertices within distance 2 share a color
  auto c6 = cycle_graph(6);
  auto o2 = distance_k_coloring(make_sim_instance(c6), 2);
  for (VertexId v : c6.vertices())
    for (const auto& [u, d] : bfs_distances(c6, v))
      if (u != v && d <= 2) CHECK(o2.chi.at(u) != o2.chi.at(v));
  CHECK(o2.color_bound >= 5);
}

TEST_CASE("distance_k_edge_coloring feeds the gadget pipeline") {
  auto g = complete_graph(4);
  auto col = distance_k_edge_coloring(g, 2);
  // all 6 edges of K4 conflict pairwise at distance <= 2
  std::set<std::int64_t> colors;
  for (const auto& [e, c] : col) {
    (void)e;
    colors.insert(c);
  }
  CHECK(colors.size() == 6);
  // and the gadgeting accepts it
  auto gg = gadget_bd(g, col, 1);
  CHECK(gg.graph.is_regular(3));
}

TEST_CASE("simulate_a1_prime matches decode-run-lift exactly") {
  AbScheme scheme;
  int lambda = ab_lambda(scheme);
  auto g = labeled_k2(1, 2);
  auto enc = encode_ab(g, scheme);

  for (int T : {0, 1}) {
    LocalAlgorithm algA{
        T,
        [](const AnnotatedBall& b) {
          // arbitrary deterministic function of the annotated view
          int acc = b.ball.graph.node_label(b.ball.center);
          for (VertexId u : b.ball.graph.vertices())
            acc += static_cast<int>(b.ids.at(u) % 5) +
                   b.ball.graph.degree(u);
          return acc;
        },
        "probe"};
    auto sim = simulate_a1_prime(algA, enc.graph, scheme, -7);
    auto ref = decode_run_lift(algA, enc.graph, scheme, -7);
    CHECK(sim.out == ref.out);
    for (const auto& [v, rad] : sim.ledger) {
      (void)v;
      CHECK(rad <= lambda * T + 3 * lambda);
    }
  }

  LocalAlgorithm constant{0, [](const AnnotatedBall&) { return 3; }, "const"};
  auto sim = simulate_a1_prime(constant, enc.graph, scheme, -7);
  for (const auto& [u, set] : enc.dm.node_sets) {
    (void)u;
    for (VertexId v : set) CHECK(sim.out.node.at(v) == 3);
  }
  for (const auto& item : enc.dm.edge_items)
    for (VertexId v : item.set) CHECK(sim.out.node.at(v) == -7);
}

TEST_CASE("simulate_a1_prime on a gadget-free graph is uniform too") {
  AbScheme scheme;
  LabeledGraph g;  // K_{3,3}: all vertices decode to themselves as defaults
  for (int i = 0; i < 6; ++i) g.add_vertex(i);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) g.add_edge(i, j);
  LocalAlgorithm algA{0,
                      [](const AnnotatedBall& b) {
                        return b.ball.graph.node_label(b.ball.center) + 100;
                      },
                      "read"};
  auto sim = simulate_a1_prime(algA, g, scheme, -7);
  auto ref = decode_run_lift(algA, g, scheme, -7);
  CHECK(sim.out == ref.out);
  for (const auto& [v, l] : sim.out.node) {
    (void)v;
    CHECK(l == scheme.bot_label + 100);
  }
}

TEST_CASE("simulate_a2_prime matches encode-run-liftback with locality T") {
  AbScheme scheme;
  std::vector<LabeledGraph> instances{labeled_k2(0, 1)};
  {
    LabeledGraph tri = complete_graph(3);
    for (VertexId v : tri.vertices()) tri.set_node_label(v, (v * 7) % 3);
    instances.push_back(tri);
  }
  for (const auto& g : instances) {
    for (int T : {0, 1, 2}) {
      LocalAlgorithm algB{
          T,
          [](const AnnotatedBall& b) {
            int acc = 0;
            for (VertexId u : b.ball.graph.vertices())
              acc = acc * 31 % 1000003 + static_cast<int>(b.ids.at(u) % 97) +
                    b.ball.graph.degree(u);
            return acc % 1000;
          },
          "probe"};
      auto sim = simulate_a2_prime(algB, g, scheme);
      auto ref = encode_run_liftback(algB, g, scheme);
      CHECK(sim.out == ref.out);
      for (const auto& [v, rad] : sim.ledger) {
        (void)v;
        CHECK(rad == T);
      }
    }
  }
}

TEST_CASE("outcome validation and success accounting") {
  auto g = cycle_graph(5);
  auto p = make_coloring_lcl(3, 3);
  auto legal = [&](const Labeling& l) { return verify_lcl(p, g, l).ok; };

  SolveOptions opt;
  opt.max_solutions = 2;
  auto sols = brute_force_solve(p, g, opt);
  REQUIRE(sols.solutions.size() == 2);
  Labeling bad;
  for (VertexId v : g.vertices()) bad.node[v] = 0;

  Outcome o;
  o.support.push_back({sols.solutions[0], Rational(7, 10)});
  o.support.push_back({bad, Rational(3, 10)});
  CHECK(success_probability(legal, o) == Rational(7, 10));

  Outcome badSum = o;
  badSum.support[1].second = Rational(1, 10);
  CHECK_THROWS_AS(validate_outcome(badSum), std::invalid_argument);
}

TEST_CASE("outcome lifting preserves success probability across encoding") {
  AbScheme scheme;
  auto A = make_coloring_lcl(2, 3);
  auto g = labeled_k2(1, 1);
  auto enc = encode_ab(g, scheme);
  auto B = make_problem_b(A, scheme);

  auto liftFn = [&](const Labeling& l) {
    return lift_out_a_to_b(l, enc.dm, enc.graph, A.out_alphabet[0]);
  };
  auto srcLegal = [&](const Labeling& l) { return verify_lcl(A, g, l).ok; };
  auto dstLegal = [&](const Labeling& l) { return verify_lcl(B, enc.graph, l).ok; };

  Labeling good, flipped, bad;
  good.node[0] = 0;
  good.node[1] = 1;
  flipped.node[0] = 1;
  flipped.node[1] = 0;
  bad.node[0] = 1;
  bad.node[1] = 1;

  // point mass on a legal labeling: success 1 -> 1
  Outcome point;
  point.support.push_back({good, Rational(1)});
  auto lifted = lift_outcome(point, liftFn, srcLegal, dstLegal);
  CHECK(lifted.src_success == Rational(1));
  CHECK(lifted.dst_success == Rational(1));

  // mixture: lifted success >= source success
  Outcome mix;
  mix.support.push_back({good, Rational(2, 5)});
  mix.support.push_back({flipped, Rational(3, 10)});
  mix.support.push_back({bad, Rational(3, 10)});
  auto l2 = lift_outcome(mix, liftFn, srcLegal, dstLegal);
  CHECK(l2.src_success == Rational(7, 10));
  CHECK(l2.dst_success >= l2.src_success);
}
