//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lclre/encode_ab.hpp"
#include "lclre/gadget_bd.hpp"
#include "lclre/json_io.hpp"
#include "lclre/problem.hpp"
#include "lclre/re_compile.hpp"
#include "lclre/sim.hpp"
#include "lclre/solve.hpp"

namespace lclre {

// ---------------------------------------------------------------------------
// Configuration. Derived constants are always recomputed from the inputs;
// a loaded file carrying stale values is rejected.

struct PipelineBudgets {
  std::int64_t solve_nodes = 5'000'000;
  int max_solutions = 64;
  std::int64_t theorem_nodes = 200'000'000;
  std::int64_t max_view_radius = 64;
};

struct PipelineConfig {
  int r_a = 1;
  int max_degree = 3;
  int max_label = 2;
  std::uint64_t seed = 1;
  PipelineBudgets budgets;

  // derived
  int lambda = 0;
  std::int64_t r_b = 0;
  std::int64_t k = 0;
  std::int64_t r_d = 0;
  bool zeta_exact = false;
  std::int64_t zeta = -1;

  void recompute() {
    AbScheme s{max_degree, max_label, 0};
    lambda = ab_lambda(s);
    r_b = static_cast<std::int64_t>(lambda) * r_a;
    if (r_b >= 1 && r_b < 62) {
      k = DConstants::ball_edge_bound(r_b) + 1;
      r_d = (4 * k + 1) * r_b + 1;
      if (r_d < 62) {
        zeta_exact = true;
        zeta = DConstants::ball_vertex_bound(r_d) + 1;
      } else {
        zeta_exact = false;
        zeta = -1;
      }
    } else {
      k = -1;
      r_d = -1;
      zeta_exact = false;
      zeta = -1;
    }
  }

  json to_json() const {
    json j;
    j["r_a"] = r_a;
    j["max_degree"] = max_degree;
    j["max_label"] = max_label;
    j["seed"] = seed;
    j["budgets"] = {{"solve_nodes", budgets.solve_nodes},
                    {"max_solutions", budgets.max_solutions},
                    {"theorem_nodes", budgets.theorem_nodes},
                    {"max_view_radius", budgets.max_view_radius}};
    j["derived"] = {{"lambda", lambda}, {"r_b", r_b},      {"k", k},
                    {"r_d", r_d},       {"zeta_exact", zeta_exact},
                    {"zeta", zeta}};
    return j;
  }

  static PipelineConfig from_json(const json& j) {
    PipelineConfig c;
    c.r_a = j.value("r_a", 1);
    c.max_degree = j.value("max_degree", 3);
    c.max_label = j.value("max_label", 2);
    c.seed = j.value("seed", 1);
    if (j.contains("budgets")) {
      const auto& b = j.at("budgets");
      c.budgets.solve_nodes = b.value("solve_nodes", c.budgets.solve_nodes);
      c.budgets.max_solutions = b.value("max_solutions", c.budgets.max_solutions);
      c.budgets.theorem_nodes = b.value("theorem_nodes", c.budgets.theorem_nodes);
      c.budgets.max_view_radius =
          b.value("max_view_radius", c.budgets.max_view_radius);
    }
    c.recompute();
    if (j.contains("derived")) {
      const auto& d = j.at("derived");
      if (d.value("lambda", c.lambda) != c.lambda ||
          d.value("r_b", c.r_b) != c.r_b || d.value("k", c.k) != c.k ||
          d.value("r_d", c.r_d) != c.r_d)
        throw std::invalid_argument(
            "config: stale derived constants, recompute disagrees");
    }
    return c;
  }

  AbScheme scheme() const { return AbScheme{max_degree, max_label, 0}; }
};

// ---------------------------------------------------------------------------
// Reports.

struct StageReport {
  std::string name;
  bool ok = false;
  bool budget_exceeded = false;
  std::string detail;
  json extras = json::object();
  double ms = 0;
};

struct RunReport {
  std::vector<StageReport> stages;

  bool all_ok() const {
    for (const auto& s : stages)
      if (!s.ok) return false;
    return true;
  }
  bool any_budget_exceeded() const {
    for (const auto& s : stages)
      if (s.budget_exceeded) return true;
    return false;
  }
  // timings are excluded from the reproducible comparison form
  json to_json(bool include_timings = false) const {
    json j;
    j["stages"] = json::array();
    for (const auto& s : stages) {
      json e;
      e["name"] = s.name;
      e["ok"] = s.ok;
      e["budget_exceeded"] = s.budget_exceeded;
      e["detail"] = s.detail;
      e["extras"] = s.extras;
      if (include_timings) e["ms"] = s.ms;
      j["stages"].push_back(e);
    }
    j["ok"] = all_ok();
    return j;
  }
};

namespace pipeline_detail {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace pipeline_detail

// ---------------------------------------------------------------------------
// Stage drivers. Each one checks the forward lift on every solution found,
// the backward lift (including output noise outside the constrained
// region), and one corrupted-output rejection.

struct StageAbArtifacts {
  EncodeAbResult enc;
  LCLProblem B;
  std::vector<Labeling> a_solutions;
  std::vector<Labeling> b_outputs;
};

inline StageReport run_stage_ab(const LCLProblem& A, const LabeledGraph& g,
                                const AbScheme& scheme,
                                const PipelineBudgets& budgets,
                                std::uint64_t seed, StageAbArtifacts* artifacts) {
  pipeline_detail::Timer timer;
  StageReport rep;
  rep.name = "a-to-b";

  SolveOptions opt;
  opt.max_nodes = budgets.solve_nodes;
  opt.max_solutions = budgets.max_solutions;
  auto sols = brute_force_solve(A, g, opt);
  if (sols.status == SolveStatus::BudgetExceeded) {
    rep.budget_exceeded = true;
    rep.detail = "source solve budget exceeded";
    rep.ms = timer.ms();
    return rep;
  }
  if (sols.status == SolveStatus::Unsolvable) {
    rep.detail = "source instance unsolvable";
    rep.ms = timer.ms();
    return rep;
  }

  auto enc = encode_ab(g, scheme);
  auto B = make_problem_b(A, scheme);
  int bot = A.out_alphabet.at(0);
  std::mt19937_64 rng(seed);

  std::size_t forward_ok = 0, backward_ok = 0;
  bool negative_ok = true;
  std::vector<Labeling> bouts;
  for (const auto& aout : sols.solutions) {
    Labeling bout = lift_out_a_to_b(aout, enc.dm, enc.graph, bot);
    if (!verify_lcl(B, enc.graph, bout).ok) break;
    ++forward_ok;
    bouts.push_back(bout);

    // noise on the unconstrained region must not affect legality
    Labeling noisy = bout;
    for (const auto& item : enc.dm.edge_items)
      for (VertexId v : item.set)
        noisy.node[v] = A.out_alphabet[rng() % A.out_alphabet.size()];
    if (!verify_lcl(B, enc.graph, noisy).ok) break;
    auto back = lift_out_b_to_a(noisy, enc.dm);
    if (!(back == aout)) break;
    if (!verify_lcl(A, g, back).ok) break;
    ++backward_ok;
  }
  {
    // corrupting a whole gadget to a constraint-violating value must reject
    Labeling bad = lift_out_a_to_b(sols.solutions.front(), enc.dm, enc.graph, bot);
    auto aBad = sols.solutions.front();
    VertexId u = aBad.node.begin()->first;
    for (int candidate : A.out_alphabet) {
      aBad.node[u] = candidate;
      if (!verify_lcl(A, g, aBad).ok) break;
    }
    if (verify_lcl(A, g, aBad).ok) {
      // every relabeling of u stays legal; skip the negative probe
    } else {
      for (VertexId v : enc.dm.node_sets.at(u)) bad.node[v] = aBad.node[u];
      if (verify_lcl(B, enc.graph, bad).ok) negative_ok = false;
    }
  }

  rep.ok = forward_ok == sols.solutions.size() &&
           backward_ok == sols.solutions.size() && negative_ok;
  rep.detail = "solutions=" + std::to_string(sols.solutions.size()) +
               " forward=" + std::to_string(forward_ok) +
               " backward=" + std::to_string(backward_ok) +
               (negative_ok ? "" : " negative-probe-failed");
  rep.extras["encoded_vertices"] = enc.graph.num_vertices();
  rep.ms = timer.ms();
  if (artifacts) {
    artifacts->enc = std::move(enc);
    artifacts->B = std::move(B);
    artifacts->a_solutions = std::move(sols.solutions);
    artifacts->b_outputs = std::move(bouts);
  }
  return rep;
}

struct StageBdArtifacts {
  GadgetedGraph gg;
  DConstants dc;
  std::shared_ptr<DLabelTable> table;
  PNProblem D;
  std::vector<Labeling> b_solutions;
  std::vector<Labeling> d_outputs;
};

inline StageReport run_stage_bd(const LCLProblem& B, const LabeledGraph& g3,
                                int r_b, const PipelineBudgets& budgets,
                                std::uint64_t seed, StageBdArtifacts* artifacts) {
  pipeline_detail::Timer timer;
  StageReport rep;
  rep.name = "b-to-d";

  if (!g3.is_regular(3) || !g3.is_simple()) {
    rep.detail = "instance must be simple 3-regular";
    rep.ms = timer.ms();
    return rep;
  }
  DConstants dc = DConstants::from_rb(r_b);
  if (dc.r_d > budgets.max_view_radius) {
    rep.budget_exceeded = true;
    rep.detail = "r_d=" + std::to_string(dc.r_d) +
                 " exceeds the view-radius budget " +
                 std::to_string(budgets.max_view_radius);
    rep.ms = timer.ms();
    return rep;
  }

  auto coloring = distance_k_edge_coloring(g3, 2 * r_b);
  std::int64_t maxColor = 0;
  for (const auto& [e, c] : coloring) {
    (void)e;
    maxColor = std::max(maxColor, c);
  }
  if (maxColor > dc.k - 1) {
    // chains longer than k-1 push neighbors beyond the view margin; the
    // restricted views could no longer span their gballs
    rep.detail = "edge coloring needs " + std::to_string(maxColor) +
                 " colors, above the usable bound " + std::to_string(dc.k - 1);
    rep.ms = timer.ms();
    return rep;
  }

  SolveOptions opt;
  opt.max_nodes = budgets.solve_nodes;
  opt.max_solutions = budgets.max_solutions;
  auto sols = brute_force_solve(B, g3, opt);
  if (sols.status == SolveStatus::BudgetExceeded) {
    rep.budget_exceeded = true;
    rep.detail = "source solve budget exceeded";
    rep.ms = timer.ms();
    return rep;
  }
  if (sols.status == SolveStatus::Unsolvable) {
    rep.detail = "source instance unsolvable";
    rep.ms = timer.ms();
    return rep;
  }

  auto gg = gadget_bd(g3, coloring, r_b);
  auto table = std::make_shared<DLabelTable>();
  auto D = make_problem_d(B, dc, table);

  // the palette only needs validity; an injective-in-every-view coloring is
  // found greedily on the power graph
  auto chi = distance_k_coloring(make_sim_instance(gg.graph),
                                 static_cast<int>(std::min<std::int64_t>(
                                     2 * dc.r_d, budgets.max_view_radius * 4)))
                 .chi;

  std::mt19937_64 rng(seed);
  std::size_t forward_ok = 0, backward_ok = 0;
  bool negative_ok = true;
  std::vector<Labeling> douts;
  int bot = B.out_alphabet.at(0);
  for (const auto& bout : sols.solutions) {
    Labeling dout = lift_b_to_d(bout, chi, gg, dc, *table, bot);
    if (!verify_pn(D, gg.graph, dout).ok) break;
    ++forward_ok;
    douts.push_back(dout);

    // payloads on gadget vertices are never read back
    Labeling noisy = dout;
    for (const auto& xe : gg.expanded)
      for (VertexId v : xe.chain)
        noisy.node[v] = table->pack(chi.at(v),
                                    B.out_alphabet[rng() % B.out_alphabet.size()]);
    if (!verify_pn(D, gg.graph, noisy).ok) break;
    auto back = lift_d_to_b(noisy, gg, *table);
    if (!(back == bout)) break;
    if (!verify_lcl(B, g3, back).ok) break;
    ++backward_ok;
  }
  {
    Labeling bad = douts.empty()
                       ? Labeling{}
                       : douts.front();
    if (!bad.node.empty()) {
      auto bBad = sols.solutions.front();
      VertexId u = bBad.node.begin()->first;
      for (int candidate : B.out_alphabet) {
        bBad.node[u] = candidate;
        if (!verify_lcl(B, g3, bBad).ok) break;
      }
      if (!verify_lcl(B, g3, bBad).ok) {
        bad.node[u] = table->pack(chi.at(u), bBad.node[u]);
        if (verify_pn(D, gg.graph, bad).ok) negative_ok = false;
      }
    }
  }

  rep.ok = forward_ok == sols.solutions.size() &&
           backward_ok == sols.solutions.size() && negative_ok;
  rep.detail = "solutions=" + std::to_string(sols.solutions.size()) +
               " forward=" + std::to_string(forward_ok) +
               " backward=" + std::to_string(backward_ok) +
               (negative_ok ? "" : " negative-probe-failed");
  rep.extras["gadgeted_vertices"] = gg.graph.num_vertices();
  rep.extras["r_d"] = dc.r_d;
  rep.ms = timer.ms();
  if (artifacts) {
    artifacts->gg = std::move(gg);
    artifacts->dc = dc;
    artifacts->table = table;
    artifacts->D = std::move(D);
    artifacts->b_solutions = std::move(sols.solutions);
    artifacts->d_outputs = std::move(douts);
  }
  return rep;
}

struct StageDeArtifacts {
  std::shared_ptr<ReContext> ctx;
  std::vector<HalfEdgeLabeling> e_outputs;
};

inline StageReport run_stage_de(const PNProblem& D, const LabeledGraph& g3,
                                const std::vector<Labeling>& d_solutions,
                                StageDeArtifacts* artifacts) {
  pipeline_detail::Timer timer;
  StageReport rep;
  rep.name = "d-to-e";

  auto ctx = std::make_shared<ReContext>();
  ctx->radius = D.radius;
  ctx->d_oracle = D.constraint;
  auto E = problem_e(ctx);

  std::size_t forward_ok = 0, backward_ok = 0, tgood_ok = 0;
  std::vector<HalfEdgeLabeling> hels;
  for (const auto& dout : d_solutions) {
    HalfEdgeLabeling hel;
    try {
      hel = lift_d_to_e(g3, dout, ctx);
    } catch (const std::invalid_argument&) {
      break;
    }
    if (!verify_re(E, g3, hel).ok) break;
    ++forward_ok;
    hels.push_back(hel);

    auto back = lift_e_to_d(g3, hel, ctx);
    if (!(back == dout)) break;
    ++backward_ok;

    if (t_good_layers(g3, hel, dout, ctx)) ++tgood_ok;
  }
  bool negative_ok = true;
  if (!hels.empty()) {
    // swapping the two half-edge labels across one edge breaks the fit
    HalfEdgeLabeling bad = hels.front();
    auto e = g3.edges().begin()->first;
    ReLabel l1 = bad.get(e.first, e);
    ReLabel l2 = bad.get(e.second, e);
    if (l1 != l2) {
      bad.set(e.first, e, l2);
      bad.set(e.second, e, l1);
      if (verify_re(E, g3, bad).ok) negative_ok = false;
    }
  }

  rep.ok = forward_ok == d_solutions.size() &&
           backward_ok == d_solutions.size() && tgood_ok == d_solutions.size() &&
           negative_ok;
  rep.detail = "solutions=" + std::to_string(d_solutions.size()) +
               " forward=" + std::to_string(forward_ok) +
               " backward=" + std::to_string(backward_ok) + " t-good=" +
               std::to_string(tgood_ok) +
               (negative_ok ? "" : " negative-probe-failed");
  rep.extras["distinct_views"] = ctx->views.size();
  rep.ms = timer.ms();
  if (artifacts) {
    artifacts->ctx = ctx;
    artifacts->e_outputs = std::move(hels);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Built-in simulation algorithms for the CLI.

inline LocalAlgorithm builtin_local_algorithm(const std::string& name) {
  if (name.rfind("const:", 0) == 0) {
    int value = std::stoi(name.substr(6));
    return LocalAlgorithm{0, [value](const AnnotatedBall&) { return value; },
                          name};
  }
  if (name == "id-parity")
    return LocalAlgorithm{0,
                          [](const AnnotatedBall& b) {
                            return static_cast<int>(
                                b.ids.at(b.ball.center) % 2);
                          },
                          name};
  if (name == "read-label")
    return LocalAlgorithm{0,
                          [](const AnnotatedBall& b) {
                            return b.ball.graph.node_label(b.ball.center);
                          },
                          name};
  if (name == "ball-hash")
    return LocalAlgorithm{1,
                          [](const AnnotatedBall& b) {
                            int acc = b.ball.graph.node_label(b.ball.center);
                            for (VertexId u : b.ball.graph.vertices())
                              acc = acc * 31 % 1000003 +
                                    static_cast<int>(b.ids.at(u) % 97) +
                                    b.ball.graph.degree(u);
                            return acc % 1000;
                          },
                          name};
  throw std::invalid_argument("unknown local algorithm: " + name);
}

inline SequentialAlgorithm builtin_sequential_algorithm(const std::string& name) {
  if (name == "greedy-color")
    return SequentialAlgorithm{
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
        name};
  throw std::invalid_argument("unknown sequential algorithm: " + name);
}

}  // namespace lclre
