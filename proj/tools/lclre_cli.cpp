//
// lclre - Copyright 2026 the lclre authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Exit codes: 0 pass, 1 verification failure,
// 2 input error, 3 budget exceeded.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lclre/json_io.hpp"
#include "lclre/pipeline.hpp"

using namespace lclre;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;
constexpr int kBudgetExceeded = 3;

PipelineBudgets budgets_from_env() {
  PipelineBudgets b;
  if (const char* s = std::getenv("LCLRE_SOLVE_NODES")) b.solve_nodes = std::atoll(s);
  if (const char* s = std::getenv("LCLRE_MAX_SOLUTIONS")) b.max_solutions = std::atoi(s);
  if (const char* s = std::getenv("LCLRE_THEOREM_NODES")) b.theorem_nodes = std::atoll(s);
  if (const char* s = std::getenv("LCLRE_MAX_VIEW_RADIUS"))
    b.max_view_radius = std::atoll(s);
  return b;
}

void emit(const std::string& path, const json& j) {
  if (path.empty() || path == "-")
    std::cout << j.dump(2) << "\n";
  else
    save_json(path, j);
}

std::map<EdgeKey, std::int64_t> coloring_from_json(const json& j) {
  std::map<EdgeKey, std::int64_t> col;
  for (const auto& [k, v] : j.items())
    col[parse_edge_name(k)] = v.get<std::int64_t>();
  return col;
}

json coloring_to_json(const std::map<EdgeKey, std::int64_t>& col) {
  json j = json::object();
  for (const auto& [e, c] : col) j[edge_name(e)] = c;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lclre: reductions between locally checkable labeling formalisms"};
  app.require_subcommand(1);

  std::string problemPath, instancePath, outputPath, outPath = "-";
  std::string coloringSpec = "auto", format = "json", direction = "forward";
  std::string mode = "local", algName = "const:0", helPath, viewsPath;
  std::string configPath, fromStage = "a", toStage = "e", decodeMapPath;
  std::string classesPath, orderSpec;
  int rb = 1, botLabel = 0, maxDegree = 3, maxLabel = 2;
  std::int64_t budgetNodes = -1;
  std::size_t maxVertices = 48;
  int maxSolutions = -1;

  auto addProblem = [&](CLI::App* c) {
    c->add_option("--problem", problemPath, "problem JSON")->required();
  };
  auto addInstance = [&](CLI::App* c) {
    c->add_option("--instance", instancePath, "instance graph JSON")->required();
  };
  auto addOut = [&](CLI::App* c) {
    c->add_option("-o,--out", outPath, "output path ('-' for stdout)");
  };
  auto addScheme = [&](CLI::App* c) {
    c->add_option("--max-degree", maxDegree, "encoding scheme max degree");
    c->add_option("--max-label", maxLabel, "encoding scheme max node label");
  };

  auto* cVerify = app.add_subcommand("verify", "check an output labeling");
  addProblem(cVerify);
  addInstance(cVerify);
  cVerify->add_option("--output", outputPath, "output labeling JSON")->required();
  cVerify->add_option("-o,--out", outPath, "verdict output path");

  auto* cSolve = app.add_subcommand("solve", "brute-force a valid output");
  addProblem(cSolve);
  addInstance(cSolve);
  addOut(cSolve);
  cSolve->add_option("--budget", budgetNodes, "search node budget");
  cSolve->add_option("--max-solutions", maxSolutions, "solutions to collect");

  auto* cEncode = app.add_subcommand("encode-ab", "encode a labeled instance");
  addInstance(cEncode);
  addOut(cEncode);
  addScheme(cEncode);
  cEncode->add_option("--decode-map", decodeMapPath, "also write the decode map");

  auto* cDecode = app.add_subcommand("decode-ab", "decode a 3-regular graph");
  addInstance(cDecode);
  addOut(cDecode);
  addScheme(cDecode);
  cDecode->add_option("--decode-map", decodeMapPath, "also write the decode map");

  auto* cLiftAb = app.add_subcommand("lift-ab", "lift outputs across the encoding");
  addInstance(cLiftAb);
  addOut(cLiftAb);
  addScheme(cLiftAb);
  cLiftAb->add_option("--direction", direction, "forward (source->encoded) or back");
  cLiftAb->add_option("--output", outputPath, "output labeling JSON")->required();
  cLiftAb->add_option("--bot", botLabel, "default label for unconstrained vertices");

  auto* cGadget = app.add_subcommand("gadget-bd", "expand edges into gadget chains");
  addInstance(cGadget);
  addOut(cGadget);
  cGadget->add_option("--rb", rb, "source checkability radius");
  cGadget->add_option("--coloring", coloringSpec, "auto or a coloring JSON path");

  auto* cContract = app.add_subcommand("contract-db", "contract expanded edges");
  addInstance(cContract);
  addOut(cContract);

  auto* cTheorem = app.add_subcommand("check-theorem",
                                      "brute-force the coloring statement");
  addInstance(cTheorem);
  addOut(cTheorem);
  cTheorem->add_option("--r", rb, "gball radius");
  cTheorem->add_option("--budget", budgetNodes, "search node budget");
  cTheorem->add_option("--max-vertices", maxVertices, "vertex budget");

  auto* cCompile = app.add_subcommand("compile-re",
                                      "describe the compiled half-edge problem");
  addProblem(cCompile);
  addOut(cCompile);
  cCompile->add_option("--rb", rb, "source checkability radius");

  auto* cLiftDe = app.add_subcommand("lift-de", "lift view outputs to half-edges");
  addProblem(cLiftDe);
  addInstance(cLiftDe);
  addOut(cLiftDe);
  cLiftDe->add_option("--rb", rb, "source checkability radius");
  cLiftDe->add_option("--output", outputPath, "paired view labeling JSON")->required();
  cLiftDe->add_option("--views", viewsPath, "also write the view side table");

  auto* cLiftEd = app.add_subcommand("lift-ed", "read view outputs off half-edges");
  addProblem(cLiftEd);
  addInstance(cLiftEd);
  addOut(cLiftEd);
  cLiftEd->add_option("--rb", rb, "source checkability radius");
  cLiftEd->add_option("--hel", helPath, "half-edge labeling JSON")->required();
  cLiftEd->add_option("--views", viewsPath, "view side table JSON")->required();

  auto* cSim = app.add_subcommand("simulate", "run a local algorithm");
  addInstance(cSim);
  addOut(cSim);
  addScheme(cSim);
  cSim->add_option("--mode", mode, "local | slocal | a1 | a2");
  cSim->add_option("--alg", algName, "builtin:<name>, e.g. builtin:ball-hash");
  cSim->add_option("--order", orderSpec, "comma-separated order for slocal");
  cSim->add_option("--ledger", classesPath, "also write the locality ledger");

  auto* cPipeline = app.add_subcommand("pipeline", "run reduction stages end to end");
  addProblem(cPipeline);
  addInstance(cPipeline);
  addOut(cPipeline);
  cPipeline->add_option("--from", fromStage, "a (labeled LCL) or b (3-regular LCL)");
  cPipeline->add_option("--to", toStage, "b, d or e");
  cPipeline->add_option("--config", configPath, "pipeline config JSON");

  auto* cExport = app.add_subcommand("export", "export a graph");
  addInstance(cExport);
  addOut(cExport);
  cExport->add_option("--format", format, "dot | json");
  cExport->add_option("--classes", classesPath, "vertex class JSON for styling");

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineBudgets budgets = budgets_from_env();
    if (budgetNodes > 0) {
      budgets.solve_nodes = budgetNodes;
      budgets.theorem_nodes = budgetNodes;
    }
    AbScheme scheme{maxDegree, maxLabel, 0};

    if (cVerify->parsed()) {
      auto spec = problem_from_json(load_json(problemPath));
      auto g = graph_from_json(load_json(instancePath));
      Verdict v;
      if (spec.formalism == "lcl")
        v = verify_lcl(spec.lcl, g, labeling_from_json(load_json(outputPath)));
      else if (spec.formalism == "pn")
        v = verify_pn(spec.pn, g, labeling_from_json(load_json(outputPath)));
      else
        v = verify_re(spec.re, g,
                      half_edge_labeling_from_json(load_json(outputPath)));
      emit(outPath, verdict_to_json(v));
      return v.ok ? kOk : kVerificationFailure;
    }

    if (cSolve->parsed()) {
      auto spec = problem_from_json(load_json(problemPath));
      auto g = graph_from_json(load_json(instancePath));
      SolveOptions opt;
      opt.max_nodes = budgets.solve_nodes;
      if (maxSolutions > 0) opt.max_solutions = maxSolutions;
      SolveResult r;
      json out;
      out["solutions"] = json::array();
      if (spec.formalism == "lcl") {
        r = brute_force_solve(spec.lcl, g, opt);
        for (const auto& s : r.solutions) out["solutions"].push_back(labeling_to_json(s));
      } else if (spec.formalism == "pn") {
        r = brute_force_solve(spec.pn, g, opt);
        for (const auto& s : r.solutions) out["solutions"].push_back(labeling_to_json(s));
      } else {
        r = brute_force_solve(spec.re, g, opt);
        for (const auto& s : r.re_solutions)
          out["solutions"].push_back(half_edge_labeling_to_json(s));
      }
      if (r.status == SolveStatus::BudgetExceeded) {
        std::cerr << "budget exceeded\n";
        return kBudgetExceeded;
      }
      if (r.status == SolveStatus::Unsolvable) {
        std::cerr << "unsolvable (exhaustive)\n";
        return kVerificationFailure;
      }
      emit(outPath, out);
      return kOk;
    }

    if (cEncode->parsed()) {
      auto g = graph_from_json(load_json(instancePath));
      auto enc = encode_ab(g, scheme);
      emit(outPath, graph_to_json(enc.graph));
      if (!decodeMapPath.empty())
        save_json(decodeMapPath, decode_map_to_json(enc.dm));
      return kOk;
    }

    if (cDecode->parsed()) {
      auto g = graph_from_json(load_json(instancePath));
      auto dec = decode_ab(g, scheme);
      emit(outPath, graph_to_json(dec.decoded));
      if (!decodeMapPath.empty())
        save_json(decodeMapPath, decode_map_to_json(dec.dm));
      return kOk;
    }

    if (cLiftAb->parsed()) {
      auto g = graph_from_json(load_json(instancePath));
      auto out = labeling_from_json(load_json(outputPath));
      if (direction == "forward") {
        auto enc = encode_ab(g, scheme);
        emit(outPath, labeling_to_json(
                          lift_out_a_to_b(out, enc.dm, enc.graph, botLabel)));
      } else {
        auto dec = decode_ab(g, scheme);
        emit(outPath, labeling_to_json(lift_out_b_to_a(out, dec.dm)));
      }
      return kOk;
    }

    if (cGadget->parsed()) {
      auto g = graph_from_json(load_json(instancePath));
      std::map<EdgeKey, std::int64_t> col;
      if (coloringSpec == "auto")
        col = distance_k_edge_coloring(g, 2 * rb);
      else
        col = coloring_from_json(load_json(coloringSpec));
      auto gg = gadget_bd(g, col, rb);
      emit(outPath, gadgeted_to_json(gg));
      return kOk;
    }

    if (cContract->parsed()) {
      auto j = load_json(instancePath);
      LabeledGraph g = j.contains("graph") ? graph_from_json(j.at("graph"))
                                           : graph_from_json(j);
      auto r = contract_db(g);
      json out;
      out["graph"] = graph_to_json(r.graph);
      out["coloring"] = coloring_to_json(r.coloring);
      emit(outPath, out);
      return kOk;
    }

    if (cTheorem->parsed()) {
      auto gg = gadgeted_from_json(load_json(instancePath));
      std::int64_t nodes = budgetNodes > 0 ? budgetNodes : budgets.theorem_nodes;
      auto r = check_coloring_theorem(gg, rb, nodes, maxVertices);
      json out;
      out["colorings_checked"] = r.colorings_checked;
      out["nodes_visited"] = r.nodes_visited;
      if (r.status == TheoremStatus::BudgetExceeded) {
        out["status"] = "budget-exceeded";
        emit(outPath, out);
        return kBudgetExceeded;
      }
      if (r.status == TheoremStatus::Counterexample) {
        out["status"] = "counterexample";
        json chi = json::object();
        for (const auto& [v, c] : r.chi) chi[std::to_string(v)] = c;
        out["chi"] = chi;
        emit(outPath, out);
        return kVerificationFailure;
      }
      out["status"] = "exhausted-ok";
      emit(outPath, out);
      return kOk;
    }

    if (cCompile->parsed()) {
      auto pj = load_json(problemPath);
      auto spec = problem_from_json(pj);
      if (spec.formalism != "lcl" || spec.lcl.radius != rb)
        throw std::invalid_argument(
            "compile-re: expects the radius-r_b source problem");
      auto dc = DConstants::from_rb(rb);
      json out;
      out["formalism"] = "re-compiled";
      out["source"] = pj;
      out["constants"] = {{"r_b", dc.r_b},
                          {"k", dc.k},
                          {"r_d", dc.r_d},
                          {"zeta_exact", dc.zeta_exact},
                          {"zeta", dc.zeta}};
      out["labels"] = "pairs (accepted radius-r_d view, port in 1..3)";
      emit(outPath, out);
      return kOk;
    }

    if (cLiftDe->parsed() || cLiftEd->parsed()) {
      auto spec = problem_from_json(load_json(problemPath));
      if (spec.formalism != "lcl")
        throw std::invalid_argument("lift-de/ed: source problem must be lcl");
      auto gg = gadgeted_from_json(load_json(instancePath));
      auto dc = DConstants::from_rb(rb);
      auto table = std::make_shared<DLabelTable>();
      auto D = make_problem_d(spec.lcl, dc, table);
      auto ctx = std::make_shared<ReContext>();
      ctx->radius = D.radius;
      ctx->d_oracle = D.constraint;

      if (cLiftDe->parsed()) {
        auto dout = d_labeling_from_json(load_json(outputPath), *table);
        auto hel = lift_d_to_e(gg.graph, dout, ctx);
        emit(outPath, half_edge_labeling_to_json(hel));
        if (!viewsPath.empty()) {
          json views = json::object();
          for (const auto& [id, view] : ctx->views)
            views[std::to_string(id)] = view_to_json(view);
          save_json(viewsPath, views);
        }
        return kOk;
      }
      // lift-ed: map file view ids to freshly registered ones
      auto viewsJson = load_json(viewsPath);
      std::map<std::int64_t, std::int64_t> remap;
      for (const auto& [k, vj] : viewsJson.items())
        remap[std::stoll(k)] = ctx->register_view(view_from_json(vj));
      auto helRaw = half_edge_labeling_from_json(load_json(helPath));
      HalfEdgeLabeling hel;
      for (const auto& [key, l] : helRaw.at) {
        auto it = remap.find(ReContext::view_of(l));
        if (it == remap.end())
          throw std::invalid_argument("lift-ed: label references unknown view");
        hel.at[key] = ReContext::pack(it->second, ReContext::port_of(l));
      }
      auto dout = lift_e_to_d(gg.graph, hel, ctx);
      emit(outPath, d_labeling_to_json(dout, *table));
      return kOk;
    }

    if (cSim->parsed()) {
      auto g = graph_from_json(load_json(instancePath));
      std::string name = algName.rfind("builtin:", 0) == 0 ? algName.substr(8)
                                                           : algName;
      RunResult r;
      if (mode == "local") {
        r = run_local(builtin_local_algorithm(name), make_sim_instance(g));
      } else if (mode == "slocal") {
        std::vector<VertexId> order;
        if (orderSpec.empty()) {
          order = g.vertices();
        } else {
          std::stringstream ss(orderSpec);
          std::string tok;
          while (std::getline(ss, tok, ',')) order.push_back(std::stoi(tok));
        }
        r = run_slocal(builtin_sequential_algorithm(name), make_sim_instance(g),
                       order);
      } else if (mode == "a1") {
        r = simulate_a1_prime(builtin_local_algorithm(name), g, scheme, 0);
      } else if (mode == "a2") {
        r = simulate_a2_prime(builtin_local_algorithm(name), g, scheme);
      } else {
        throw std::invalid_argument("simulate: unknown mode " + mode);
      }
      emit(outPath, labeling_to_json(r.out));
      if (!classesPath.empty()) {
        json ledger = json::object();
        for (const auto& [v, rad] : r.ledger) ledger[std::to_string(v)] = rad;
        save_json(classesPath, ledger);
      }
      return kOk;
    }

    if (cPipeline->parsed()) {
      PipelineConfig config;
      if (!configPath.empty())
        config = PipelineConfig::from_json(load_json(configPath));
      else
        config.recompute();
      config.budgets = budgets;
      auto spec = problem_from_json(load_json(problemPath));
      if (spec.formalism != "lcl")
        throw std::invalid_argument("pipeline: the source problem must be lcl");
      auto g = graph_from_json(load_json(instancePath));

      RunReport report;
      LCLProblem B;
      LabeledGraph gB;
      bool haveB = false;
      if (fromStage == "a") {
        StageAbArtifacts ab;
        report.stages.push_back(run_stage_ab(spec.lcl, g, config.scheme(),
                                             config.budgets, config.seed, &ab));
        if (report.stages.back().ok && toStage != "b") {
          B = ab.B;
          gB = ab.enc.graph;
          haveB = true;
        }
      } else if (fromStage == "b") {
        B = spec.lcl;
        gB = g;
        haveB = toStage != "b";
      } else {
        throw std::invalid_argument("pipeline: --from must be a or b");
      }

      StageBdArtifacts bd;
      if (haveB && (toStage == "d" || toStage == "e")) {
        report.stages.push_back(run_stage_bd(B, gB, B.radius, config.budgets,
                                             config.seed, &bd));
        if (report.stages.back().ok && toStage == "e") {
          StageDeArtifacts de;
          report.stages.push_back(
              run_stage_de(bd.D, bd.gg.graph, bd.d_outputs, &de));
        }
      }
      emit(outPath, report.to_json(false));
      if (report.any_budget_exceeded()) return kBudgetExceeded;
      return report.all_ok() ? kOk : kVerificationFailure;
    }

    if (cExport->parsed()) {
      auto j = load_json(instancePath);
      LabeledGraph g = j.contains("graph") ? graph_from_json(j.at("graph"))
                                           : graph_from_json(j);
      if (format == "json") {
        emit(outPath, graph_to_json(g));
      } else if (format == "dot") {
        std::map<VertexId, std::string> classes;
        if (!classesPath.empty()) {
          for (const auto& [k, v] : load_json(classesPath).items())
            classes[std::stoi(k)] = v.get<std::string>();
        } else if (j.contains("classes")) {
          for (const auto& [k, v] : j.at("classes").items())
            classes[std::stoi(k)] = v.get<std::string>();
        }
        std::string dot = to_dot(g, classes);
        if (outPath.empty() || outPath == "-")
          std::cout << dot;
        else
          save_text(outPath, dot);
      } else {
        throw std::invalid_argument("export: unknown format " + format);
      }
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
