// Copyright 2026 The fnex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every subcommand prints JSON on stdout, except
// bench which writes CSV.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fnex/core.hpp"
#include "fnex/harness.hpp"
#include "fnex/json_io.hpp"
#include "fnex/lp_sa.hpp"
#include "fnex/mechanisms.hpp"
#include "fnex/oracle.hpp"
#include "fnex/solvers.hpp"

namespace {

using nlohmann::json;

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw fnex::Error("cannot write " + out_path);
  out << doc.dump(2) << '\n';
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw fnex::PreconditionError("grid must look like lo:hi:steps");
  return fnex::linear_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
}

json outcome_to_json(const fnex::Instance& inst, const fnex::MechanismOutcome& out) {
  json doc;
  doc["allocation"] = fnex::allocation_to_json(out.allocation);
  doc["sw"] = fnex::social_welfare(inst, out.allocation);
  doc["ctr"] = out.ctr;
  doc["payments"] = out.payments;
  doc["per_click_prices"] = out.per_click_prices;
  return doc;
}

fnex::Digraph load_digraph(const std::string& path) {
  const json doc = fnex::read_json_file(path);
  fnex::Digraph g;
  g.n = doc.at("n").get<int>();
  for (const json& e : doc.at("edges")) {
    g.edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
  }
  return g;
}

fnex::WeightedDigraph load_weighted(const std::string& path) {
  const json doc = fnex::read_json_file(path);
  fnex::WeightedDigraph g;
  g.n = doc.at("n").get<int>();
  g.weight = fnex::Matrix(g.n, g.n, 0.0);
  const json& rows = doc.at("weights");
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) g.weight(i, j) = rows.at(i).at(j).get<double>();
  }
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social-welfare maximization for sponsored search with externalities"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string out_path;

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum");
  bool no_bot = false;
  oracle->add_option("--instance", instance_path)->required();
  oracle->add_flag("--no-bot", no_bot, "Forbid empty slots");

  auto* solve = app.add_subcommand("solve", "Run one allocation algorithm");
  std::string algo;
  fnex::SolverOptions opts;
  std::string packing = "greedy";
  solve->add_option("--algo", algo)->required();
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--delta", opts.delta);
  solve->add_option("--epsilon", opts.epsilon);
  solve->add_option("--seed", opts.seed);
  solve->add_option("--reps", opts.reps);
  solve->add_flag("--exact", opts.exact);
  solve->add_option("--packing", packing);

  auto* payments = app.add_subcommand("payments", "Allocation plus payments");
  std::string mechanism;
  std::string exact_solver = "oracle";
  payments->add_option("--mechanism", mechanism, "vcg|mir-greedy|mir-cc|second-price")
      ->required();
  payments->add_option("--instance", instance_path)->required();
  payments->add_option("--solver", exact_solver, "oracle|dag-dp|lp (vcg only)");
  payments->add_option("--seed", opts.seed);
  payments->add_option("--reps", opts.reps);

  auto* mono = app.add_subcommand("check-mono", "CTR curve of one agent over a bid grid");
  int agent = 1;
  std::string grid = "0:10:21";
  mono->add_option("--algo", algo)->required();
  mono->add_option("--instance", instance_path)->required();
  mono->add_option("--agent", agent, "1-based")->required();
  mono->add_option("--grid", grid, "lo:hi:steps");
  mono->add_option("--delta", opts.delta);
  mono->add_option("--epsilon", opts.epsilon);
  mono->add_option("--seed", opts.seed);
  mono->add_option("--reps", opts.reps);
  mono->add_option("--packing", packing);

  auto* gen = app.add_subcommand("gen", "Random instance");
  fnex::GenParams gp;
  std::string model = "aa";
  std::string graph_class = "random";
  std::string params_path;
  gen->add_option("--params", params_path, "JSON generator parameters");
  gen->add_option("--n", gp.n);
  gen->add_option("--k", gp.k);
  gen->add_option("--model", model);
  gen->add_option("--window", gp.window);
  gen->add_flag("--reset", gp.reset);
  gen->add_option("--graph", graph_class, "random|dag|complete|binary");
  gen->add_option("--density", gp.density);
  gen->add_option("--gamma-min", gp.gamma_min);
  gen->add_option("--quantum", gp.quantum);
  gen->add_option("--seed", gp.seed);
  gen->add_option("--out", out_path);

  auto* reduce = app.add_subcommand("reduce", "Hardness reductions");
  reduce->require_subcommand(1);
  std::string graph_path;
  int slots = 0;
  auto* lpath = reduce->add_subcommand("longest-path", "From a digraph");
  lpath->add_option("--graph", graph_path, "{\"n\": N, \"edges\": [[1, 2], ...]}")->required();
  lpath->add_option("--out", out_path);
  auto* atsp = reduce->add_subcommand("atsp12", "From a {1,2}-weighted complete digraph");
  atsp->add_option("--graph", graph_path, "{\"n\": N, \"weights\": [[...], ...]}")->required();
  atsp->add_option("--k", slots)->required();
  atsp->add_option("--out", out_path);
  auto* rnr = reduce->add_subcommand("r-to-nr", "Reset to no-reset, window 1");
  rnr->add_option("--instance", instance_path)->required();
  rnr->add_option("--out", out_path);

  auto* bench = app.add_subcommand("bench", "Benchmark against the oracle");
  std::string config_path;
  bench->add_option("--config", config_path)->required();
  bench->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*oracle) {
      const fnex::Instance inst = fnex::load_instance(instance_path);
      const fnex::OracleResult res = fnex::brute_force_optimum(inst, !no_bot);
      json doc;
      doc["allocation"] = fnex::allocation_to_json(res.best);
      doc["sw"] = res.value;
      doc["enumerated"] = res.count;
      emit(doc, "");
    } else if (*solve) {
      const fnex::Instance inst = fnex::load_instance(instance_path);
      opts.packing = fnex::parse_packing(packing);
      json doc;
      doc["algo"] = algo;
      if (algo == "lp") {
        const fnex::SaSolution sol = fnex::solve_fne_sa(inst, opts.seed);
        doc["allocation"] = fnex::allocation_to_json(sol.allocation);
        doc["sw"] = fnex::social_welfare(inst, sol.allocation);
        doc["sw_exact"] = sol.welfare.get_str();
        doc["lp_value"] = sol.lp_value.get_str();
        doc["gap"] = fnex::Rational(sol.lp_value - sol.welfare).get_str();
        doc["nodes"] = sol.nodes;
        doc["variables"] = sol.variables;
        doc["rows"] = sol.rows;
      } else {
        const fnex::Allocation theta = fnex::run_solver(algo, inst, opts);
        doc["allocation"] = fnex::allocation_to_json(theta);
        doc["sw"] = fnex::social_welfare(inst, theta);
      }
      emit(doc, "");
    } else if (*payments) {
      const fnex::Instance inst = fnex::load_instance(instance_path);
      fnex::MechanismOutcome out;
      if (mechanism == "vcg") {
        fnex::ExactSolver solver;
        if (exact_solver == "oracle") {
          solver = fnex::ExactSolver::kOracle;
        } else if (exact_solver == "dag-dp") {
          solver = fnex::ExactSolver::kDagDp;
        } else if (exact_solver == "lp") {
          solver = fnex::ExactSolver::kLp;
        } else {
          throw fnex::PreconditionError("vcg needs an exact solver: oracle, dag-dp or lp");
        }
        out = fnex::vcg_payments(inst, solver);
      } else if (mechanism == "mir-greedy") {
        out = fnex::mir_payments(inst, fnex::RangeSolver::kGreedyReset);
      } else if (mechanism == "mir-cc") {
        out = fnex::mir_payments(inst, fnex::RangeSolver::kCcMir, opts.seed, opts.reps);
      } else if (mechanism == "second-price") {
        out = fnex::second_price_single(inst);
      } else {
        throw fnex::PreconditionError("unknown mechanism '" + mechanism + "'");
      }
      emit(outcome_to_json(inst, out), "");
    } else if (*mono) {
      const fnex::Instance inst = fnex::load_instance(instance_path);
      opts.packing = fnex::parse_packing(packing);
      const fnex::MonotonicityReport report = fnex::check_monotonicity(
          fnex::make_solver(algo, opts), inst, agent - 1, parse_grid(grid));
      json doc;
      doc["agent"] = agent;
      doc["grid"] = report.grid;
      doc["ctr"] = report.ctr;
      doc["violations"] = json::array();
      for (const auto& [lo, hi] : report.violations) doc["violations"].push_back({lo, hi});
      doc["monotone"] = report.monotone();
      emit(doc, "");
    } else if (*gen) {
      if (!params_path.empty()) {
        gp = fnex::gen_params_from_json(fnex::read_json_file(params_path));
      } else {
        json doc = fnex::gen_params_to_json(gp);
        doc["model"] = model;
        doc["graph"] = graph_class;
        gp = fnex::gen_params_from_json(doc);
      }
      emit(fnex::instance_to_json(fnex::gen_random(gp)), out_path);
    } else if (*reduce) {
      fnex::Instance inst;
      if (*lpath) {
        inst = fnex::reduce_longest_path(load_digraph(graph_path));
      } else if (*atsp) {
        inst = fnex::reduce_atsp12(load_weighted(graph_path), slots);
      } else {
        inst = fnex::reduce_r_to_nr(fnex::load_instance(instance_path));
      }
      emit(fnex::instance_to_json(inst), out_path);
    } else if (*bench) {
      const fnex::BenchReport report = fnex::run_bench_file(config_path);
      if (out_path.empty()) {
        fnex::write_csv(report, std::cout);
      } else {
        std::ofstream out(out_path);
        if (!out) throw fnex::Error("cannot write " + out_path);
        fnex::write_csv(report, out);
      }
      if (!report.ok) {
        std::cerr << "bench: at least one ratio fell below its bound\n";
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
