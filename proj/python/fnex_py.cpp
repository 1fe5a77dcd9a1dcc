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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fnex/color_coding.hpp"
#include "fnex/harness.hpp"
#include "fnex/json_io.hpp"
#include "fnex/lp_sa.hpp"
#include "fnex/mechanisms.hpp"
#include "fnex/oracle.hpp"
#include "fnex/solvers.hpp"

namespace py = pybind11;

namespace {

using fnex::Allocation;
using fnex::Instance;

Allocation to_alloc(const std::vector<int>& slots) { return Allocation(slots); }

std::vector<int> from_alloc(const Allocation& theta) {
  return std::vector<int>(theta.slots().begin(), theta.slots().end());
}

py::dict outcome(const Instance& inst, const fnex::MechanismOutcome& out) {
  py::dict d;
  d["allocation"] = from_alloc(out.allocation);
  d["sw"] = fnex::social_welfare(inst, out.allocation);
  d["ctr"] = out.ctr;
  d["payments"] = out.payments;
  d["per_click_prices"] = out.per_click_prices;
  return d;
}

fnex::SolverOptions options(std::uint64_t seed, double delta, double epsilon, double reps,
                            bool exact, const std::string& packing) {
  fnex::SolverOptions o;
  o.seed = seed;
  o.delta = delta;
  o.epsilon = epsilon;
  o.reps = reps;
  o.exact = exact;
  o.packing = fnex::parse_packing(packing);
  return o;
}

}  // namespace

PYBIND11_MODULE(_fnex, m) {
  m.doc() = "Welfare-maximizing allocation for sponsored search with externalities";
  m.attr("BOT") = fnex::kBot;

  py::register_exception<fnex::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<fnex::PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def_static(
          "from_json",
          [](const std::string& text) {
            return fnex::instance_from_json(nlohmann::json::parse(text));
          },
          py::arg("text"))
      .def("to_json", [](const Instance& inst) { return fnex::instance_to_json(inst).dump(); })
      .def_property_readonly("n", [](const Instance& inst) { return inst.n; })
      .def_property_readonly("k", [](const Instance& inst) { return inst.k; })
      .def_property_readonly("window", [](const Instance& inst) { return inst.model.window; })
      .def_property_readonly("reset", [](const Instance& inst) { return inst.model.reset; })
      .def_property_readonly(
          "model",
          [](const Instance& inst) {
            return inst.model.kind == fnex::Externality::kAdAd ? "aa" : "sa";
          })
      .def_readonly("quality", &Instance::quality)
      .def_readonly("value", &Instance::value)
      .def_readonly("lambda_", &Instance::lambda)
      .def("with_value", &fnex::with_value, py::arg("ad"), py::arg("value"))
      .def("validate", &fnex::validate_instance);

  m.def("gen_random", [](const std::string& params) {
    return fnex::gen_random(fnex::gen_params_from_json(nlohmann::json::parse(params)));
  });
  m.def(
      "eval_ctr",
      [](const Instance& inst, const std::vector<int>& theta, int ad) {
        return fnex::eval_ctr(inst, to_alloc(theta), ad);
      },
      py::arg("inst"), py::arg("theta"), py::arg("ad"));
  m.def(
      "social_welfare",
      [](const Instance& inst, const std::vector<int>& theta) {
        return fnex::social_welfare(inst, to_alloc(theta));
      },
      py::arg("inst"), py::arg("theta"));
  m.def(
      "brute_force_optimum",
      [](const Instance& inst, bool allow_bot) {
        const fnex::OracleResult r = fnex::brute_force_optimum(inst, allow_bot);
        return py::make_tuple(from_alloc(r.best), r.value);
      },
      py::arg("inst"), py::arg("allow_bot") = true);
  m.def("solver_names", &fnex::solver_names);
  m.def(
      "solve",
      [](const std::string& algo, const Instance& inst, std::uint64_t seed, double delta,
         double epsilon, double reps, bool exact, const std::string& packing) {
        return from_alloc(
            fnex::run_solver(algo, inst, options(seed, delta, epsilon, reps, exact, packing)));
      },
      py::arg("algo"), py::arg("inst"), py::arg("seed") = 0, py::arg("delta") = 0.1,
      py::arg("epsilon") = 0.1, py::arg("reps") = 3.0, py::arg("exact") = false,
      py::arg("packing") = "greedy");
  m.def(
      "ratio_bound",
      [](const std::string& algo, const Instance& inst, double delta, double epsilon) {
        return fnex::ratio_bound(algo, inst, options(0, delta, epsilon, 3.0, false, "greedy"));
      },
      py::arg("algo"), py::arg("inst"), py::arg("delta") = 0.1, py::arg("epsilon") = 0.1);
  m.def(
      "solve_lp",
      [](const Instance& inst, std::uint64_t seed) {
        const fnex::SaSolution s = fnex::solve_fne_sa(inst, seed);
        py::dict d;
        d["allocation"] = from_alloc(s.allocation);
        d["sw_exact"] = s.welfare.get_str();
        d["lp_value"] = s.lp_value.get_str();
        d["root_integral"] = s.root_integral;
        d["nodes"] = s.nodes;
        return d;
      },
      py::arg("inst"), py::arg("seed") = 0);
  m.def(
      "vcg",
      [](const Instance& inst, const std::string& solver) {
        fnex::ExactSolver s = fnex::ExactSolver::kOracle;
        if (solver == "dag-dp") {
          s = fnex::ExactSolver::kDagDp;
        } else if (solver == "lp") {
          s = fnex::ExactSolver::kLp;
        } else if (solver != "oracle") {
          throw fnex::PreconditionError("vcg needs oracle, dag-dp or lp");
        }
        return outcome(inst, fnex::vcg_payments(inst, s));
      },
      py::arg("inst"), py::arg("solver") = "oracle");
  m.def(
      "mir_greedy",
      [](const Instance& inst) {
        return outcome(inst, fnex::mir_payments(inst, fnex::RangeSolver::kGreedyReset));
      },
      py::arg("inst"));
  m.def(
      "second_price",
      [](const Instance& inst) { return outcome(inst, fnex::second_price_single(inst)); },
      py::arg("inst"));
  m.def(
      "check_monotonicity",
      [](const std::string& algo, const Instance& inst, int agent,
         const std::vector<double>& grid) {
        const fnex::MonotonicityReport r =
            fnex::check_monotonicity(fnex::make_solver(algo), inst, agent, grid);
        return py::make_tuple(r.ctr, r.violations);
      },
      py::arg("algo"), py::arg("inst"), py::arg("agent"), py::arg("grid"));
}
