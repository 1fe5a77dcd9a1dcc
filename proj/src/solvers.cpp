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

#include "fnex/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "fnex/color_coding.hpp"
#include "fnex/dag_dp.hpp"
#include "fnex/greedy_reset.hpp"
#include "fnex/lp_sa.hpp"
#include "fnex/oracle.hpp"

namespace fnex {
namespace {

bool is_aa(const Instance& inst, bool reset) {
  return inst.model.kind == Externality::kAdAd && inst.model.reset == reset;
}

void require_known(const std::string& name) {
  const auto& names = solver_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw UnknownSolverError("unknown algorithm '" + name + "'");
  }
}

std::string canonical(const std::string& name, const SolverOptions& opts) {
  if (name == "cc") return opts.exact ? "cc-exact" : "cc-approx";
  return name;
}

}  // namespace

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {
      "oracle",  "lp",       "dag-dp",     "cc",          "cc-exact",     "cc-approx",
      "cc-mir",  "greedy-r", "w3sp",       "w3sp-local",  "second-price"};
  return names;
}

bool solver_applicable(const std::string& name, const Instance& inst) {
  require_known(name);
  if (!validate_instance(inst).empty()) return false;
  if (name == "oracle") return oracle_fits(inst);
  if (name == "lp") return inst.model.kind == Externality::kSlotAd;
  if (name == "dag-dp") return dag_dp_applicable(inst);
  if (name.starts_with("cc")) return is_aa(inst, false);
  if (name == "greedy-r") return is_aa(inst, true);
  if (name.starts_with("w3sp")) return is_aa(inst, false) && gamma_min(inst) > 0.0;
  return true;
}

AllocationRule make_solver(const std::string& name, const SolverOptions& opts) {
  require_known(name);
  const std::string algo = canonical(name, opts);
  if (algo == "oracle") return [](const Instance& x) { return brute_force_optimum(x).best; };
  if (algo == "lp") {
    return [opts](const Instance& x) { return solve_fne_sa(x, opts.seed).allocation; };
  }
  if (algo == "dag-dp") return [](const Instance& x) { return dp_optimal_dag(x); };
  if (algo == "cc-exact") {
    return [opts](const Instance& x) { return cc_exact(x, opts.seed, opts.reps); };
  }
  if (algo == "cc-approx") {
    ApproxParams params;
    params.delta = opts.delta;
    params.epsilon = opts.epsilon;
    params.seed = opts.seed;
    params.reps = opts.reps;
    return [params](const Instance& x) { return cc_approx(x, params); };
  }
  if (algo == "cc-mir") {
    return [opts](const Instance& x) { return cc_mir(x, opts.seed, opts.reps); };
  }
  if (algo == "greedy-r") return [](const Instance& x) { return greedy_half(x); };
  if (algo == "w3sp") {
    return [opts](const Instance& x) { return allocate_via_w3sp(x, opts.packing); };
  }
  if (algo == "w3sp-local") {
    return [](const Instance& x) { return allocate_via_w3sp(x, PackingMethod::kLocalSearch); };
  }
  return [](const Instance& x) { return second_price_single(x).allocation; };
}

Allocation run_solver(const std::string& name, const Instance& inst,
                      const SolverOptions& opts) {
  return make_solver(name, opts)(inst);
}

double ratio_bound(const std::string& name, const Instance& inst, const SolverOptions& opts) {
  require_known(name);
  const std::string algo = canonical(name, opts);
  if (algo == "oracle" || algo == "lp" || algo == "dag-dp" || algo == "cc-exact") return 1.0;
  if (algo == "cc-approx") return cc_approx_bound(inst, opts.delta, opts.epsilon);
  if (algo == "cc-mir") {
    if (inst.n == 0 || inst.k == 0) return 0.0;
    return reduced_slots(inst.n, inst.k) / (2.0 * std::min(inst.n, inst.k));
  }
  if (algo == "greedy-r") return 0.5;
  if (algo.starts_with("w3sp")) {
    return std::pow(gamma_min(inst), std::min(inst.model.window, std::max(inst.k - 1, 0))) / 3.0;
  }
  return inst.k > 0 ? 1.0 / inst.k : 1.0;
}

PackingMethod parse_packing(const std::string& text) {
  if (text == "greedy") return PackingMethod::kGreedy;
  if (text == "local" || text == "local_search" || text == "local-search") {
    return PackingMethod::kLocalSearch;
  }
  throw PreconditionError("packing must be greedy or local");
}

}  // namespace fnex
