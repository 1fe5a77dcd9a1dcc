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

// Name-based access to every allocation algorithm, as used by the CLI and
// the benchmark runner.
//
//   oracle        exhaustive search
//   lp            slot-ad linear program
//   dag-dp        acyclic contextual graphs, full window, no reset
//   cc            cc-approx, or cc-exact with SolverOptions::exact
//   cc-exact      color coding over all K slots
//   cc-approx     color coding with truncation, pruning and rounding
//   cc-mir        maximal-in-range color coding over K' slots
//   greedy-r      half-approximate greedy under reset
//   w3sp          set-packing route; SolverOptions::packing picks the solver
//   w3sp-local    set-packing route with local search
//   second-price  best single ad in slot 1

#ifndef FNEX_SOLVERS_HPP_
#define FNEX_SOLVERS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fnex/core.hpp"
#include "fnex/mechanisms.hpp"
#include "fnex/w3sp.hpp"

namespace fnex {

class UnknownSolverError : public Error {
 public:
  using Error::Error;
};

struct SolverOptions {
  std::uint64_t seed = 0;
  double delta = 0.1;
  double epsilon = 0.1;
  double reps = 3.0;
  bool exact = false;
  PackingMethod packing = PackingMethod::kGreedy;
};

const std::vector<std::string>& solver_names();

bool solver_applicable(const std::string& name, const Instance& inst);

AllocationRule make_solver(const std::string& name, const SolverOptions& opts = {});

Allocation run_solver(const std::string& name, const Instance& inst,
                      const SolverOptions& opts = {});

// Proven worst-case ratio of `name` on `inst`.
double ratio_bound(const std::string& name, const Instance& inst,
                   const SolverOptions& opts = {});

PackingMethod parse_packing(const std::string& text);

}  // namespace fnex

#endif  // FNEX_SOLVERS_HPP_
