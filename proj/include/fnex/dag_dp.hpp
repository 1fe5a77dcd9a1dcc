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

// Exact O(K N^2) optimum for ad-ad, no-reset, full-window instances whose
// contextual graph (edge i -> j iff gamma(i, j) > 0) is acyclic.
//
// After renaming ads along a topological order only "ordered" allocations
// matter: an ad placed below a later-named ad sits under a zero gamma and,
// without reset, contributes nothing from there down. Over ordered
// allocations the optimum has optimal substructure:
//
//   D[i][m] = Lambda_m q_i v_i + max(0, max_{j > i} gamma(i, j) D[j][m + 1])
//
// and the answer is max_i D[i][1].

#ifndef FNEX_DAG_DP_HPP_
#define FNEX_DAG_DP_HPP_

#include <vector>

#include "fnex/core.hpp"

namespace fnex {

class NotADagError : public Error {
 public:
  using Error::Error;
};

// order[r] is the original ad that gets rank r. Kahn's algorithm, always
// releasing the smallest ready index first.
std::vector<int> topological_rename(const Instance& inst);

// Whether `inst` satisfies dp_optimal_dag's preconditions.
bool dag_dp_applicable(const Instance& inst);

struct DpTable {
  std::vector<int> order;              // rank -> original ad
  std::vector<std::vector<double>> d;  // d[rank][slot]
};

DpTable fill_dp_table(const Instance& inst);

Allocation dp_optimal_dag(const Instance& inst);

}  // namespace fnex

#endif  // FNEX_DAG_DP_HPP_
