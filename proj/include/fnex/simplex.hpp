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

// Two-phase primal simplex over exact rationals, Bland's rule throughout.

#ifndef FNEX_SIMPLEX_HPP_
#define FNEX_SIMPLEX_HPP_

#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fnex::lp {

using Rational = mpq_class;

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct Row {
  std::vector<std::pair<int, Rational>> terms;
  Sense sense = Sense::kLessEqual;
  Rational rhs;
};

// maximize objective . x  subject to rows, x >= 0.
struct Problem {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<Rational> x;
  Rational objective;
  // c_j - c_B B^-1 A_j at the optimum; zero marks columns free to enter.
  std::vector<Rational> reduced_costs;
  long pivots = 0;
};

// Returns a basic optimal solution when one exists.
Solution maximize(const Problem& problem);

// Checks every row and bound of `x` exactly.
bool is_feasible(const Problem& problem, const std::vector<Rational>& x);

}  // namespace fnex::lp

#endif  // FNEX_SIMPLEX_HPP_
