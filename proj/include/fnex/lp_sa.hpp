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

// Exact optimum for slot-ad externalities through a layered-flow LP.
//
// A variable y[m, h] says that the entries of slots max(1, m-c) .. m are the
// tuple h (the "tail" ending at slot m). For window 1 and no reset these are
// exactly x_{1,i} (tail of length one in slot 1) and x_{j,m,i} (tail (j, i)).
// Rows:
//   * every real ad appears at most once over all tails ending with it;
//   * flow conservation on the shared context between slot m and m+1;
//   * slot 1 carries exactly one unit.
// With reset, the fictitious ad is an extra tail symbol with gamma = 1.
// Without reset it is one too, with gamma = 0, but only when N < K: with
// an unused ad at hand a gap never pays, while with every ad placed a gap
// can move an ad to a slot where it shields the ad below it better.
//
// The relaxation is not always integral: an optimal vertex can mix walks
// that place one ad twice (e.g. <a3, a1, a3> at weight 1/2), and its value
// can then exceed every allocation. solve_fne_sa detects this and branches
// on slot assignments until the bound closes.

#ifndef FNEX_LP_SA_HPP_
#define FNEX_LP_SA_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fnex/core.hpp"
#include "fnex/simplex.hpp"

namespace fnex {

using lp::Rational;

struct LpVariable {
  int slot = 0;           // 0-based slot of the last tail entry
  std::vector<int> tail;  // ads or kBot, top to bottom
};

struct LpModel {
  int slots = 0;   // slots modelled (K, or N after trimming)
  int window = 1;  // effective window, at most slots - 1
  bool reset = false;
  bool gaps = false;  // the fictitious ad is a tail symbol
  std::vector<LpVariable> variables;
  lp::Problem problem;
  int ad_rows = 0;
  int flow_rows = 0;
  int slot_rows = 0;
};

struct FractionalSolution {
  std::vector<Rational> values;
  Rational objective_value;
  std::vector<Rational> reduced_costs;
};

// Raised when no integral allocation attains the LP value.
class IntegralityError : public Error {
 public:
  using Error::Error;
};

// Exact welfare with every input read as the rational its double encodes.
Rational exact_social_welfare(const Instance& inst, const Allocation& theta);

// Restriction of `inst` to its first `slots` slots.
Instance trim_slots(const Instance& inst, int slots);

// No-reset instances with N < K need `allow_gaps`.
LpModel build_lp(const Instance& inst, bool allow_gaps = false);

FractionalSolution solve_lp(const LpModel& model);

inline constexpr int kDecompositionDraws = 64;

struct Decomposition {
  Allocation allocation;
  int draws = 0;           // sampled walks, accepted one included
  bool fallback = false;   // true when support enumeration found the answer
  // True when the support held no allocation and the search had to widen to
  // every column of zero reduced cost.
  bool face_search = false;
};

// Samples integral allocations from the distribution an optimal solution
// induces and returns one whose welfare equals the LP value exactly. When
// the vertex mixes walks that repeat ads, the support is searched
// exhaustively, then the whole optimal face (zero reduced cost columns).
Decomposition decompose_integral(const Instance& inst, const LpModel& model,
                                 const FractionalSolution& frac, std::uint64_t seed);

struct SaSolution {
  Allocation allocation;
  Rational lp_value;
  Rational welfare;
  Decomposition decomposition;
  int variables = 0;
  int rows = 0;
  bool root_integral = true;  // the root LP value is attained by an allocation
  int nodes = 1;              // LPs solved
};

// build -> solve -> decompose, then branch and bound if the root relaxation
// has no integral optimum.
SaSolution solve_fne_sa(const Instance& inst, std::uint64_t seed = 0);

std::string to_decimal(const Rational& x, int digits = 12);

}  // namespace fnex

#endif  // FNEX_LP_SA_HPP_
