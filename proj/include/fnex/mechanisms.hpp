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

// Payments and incentive checks.
//
// VCG and maximal-in-range payments use the Clarke pivot
//
//   P_i = h_i - SW_{-i}(theta),
//
// where theta is the chosen allocation and h_i the welfare the same
// allocation rule reaches once advertiser i reports a value of zero. Ads are
// charged P_i / CTR_i per click.

#ifndef FNEX_MECHANISMS_HPP_
#define FNEX_MECHANISMS_HPP_

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "fnex/core.hpp"

namespace fnex {

inline constexpr double kMechanismTol = 1e-9;

struct MechanismOutcome {
  Allocation allocation;
  std::vector<double> ctr;
  std::vector<double> payments;
  std::vector<double> per_click_prices;  // 0 where CTR is 0
};

using AllocationRule = std::function<Allocation(const Instance&)>;
using Mechanism = std::function<MechanismOutcome(const Instance&)>;

enum class ExactSolver { kOracle, kDagDp, kLp };
enum class RangeSolver { kGreedyReset, kCcMir };

// Throws PreconditionError unless `solver` is exact on the instance's class.
AllocationRule exact_rule(ExactSolver solver, const Instance& inst);
AllocationRule range_rule(RangeSolver solver, std::uint64_t seed = 0, double reps = 3.0);

// Clarke payments for an arbitrary rule; truthful only if the rule is
// maximal in range.
MechanismOutcome clarke_payments(const Instance& inst, const AllocationRule& rule);

MechanismOutcome vcg_payments(const Instance& inst, ExactSolver solver);
MechanismOutcome mir_payments(const Instance& inst, RangeSolver solver, std::uint64_t seed = 0,
                              double reps = 3.0);

// Highest q_i v_i takes slot 1 alone and pays the runner-up's q_j v_j.
MechanismOutcome second_price_single(const Instance& inst);

struct MonotonicityReport {
  int agent = 0;
  std::vector<double> grid;
  std::vector<double> ctr;
  std::vector<std::pair<double, double>> violations;  // (lower bid, higher bid)

  bool monotone() const { return violations.empty(); }
};

MonotonicityReport check_monotonicity(const AllocationRule& rule, const Instance& inst,
                                      int agent, const std::vector<double>& grid,
                                      double tol = kMechanismTol);

struct TruthViolation {
  int agent = 0;
  double report = 0.0;
  double gain = 0.0;
};

struct TruthfulnessReport {
  int checks = 0;
  std::vector<TruthViolation> violations;

  bool truthful() const { return violations.empty(); }
};

// Every agent tries every report in `report_grid` while the others report
// their true values.
TruthfulnessReport check_truthfulness(const Mechanism& mechanism, const Instance& inst,
                                      const std::vector<double>& true_values,
                                      const std::vector<double>& report_grid,
                                      double tol = kMechanismTol);

// `steps` evenly spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int steps);

}  // namespace fnex

#endif  // FNEX_MECHANISMS_HPP_
