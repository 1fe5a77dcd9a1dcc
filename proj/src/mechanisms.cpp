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

#include "fnex/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include "fnex/color_coding.hpp"
#include "fnex/dag_dp.hpp"
#include "fnex/greedy_reset.hpp"
#include "fnex/lp_sa.hpp"
#include "fnex/oracle.hpp"

namespace fnex {
namespace {

void fill_prices(const Instance& inst, MechanismOutcome& out) {
  out.ctr.assign(inst.n, 0.0);
  out.per_click_prices.assign(inst.n, 0.0);
  for (int i = 0; i < inst.n; ++i) {
    out.ctr[i] = eval_ctr(inst, out.allocation, i);
    if (out.ctr[i] > 0.0) out.per_click_prices[i] = out.payments[i] / out.ctr[i];
  }
}

Instance with_values(const Instance& inst, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != inst.n) {
    throw PreconditionError("one value per ad expected");
  }
  Instance out = inst;
  out.value = values;
  return out;
}

}  // namespace

AllocationRule exact_rule(ExactSolver solver, const Instance& inst) {
  switch (solver) {
    case ExactSolver::kOracle:
      return [](const Instance& x) { return brute_force_optimum(x).best; };
    case ExactSolver::kDagDp:
      if (!dag_dp_applicable(inst)) {
        throw PreconditionError("dag-dp is not exact on this instance class");
      }
      return [](const Instance& x) { return dp_optimal_dag(x); };
    case ExactSolver::kLp:
      require_valid(inst);
      if (inst.model.kind != Externality::kSlotAd) {
        throw PreconditionError("the LP solver is exact for slot-ad instances only");
      }
      return [](const Instance& x) { return solve_fne_sa(x).allocation; };
  }
  throw PreconditionError("unknown solver");
}

AllocationRule range_rule(RangeSolver solver, std::uint64_t seed, double reps) {
  switch (solver) {
    case RangeSolver::kGreedyReset:
      return [](const Instance& x) { return greedy_half(x); };
    case RangeSolver::kCcMir:
      return [seed, reps](const Instance& x) { return cc_mir(x, seed, reps); };
  }
  throw PreconditionError("unknown range solver");
}

MechanismOutcome clarke_payments(const Instance& inst, const AllocationRule& rule) {
  require_valid(inst);
  MechanismOutcome out;
  out.allocation = rule(inst);
  out.payments.assign(inst.n, 0.0);
  for (int i = 0; i < inst.n; ++i) {
    const Instance silent = with_value(inst, i, 0.0);
    const double h = social_welfare(silent, rule(silent));
    const double others = welfare_of_others(inst, out.allocation, i);
    double p = h - others;
    // Rounding noise around a zero charge.
    if (std::abs(p) <= kMechanismTol * std::max(1.0, std::abs(h))) p = 0.0;
    out.payments[i] = p;
  }
  fill_prices(inst, out);
  return out;
}

MechanismOutcome vcg_payments(const Instance& inst, ExactSolver solver) {
  return clarke_payments(inst, exact_rule(solver, inst));
}

MechanismOutcome mir_payments(const Instance& inst, RangeSolver solver, std::uint64_t seed,
                              double reps) {
  return clarke_payments(inst, range_rule(solver, seed, reps));
}

MechanismOutcome second_price_single(const Instance& inst) {
  require_valid(inst);
  MechanismOutcome out;
  out.allocation = Allocation::empty(inst.k);
  out.payments.assign(inst.n, 0.0);
  if (inst.n > 0 && inst.k > 0) {
    int winner = 0;
    for (int i = 1; i < inst.n; ++i) {
      if (inst.quality[i] * inst.value[i] > inst.quality[winner] * inst.value[winner]) {
        winner = i;
      }
    }
    double runner_up = 0.0;
    for (int i = 0; i < inst.n; ++i) {
      if (i != winner) runner_up = std::max(runner_up, inst.quality[i] * inst.value[i]);
    }
    std::vector<int> slots(inst.k, kBot);
    slots[0] = winner;
    out.allocation = Allocation(std::move(slots));
    out.payments[winner] = runner_up;
  }
  fill_prices(inst, out);
  return out;
}

MonotonicityReport check_monotonicity(const AllocationRule& rule, const Instance& inst,
                                      int agent, const std::vector<double>& grid,
                                      double tol) {
  if (agent < 0 || agent >= inst.n) throw PreconditionError("agent out of range");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw PreconditionError("bid grid must be ascending");
  }
  MonotonicityReport report;
  report.agent = agent;
  report.grid = grid;
  for (double bid : grid) {
    const Instance moved = with_value(inst, agent, bid);
    report.ctr.push_back(eval_ctr(moved, rule(moved), agent));
  }
  for (std::size_t t = 1; t < grid.size(); ++t) {
    if (report.ctr[t] < report.ctr[t - 1] - tol) {
      report.violations.emplace_back(grid[t - 1], grid[t]);
    }
  }
  return report;
}

TruthfulnessReport check_truthfulness(const Mechanism& mechanism, const Instance& inst,
                                      const std::vector<double>& true_values,
                                      const std::vector<double>& report_grid, double tol) {
  const Instance truth = with_values(inst, true_values);
  const MechanismOutcome honest = mechanism(truth);
  TruthfulnessReport report;
  for (int i = 0; i < inst.n; ++i) {
    const double u_truth = honest.ctr[i] * true_values[i] - honest.payments[i];
    for (double bid : report_grid) {
      const MechanismOutcome lie = mechanism(with_value(truth, i, bid));
      const double u = lie.ctr[i] * true_values[i] - lie.payments[i];
      ++report.checks;
      if (u > u_truth + tol) report.violations.push_back({i, bid, u - u_truth});
    }
  }
  return report;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 1) throw PreconditionError("grid needs at least one point");
  if (hi < lo) throw PreconditionError("grid bounds out of order");
  std::vector<double> grid(steps);
  for (int t = 0; t < steps; ++t) {
    grid[t] = steps == 1 ? lo : lo + (hi - lo) * t / (steps - 1);
  }
  return grid;
}

}  // namespace fnex
