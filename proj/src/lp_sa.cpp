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

#include "fnex/lp_sa.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace fnex {
namespace {

Rational exact(double x) { return Rational(x); }

Rational slot_gamma(const Instance& inst, int slot, int ad) {
  if (ad == kBot) return inst.model.reset ? 1 : 0;
  return exact(inst.gamma(slot, ad));
}

void enumerate_tails(int length, int n, bool with_bot, std::vector<int>& prefix,
                     std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == length) {
    out.push_back(prefix);
    return;
  }
  if (with_bot) {
    prefix.push_back(kBot);
    enumerate_tails(length, n, with_bot, prefix, out);
    prefix.pop_back();
  }
  for (int ad = 0; ad < n; ++ad) {
    if (std::find(prefix.begin(), prefix.end(), ad) != prefix.end()) continue;
    prefix.push_back(ad);
    enumerate_tails(length, n, with_bot, prefix, out);
    prefix.pop_back();
  }
}

int tail_length(int slot, int window) { return std::min(slot + 1, window + 1); }

// Context shared by a tail at `slot` and its successors at `slot + 1`.
int context_length(int slot, int window) { return tail_length(slot + 1, window) - 1; }

std::vector<int> suffix(const std::vector<int>& tail, int len) {
  return {tail.end() - len, tail.end()};
}

std::vector<int> prefix(const std::vector<int>& tail, int len) {
  return {tail.begin(), tail.begin() + len};
}

// Positive-mass successors of every context, in variable order.
using SupportIndex = std::vector<std::map<std::vector<int>, std::vector<int>>>;

template <typename Keep>
SupportIndex support_index(const LpModel& model, Keep keep) {
  SupportIndex index(model.slots);
  for (std::size_t v = 0; v < model.variables.size(); ++v) {
    if (!keep(v)) continue;
    const auto& var = model.variables[v];
    const int ctx = var.slot == 0 ? 0 : context_length(var.slot - 1, model.window);
    index[var.slot][prefix(var.tail, ctx)].push_back(static_cast<int>(v));
  }
  return index;
}

class Walk {
 public:
  explicit Walk(const LpModel& model) : model_(model) {}

  void push(int var) {
    vars_.push_back(var);
    const auto& tail = model_.variables[var].tail;
    if (vars_.size() == 1) {
      entries_.assign(tail.begin(), tail.end());
    } else {
      entries_.push_back(tail.back());
    }
  }

  void pop() {
    vars_.pop_back();
    if (vars_.empty()) {
      entries_.clear();
    } else {
      entries_.pop_back();
    }
  }

  bool last_entry_fresh() const {
    const int ad = entries_.back();
    if (ad == kBot) return true;
    return std::count(entries_.begin(), entries_.end(), ad) == 1;
  }

  bool all_distinct() const {
    std::vector<int> reals;
    for (int ad : entries_) {
      if (ad != kBot) reals.push_back(ad);
    }
    std::sort(reals.begin(), reals.end());
    return std::adjacent_find(reals.begin(), reals.end()) == reals.end();
  }

  std::vector<int> context() const {
    const auto& tail = model_.variables[vars_.back()].tail;
    return suffix(tail, context_length(model_.variables[vars_.back()].slot, model_.window));
  }

  Rational value() const {
    Rational total = 0;
    for (int v : vars_) total += model_.problem.objective[v];
    return total;
  }

  const std::vector<int>& entries() const { return entries_; }
  int depth() const { return static_cast<int>(vars_.size()); }

 private:
  const LpModel& model_;
  std::vector<int> vars_;
  std::vector<int> entries_;
};

Allocation padded(const std::vector<int>& entries, int k) {
  std::vector<int> slots(entries);
  slots.resize(k, kBot);
  return Allocation(std::move(slots));
}

bool search_support(const LpModel& model, const SupportIndex& index, const Rational& target,
                    Walk& walk) {
  if (walk.depth() == model.slots) return walk.value() == target;
  const std::vector<int> ctx = walk.depth() == 0 ? std::vector<int>{} : walk.context();
  const auto it = index[walk.depth()].find(ctx);
  if (it == index[walk.depth()].end()) return false;
  for (int v : it->second) {
    walk.push(v);
    if (walk.last_entry_fresh() && search_support(model, index, target, walk)) return true;
    walk.pop();
  }
  return false;
}


// Depth-first branch and bound. A branch fixes whether slot m holds symbol a
// (a real ad or the fictitious one); once every slot is fixed the LP is
// integral, so the search always terminates with an optimum.
class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const LpModel& model, std::uint64_t seed)
      : inst_(inst), model_(model), seed_(seed) {}

  void run(const FractionalSolution& root) {
    visit(root);
    if (!found_) throw std::logic_error("branch and bound found no allocation");
  }

  int nodes() const { return nodes_; }
  const Decomposition& best_decomposition() const { return best_; }

 private:
  void solve_child() {
    LpModel child = model_;
    for (const lp::Row& row : extra_) child.problem.rows.push_back(row);
    const lp::Solution sol = lp::maximize(child.problem);
    ++nodes_;
    if (sol.status != lp::Status::kOptimal) return;
    visit({sol.x, sol.objective, sol.reduced_costs});
  }

  void visit(const FractionalSolution& frac) {
    if (found_ && frac.objective_value <= incumbent_) return;
    LpModel node = model_;
    for (const lp::Row& row : extra_) node.problem.rows.push_back(row);
    try {
      Decomposition d = decompose_integral(inst_, node, frac, seed_);
      incumbent_ = frac.objective_value;
      best_ = std::move(d);
      found_ = true;
      return;
    } catch (const IntegralityError&) {
    }

    // First (slot, symbol) whose assignment mass is fractional.
    for (int m = 0; m < model_.slots; ++m) {
      std::map<int, Rational> mass;
      for (std::size_t v = 0; v < model_.variables.size(); ++v) {
        if (model_.variables[v].slot == m && sgn(frac.values[v]) > 0) {
          mass[model_.variables[v].tail.back()] += frac.values[v];
        }
      }
      for (const auto& [symbol, total] : mass) {
        if (total == 1) continue;
        lp::Row row;
        row.sense = lp::Sense::kEqual;
        for (std::size_t v = 0; v < model_.variables.size(); ++v) {
          if (model_.variables[v].slot == m && model_.variables[v].tail.back() == symbol) {
            row.terms.emplace_back(static_cast<int>(v), 1);
          }
        }
        for (int fixed : {1, 0}) {
          row.rhs = fixed;
          extra_.push_back(row);
          solve_child();
          extra_.pop_back();
        }
        return;
      }
    }
    throw std::logic_error("integral slot assignment without an integral allocation");
  }

  const Instance& inst_;
  const LpModel& model_;
  std::uint64_t seed_;
  std::vector<lp::Row> extra_;
  int nodes_ = 1;
  bool found_ = false;
  Rational incumbent_;
  Decomposition best_;
};

}  // namespace

Rational exact_social_welfare(const Instance& inst, const Allocation& theta) {
  require_valid(inst, theta);
  Rational total = 0;
  Rational prominence = 1;
  for (int pos = 0; pos < inst.k; ++pos) {
    if (inst.model.kind == Externality::kAdAd) prominence *= exact(inst.lambda[pos]);
    const int ad = theta[pos];
    if (ad == kBot) continue;
    Rational attention = inst.model.kind == Externality::kAdAd ? prominence : Rational(1);
    for (int l = std::max(0, pos - inst.model.window); l < pos; ++l) {
      if (inst.model.kind == Externality::kAdAd) {
        attention *= exact(adjacent_gamma(inst, theta[l], theta[l + 1]));
      } else {
        attention *= slot_gamma(inst, l, theta[l]);
      }
    }
    total += exact(inst.quality[ad]) * exact(inst.value[ad]) * attention;
  }
  return total;
}

Instance trim_slots(const Instance& inst, int slots) {
  if (slots < 1 || slots > inst.k) throw PreconditionError("cannot trim to that many slots");
  Instance out = inst;
  out.k = slots;
  out.model.window = std::min(inst.model.window, slots);
  if (inst.model.kind == Externality::kAdAd) {
    out.lambda.resize(slots);
  } else {
    out.gamma = Matrix(slots, inst.n);
    for (int m = 0; m < slots; ++m) {
      for (int j = 0; j < inst.n; ++j) out.gamma(m, j) = inst.gamma(m, j);
    }
  }
  return out;
}

LpModel build_lp(const Instance& inst, bool allow_gaps) {
  require_valid(inst);
  if (inst.model.kind != Externality::kSlotAd) {
    throw PreconditionError("the LP formulation covers slot-ad externalities only");
  }
  if (!inst.model.reset && inst.n < inst.k && !allow_gaps) {
    throw PreconditionError("no-reset LP needs N >= K unless gaps are allowed");
  }
  LpModel model;
  model.slots = inst.k;
  model.window = std::min(inst.model.window, inst.k - 1);
  model.reset = inst.model.reset;
  model.gaps = inst.model.reset || inst.n < inst.k;

  for (int m = 0; m < model.slots; ++m) {
    std::vector<std::vector<int>> tails;
    std::vector<int> scratch;
    enumerate_tails(tail_length(m, model.window), inst.n, model.gaps, scratch, tails);
    for (auto& tail : tails) model.variables.push_back({m, std::move(tail)});
  }

  auto& problem = model.problem;
  problem.num_vars = static_cast<int>(model.variables.size());
  problem.objective.reserve(model.variables.size());
  for (const auto& var : model.variables) {
    const int ad = var.tail.back();
    if (ad == kBot) {
      problem.objective.emplace_back(0);
      continue;
    }
    Rational coef = exact(inst.quality[ad]) * exact(inst.value[ad]);
    const int first_slot = var.slot - static_cast<int>(var.tail.size()) + 1;
    for (std::size_t t = 0; t + 1 < var.tail.size(); ++t) {
      coef *= slot_gamma(inst, first_slot + static_cast<int>(t), var.tail[t]);
    }
    problem.objective.push_back(std::move(coef));
  }

  // At most once per ad.
  std::vector<lp::Row> ad_rows(inst.n);
  for (int v = 0; v < problem.num_vars; ++v) {
    const int ad = model.variables[v].tail.back();
    if (ad != kBot) ad_rows[ad].terms.emplace_back(v, 1);
  }
  for (auto& row : ad_rows) {
    row.sense = lp::Sense::kLessEqual;
    row.rhs = 1;
    problem.rows.push_back(std::move(row));
  }
  model.ad_rows = inst.n;

  // Flow conservation between consecutive slots.
  for (int m = 0; m + 1 < model.slots; ++m) {
    const int ctx = context_length(m, model.window);
    std::map<std::vector<int>, lp::Row> rows;
    for (int v = 0; v < problem.num_vars; ++v) {
      const auto& var = model.variables[v];
      if (var.slot == m) rows[suffix(var.tail, ctx)].terms.emplace_back(v, 1);
      if (var.slot == m + 1) rows[prefix(var.tail, ctx)].terms.emplace_back(v, -1);
    }
    for (auto& [key, row] : rows) {
      row.sense = lp::Sense::kEqual;
      row.rhs = 0;
      problem.rows.push_back(std::move(row));
      ++model.flow_rows;
    }
  }

  // Slot 1 holds one unit; the other slots follow by conservation.
  lp::Row first;
  first.sense = lp::Sense::kEqual;
  first.rhs = 1;
  for (int v = 0; v < problem.num_vars; ++v) {
    if (model.variables[v].slot == 0) first.terms.emplace_back(v, 1);
  }
  problem.rows.push_back(std::move(first));
  model.slot_rows = 1;
  return model;
}

FractionalSolution solve_lp(const LpModel& model) {
  const lp::Solution sol = lp::maximize(model.problem);
  if (sol.status != lp::Status::kOptimal) {
    // Placing distinct ads (or BOT) in every slot is always feasible and the
    // objective is bounded by the ad rows.
    throw std::logic_error("slot-ad LP is not optimal-feasible; model construction is broken");
  }
  return {sol.x, sol.objective, sol.reduced_costs};
}

Decomposition decompose_integral(const Instance& inst, const LpModel& model,
                                 const FractionalSolution& frac, std::uint64_t seed) {
  const SupportIndex index =
      support_index(model, [&](std::size_t v) { return sgn(frac.values[v]) > 0; });
  std::mt19937_64 rng(seed);
  Decomposition out;

  for (int draw = 1; draw <= kDecompositionDraws; ++draw) {
    out.draws = draw;
    Walk walk(model);
    bool dead_end = false;
    for (int m = 0; m < model.slots; ++m) {
      const std::vector<int> ctx = m == 0 ? std::vector<int>{} : walk.context();
      const auto it = index[m].find(ctx);
      if (it == index[m].end()) {
        dead_end = true;
        break;
      }
      std::vector<double> weights;
      for (int v : it->second) weights.push_back(frac.values[v].get_d());
      std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
      walk.push(it->second[pick(rng)]);
    }
    // Walks that revisit an ad are not allocations; they are rejected.
    if (dead_end || !walk.all_distinct()) continue;
    if (walk.value() == frac.objective_value) {
      out.allocation = padded(walk.entries(), inst.k);
      return out;
    }
  }

  Walk walk(model);
  out.fallback = true;
  if (search_support(model, index, frac.objective_value, walk)) {
    out.allocation = padded(walk.entries(), inst.k);
    return out;
  }
  // Every optimal solution, integral ones included, lives on these columns.
  const SupportIndex face = support_index(model, [&](std::size_t v) {
    return v < frac.reduced_costs.size() && sgn(frac.reduced_costs[v]) == 0;
  });
  Walk face_walk(model);
  if (!search_support(model, face, frac.objective_value, face_walk)) {
    throw IntegralityError("integrality violated: no allocation attains the LP value " +
                           to_decimal(frac.objective_value));
  }
  out.face_search = true;
  out.allocation = padded(face_walk.entries(), inst.k);
  return out;
}

SaSolution solve_fne_sa(const Instance& inst, std::uint64_t seed) {
  require_valid(inst);
  if (inst.model.kind != Externality::kSlotAd) {
    throw PreconditionError("solve_fne_sa needs slot-ad externalities");
  }
  SaSolution out;
  const LpModel model = build_lp(inst, true);
  const FractionalSolution frac = solve_lp(model);
  out.lp_value = frac.objective_value;
  out.variables = model.problem.num_vars;
  out.rows = static_cast<int>(model.problem.rows.size());
  try {
    out.decomposition = decompose_integral(inst, model, frac, seed);
    out.allocation = out.decomposition.allocation;
  } catch (const IntegralityError&) {
    out.root_integral = false;
    BranchAndBound search(inst, model, seed);
    search.run(frac);
    out.nodes = search.nodes();
    out.decomposition = search.best_decomposition();
    out.allocation = out.decomposition.allocation;
  }
  out.welfare = exact_social_welfare(inst, out.allocation);
  if (out.root_integral && out.welfare != out.lp_value) {
    throw std::logic_error("decomposed allocation disagrees with its LP tail values");
  }
  return out;
}

std::string to_decimal(const Rational& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x.get_d();
  return os.str();
}

}  // namespace fnex
