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

#include "fnex/dag_dp.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace fnex {
namespace {

void require_ad_ad(const Instance& inst) {
  require_valid(inst);
  if (inst.model.kind != Externality::kAdAd) {
    throw PreconditionError("contextual graphs exist for ad-ad externalities only");
  }
}

}  // namespace

std::vector<int> topological_rename(const Instance& inst) {
  require_ad_ad(inst);
  std::vector<int> indegree(inst.n, 0);
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (i != j && inst.gamma(i, j) > 0.0) ++indegree[j];
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < inst.n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<int> order;
  order.reserve(inst.n);
  while (!ready.empty()) {
    const int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int j = 0; j < inst.n; ++j) {
      if (i != j && inst.gamma(i, j) > 0.0 && --indegree[j] == 0) ready.push(j);
    }
  }
  if (static_cast<int>(order.size()) != inst.n) {
    throw NotADagError("not a DAG: the contextual graph has a directed cycle");
  }
  return order;
}

bool dag_dp_applicable(const Instance& inst) {
  if (!validate_instance(inst).empty()) return false;
  if (inst.model.kind != Externality::kAdAd || inst.model.reset ||
      inst.model.window != inst.k) {
    return false;
  }
  try {
    topological_rename(inst);
  } catch (const NotADagError&) {
    return false;
  }
  return true;
}

DpTable fill_dp_table(const Instance& inst) {
  require_ad_ad(inst);
  if (inst.model.reset || inst.model.window != inst.k) {
    throw PreconditionError("the DAG dynamic program needs no-reset and window K");
  }
  DpTable table;
  table.order = topological_rename(inst);
  const std::vector<double> lam = prominences(inst);
  const int n = inst.n;
  const int k = inst.k;
  table.d.assign(n, std::vector<double>(k, 0.0));
  for (int r = n - 1; r >= 0; --r) {
    const int ad = table.order[r];
    const double qv = inst.quality[ad] * inst.value[ad];
    for (int m = k - 1; m >= 0; --m) {
      double tail = 0.0;
      if (m + 1 < k) {
        for (int s = r + 1; s < n; ++s) {
          tail = std::max(tail, inst.gamma(ad, table.order[s]) * table.d[s][m + 1]);
        }
      }
      table.d[r][m] = lam[m] * qv + tail;
    }
  }
  return table;
}

Allocation dp_optimal_dag(const Instance& inst) {
  const DpTable table = fill_dp_table(inst);
  Allocation out = Allocation::empty(inst.k);
  if (inst.n == 0) return out;

  // Argmax with ties to the smallest original ad index.
  auto better = [&](int cand_rank, double cand, int best_rank, double best) {
    if (best_rank < 0) return true;
    if (cand != best) return cand > best;
    return table.order[cand_rank] < table.order[best_rank];
  };

  int rank = -1;
  double best = 0.0;
  for (int r = 0; r < inst.n; ++r) {
    if (better(r, table.d[r][0], rank, best)) {
      rank = r;
      best = table.d[r][0];
    }
  }
  std::vector<int> slots(inst.k, kBot);
  slots[0] = table.order[rank];
  for (int m = 1; m < inst.k; ++m) {
    const int ad = table.order[rank];
    int next = -1;
    double next_value = 0.0;
    for (int s = rank + 1; s < inst.n; ++s) {
      const double value = inst.gamma(ad, table.order[s]) * table.d[s][m];
      if (better(s, value, next, next_value)) {
        next = s;
        next_value = value;
      }
    }
    // Nothing below is reachable through a positive gamma: leave it empty.
    if (next < 0 || next_value <= 0.0) break;
    rank = next;
    slots[m] = table.order[rank];
  }
  return Allocation(std::move(slots));
}

}  // namespace fnex
