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

#include "fnex/w3sp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fnex {
namespace {

bool sets_overlap(const PackingSet& a, const PackingSet& b) {
  for (int x : a.elements) {
    if (std::find(b.elements.begin(), b.elements.end(), x) != b.elements.end()) return true;
  }
  return false;
}

double total_weight(const PackingInstance& p, const std::vector<int>& chosen) {
  double w = 0.0;
  for (int s : chosen) w += p.sets[s].weight;
  return w;
}

// Greedy completion of `chosen` by the sets in `order` that still fit.
void fill(const PackingInstance& p, const std::vector<int>& order, std::vector<int>& chosen) {
  std::vector<char> used(p.universe_size(), 0);
  for (int t : chosen) {
    for (int x : p.sets[t].elements) used[x] = 1;
  }
  for (int s : order) {
    const PackingSet& set = p.sets[s];
    if (std::any_of(set.elements.begin(), set.elements.end(), [&](int x) { return used[x]; })) {
      continue;
    }
    for (int x : set.elements) used[x] = 1;
    chosen.push_back(s);
  }
}

// Insert one set, drop the at most two it collides with, refill greedily;
// keep the move when the packing gets heavier.
void local_search(const PackingInstance& p, const std::vector<int>& order,
                  std::vector<int>& chosen) {
  double current = total_weight(p, chosen);
  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<char> in(p.sets.size(), 0);
    for (int s : chosen) in[s] = 1;
    for (int s : order) {
      if (in[s]) continue;
      std::vector<int> next;
      int conflicts = 0;
      for (int t : chosen) {
        if (sets_overlap(p.sets[s], p.sets[t])) {
          ++conflicts;
        } else {
          next.push_back(t);
        }
      }
      if (conflicts > 2) continue;
      next.push_back(s);
      fill(p, order, next);
      const double w = total_weight(p, next);
      if (w > current + 1e-12 * std::max(1.0, std::abs(current))) {
        chosen = std::move(next);
        current = w;
        improved = true;
        break;
      }
    }
  }
}

}  // namespace

double gamma_min(const Instance& inst) {
  double g = 1.0;
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (i != j) g = std::min(g, inst.gamma(i, j));
    }
  }
  return g;
}

PackingInstance build_w3sp(const Instance& inst) {
  require_valid(inst);
  if (inst.model.kind != Externality::kAdAd || inst.model.reset) {
    throw PreconditionError("the packing reduction needs an ad-ad, no-reset instance");
  }
  if (!(gamma_min(inst) > 0.0)) {
    throw PreconditionError("the packing reduction needs a complete contextual graph");
  }
  const std::vector<double> lam = prominences(inst);
  PackingInstance p;
  p.num_ads = inst.n;
  p.num_blocks = (inst.k + 1) / 2;
  for (int b = 0; b < p.num_blocks; ++b) p.block_slot.push_back(2 * b);

  for (int b = 0; b < p.num_blocks; ++b) {
    const int slot = p.block_slot[b];
    const int element = inst.n + b;
    if (slot + 1 < inst.k) {
      for (int i = 0; i < inst.n; ++i) {
        for (int j = i + 1; j < inst.n; ++j) {
          const double qi = inst.quality[i] * inst.value[i];
          const double qj = inst.quality[j] * inst.value[j];
          const double ij = lam[slot] * qi + lam[slot + 1] * inst.gamma(i, j) * qj;
          const double ji = lam[slot] * qj + lam[slot + 1] * inst.gamma(j, i) * qi;
          PackingSet s;
          s.elements = {i, j, element};
          s.block = b;
          if (ij >= ji) {
            s.weight = ij;
            s.first = i;
            s.second = j;
          } else {
            s.weight = ji;
            s.first = j;
            s.second = i;
          }
          p.sets.push_back(std::move(s));
        }
      }
    }
    for (int i = 0; i < inst.n; ++i) {
      PackingSet s;
      s.elements = {i, element};
      s.block = b;
      s.first = i;
      s.weight = lam[slot] * inst.quality[i] * inst.value[i];
      p.sets.push_back(std::move(s));
    }
  }
  return p;
}

bool is_disjoint(const PackingInstance& p, const std::vector<int>& chosen) {
  std::vector<char> used(p.universe_size(), 0);
  for (int s : chosen) {
    for (int x : p.sets.at(s).elements) {
      if (used[x]) return false;
      used[x] = 1;
    }
  }
  return true;
}

Packing solve_w3sp(const PackingInstance& p, PackingMethod method) {
  std::vector<int> order(p.sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return p.sets[a].weight > p.sets[b].weight; });
  Packing out;
  fill(p, order, out.chosen);
  if (method == PackingMethod::kLocalSearch) local_search(p, order, out.chosen);
  std::sort(out.chosen.begin(), out.chosen.end());
  out.weight = total_weight(p, out.chosen);
  return out;
}

W3spResult allocate_via_w3sp_detailed(const Instance& inst, PackingMethod method) {
  const PackingInstance p = build_w3sp(inst);
  W3spResult result;
  result.packing = solve_w3sp(p, method);
  std::vector<int> layout(inst.k, kBot);
  for (int s : result.packing.chosen) {
    const PackingSet& set = p.sets[s];
    const int slot = p.block_slot[set.block];
    layout[slot] = set.first;
    if (set.second != kBot) layout[slot + 1] = set.second;
  }
  // Without reset an empty slot blocks everything below it: close the gaps.
  std::vector<int> slots;
  for (int ad : layout) {
    if (ad != kBot) slots.push_back(ad);
  }
  for (int m = 0; m < static_cast<int>(slots.size()); ++m) {
    if (layout[m] != slots[m]) result.compacted = true;
  }
  slots.resize(inst.k, kBot);
  result.allocation = Allocation(std::move(slots));
  return result;
}

Allocation allocate_via_w3sp(const Instance& inst, PackingMethod method) {
  return allocate_via_w3sp_detailed(inst, method).allocation;
}

}  // namespace fnex
