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

#include "fnex/greedy_reset.hpp"

#include <algorithm>
#include <numeric>

namespace fnex {

Allocation greedy_half(const Instance& inst) {
  require_valid(inst);
  if (inst.model.kind != Externality::kAdAd || !inst.model.reset) {
    throw PreconditionError("greedy_half needs an ad-ad instance with reset");
  }
  std::vector<int> order(inst.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.quality[a] * inst.value[a] > inst.quality[b] * inst.value[b];
  });
  std::vector<int> slots(inst.k, kBot);
  for (int m = 0, next = 0; m < inst.k && next < inst.n; m += 2) slots[m] = order[next++];
  return Allocation(std::move(slots));
}

bool in_greedy_range(const Allocation& theta) {
  for (int m = 1; m < theta.size(); m += 2) {
    if (theta[m] != kBot) return false;
  }
  return true;
}

}  // namespace fnex
