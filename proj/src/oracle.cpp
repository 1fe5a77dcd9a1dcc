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

#include "fnex/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fnex {
namespace {

bool beats(double candidate, double incumbent) {
  return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

// Depth-first walk in lexicographic order so the first of a set of ties is
// the lexicographically smallest sequence.
class Enumerator {
 public:
  Enumerator(const Instance& inst, bool allow_bot)
      : inst_(inst), allow_bot_(allow_bot), slots_(inst.k, kBot), used_(inst.n, 0) {}

  OracleResult run() {
    result_.value = -std::numeric_limits<double>::infinity();
    visit(0);
    return std::move(result_);
  }

 private:
  void visit(int slot) {
    if (slot == inst_.k) {
      ++result_.count;
      Allocation theta(slots_);
      const double sw = social_welfare(inst_, theta);
      if (result_.count == 1 || beats(sw, result_.value)) {
        result_.best = std::move(theta);
        result_.value = sw;
      }
      return;
    }
    if (allow_bot_) {
      slots_[slot] = kBot;
      visit(slot + 1);
    }
    for (int ad = 0; ad < inst_.n; ++ad) {
      if (used_[ad]) continue;
      used_[ad] = 1;
      slots_[slot] = ad;
      visit(slot + 1);
      used_[ad] = 0;
    }
    slots_[slot] = kBot;
  }

  const Instance& inst_;
  bool allow_bot_;
  std::vector<int> slots_;
  std::vector<char> used_;
  OracleResult result_;
};

}  // namespace

std::uint64_t enumeration_size(int n, int k) {
  std::uint64_t total = 1;
  const auto base = static_cast<std::uint64_t>(n) + 1;
  for (int i = 0; i < k; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= base;
  }
  return total;
}

bool oracle_fits(const Instance& inst, std::uint64_t cap) {
  return enumeration_size(inst.n, inst.k) <= cap;
}

OracleResult brute_force_optimum(const Instance& inst, bool allow_bot, std::uint64_t cap) {
  require_valid(inst);
  if (!oracle_fits(inst, cap)) {
    throw TooLargeError("instance too large for oracle: (N+1)^K exceeds the cap of " +
                        std::to_string(cap));
  }
  if (!allow_bot && inst.n < inst.k) {
    throw PreconditionError("disabling BOT requires N >= K");
  }
  return Enumerator(inst, allow_bot).run();
}

}  // namespace fnex
