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

// Color-coding solvers for ad-ad, no-reset instances.
//
// Each run colors the ads at random and finds the best colorful allocation
// (pairwise distinct colors) of the first `slots_used` slots by dynamic
// programming over (color set, recent ads). Two frontier flavours:
//
//  * full window (window >= slots_used - 1): per (S, last ad) keep the
//    Pareto set of partial allocations over (welfare, Gamma of last ad);
//  * short window: per (S, last min(c+1, |S|) ads) keep the single best.
//
// Rounded runs add the prefix capacity to either key.
//
// The approximate solver truncates to K' = min(ceil(log2 N), K) slots,
// replaces each gamma by its rounded capacity floor(log2(1/gamma) / tau),
// caps the summed capacity of a prefix at floor(log2(1/delta) / tau) and
// keeps, per (S, last ad, capacity), only the partial allocation of highest
// rounded welfare. Rounded welfare prices each adjacent pair at
// 2^(-tau * (capacity + 1)), a lower bound on the true gamma.

#ifndef FNEX_COLOR_CODING_HPP_
#define FNEX_COLOR_CODING_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "fnex/core.hpp"

namespace fnex {

struct Coloring {
  std::vector<int> color;  // ad -> color in [0, num_colors)
  int num_colors = 1;
};

Coloring random_coloring(int n, int num_colors, std::mt19937_64& rng);

inline constexpr long kInfiniteCapacity = std::numeric_limits<long>::max();

// floor(log2(1/gamma) / tau); kInfiniteCapacity for gamma == 0.
long rounded_capacity(double gamma, double tau);

struct ApproxParams {
  double delta = 0.1;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  double reps = 3.0;
  // Slots to fill; defaults to K'. Setting it to K switches truncation off.
  std::optional<int> slots;
};

// K' = min(ceil(log2 N), K), at least 1.
int reduced_slots(int n, int k);
double rounding_tau(double epsilon, int slots);
long capacity_budget(double delta, double tau);
// ceil(reps * e^colors).
long coloring_count(double reps, int colors);

struct FrontierStats {
  std::size_t keys = 0;
  std::size_t max_entries_per_key = 0;
  std::size_t dominated_pairs = 0;  // only counted when auditing
};

struct ColorfulResult {
  Allocation allocation;  // length K, BOT below the filled prefix
  double welfare = 0.0;
  double rounded_welfare = 0.0;
  FrontierStats stats;
};

// Best colorful allocation of the first `slots_used` slots.
ColorfulResult colorful_dp_exact(const Instance& inst, const Coloring& coloring, int slots_used,
                                 bool audit = false);

// Capacity-bounded, bucketed variant used by cc_approx (full window only).
ColorfulResult colorful_dp_rounded(const Instance& inst, const Coloring& coloring,
                                   int slots_used, double tau, long budget);

// Best over ceil(reps * e^K) seeded colorings with K colors and all K slots.
Allocation cc_exact(const Instance& inst, std::uint64_t seed, double reps);

struct CcReport {
  Allocation allocation;
  double welfare = 0.0;
  double rounded_welfare = 0.0;
  int slots_used = 0;
  long colorings = 0;
  double tau = 0.0;
  long budget = 0;
  FrontierStats stats;  // worst case over colorings
};

CcReport cc_approx_report(const Instance& inst, const ApproxParams& params);
Allocation cc_approx(const Instance& inst, const ApproxParams& params);

// Maximal-in-range variant: exact best over the colorful allocations of the
// first K' slots for a coloring set fixed by `seed`, independent of values.
Allocation cc_mir(const Instance& inst, std::uint64_t seed, double reps);

// (1 - delta)(1 - epsilon) min(1, log2(N) / (2 min(N, K))).
double cc_approx_bound(const Instance& inst, double delta, double epsilon);

}  // namespace fnex

#endif  // FNEX_COLOR_CODING_HPP_
