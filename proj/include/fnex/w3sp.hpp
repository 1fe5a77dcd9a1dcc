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

// Weighted 3-set packing route for ad-ad, no-reset instances whose
// contextual graph is complete with a positive minimum weight.
//
// Slots are cut into blocks of two. Every (pair of ads, block) becomes a set
// {a_i, a_j, p} of weight
//
//   W = max(L_p q_i v_i + L_{p+1} g_ij q_j v_j, L_p q_j v_j + L_{p+1} g_ji q_i v_i)
//
// and every (ad, block) a singleton set {a_i, p} of weight L_p q_i v_i. With
// odd K the last slot forms a block that only takes singletons. A packing
// maps back to an allocation block by block.

#ifndef FNEX_W3SP_HPP_
#define FNEX_W3SP_HPP_

#include <vector>

#include "fnex/core.hpp"

namespace fnex {

struct PackingSet {
  std::vector<int> elements;  // ads are 0..N-1, block b is element N + b
  double weight = 0.0;
  int block = 0;
  int first = kBot;   // ad for the block's upper slot
  int second = kBot;  // ad for the lower slot, kBot for singletons
};

struct PackingInstance {
  int num_ads = 0;
  int num_blocks = 0;
  std::vector<int> block_slot;  // upper slot of each block, 0-based
  std::vector<PackingSet> sets;

  int universe_size() const { return num_ads + num_blocks; }
};

struct Packing {
  std::vector<int> chosen;  // indices into PackingInstance::sets
  double weight = 0.0;
};

enum class PackingMethod { kGreedy, kLocalSearch };

// Smallest off-diagonal gamma; 1 when N < 2.
double gamma_min(const Instance& inst);

PackingInstance build_w3sp(const Instance& inst);

Packing solve_w3sp(const PackingInstance& p, PackingMethod method);

bool is_disjoint(const PackingInstance& p, const std::vector<int>& chosen);

struct W3spResult {
  Allocation allocation;
  Packing packing;
  // Set when empty slots had to be squeezed out of the block layout.
  bool compacted = false;
};

W3spResult allocate_via_w3sp_detailed(const Instance& inst, PackingMethod method);
Allocation allocate_via_w3sp(const Instance& inst, PackingMethod method);

}  // namespace fnex

#endif  // FNEX_W3SP_HPP_
