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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fnex/harness.hpp"
#include "fnex/oracle.hpp"
#include "fnex/w3sp.hpp"
#include "test_support.hpp"

namespace fnex {
namespace {

using testing::alloc;

Instance complete(std::uint64_t seed, int n, int k, double gmin) {
  GenParams p;
  p.n = n;
  p.k = k;
  p.graph = GraphClass::kCompleteGammaMin;
  p.gamma_min = gmin;
  p.seed = seed;
  return gen_random(p);
}

int count_pairs(const PackingInstance& p) {
  return static_cast<int>(std::count_if(p.sets.begin(), p.sets.end(),
                                        [](const PackingSet& s) { return s.second != kBot; }));
}

double reference_weight(const Instance& inst, int i, int j, int upper) {
  const std::vector<double> lam = prominences(inst);
  const double a = inst.quality[i] * inst.value[i];
  const double b = inst.quality[j] * inst.value[j];
  return std::max(lam[upper] * a + lam[upper + 1] * inst.gamma(i, j) * b,
                  lam[upper] * b + lam[upper + 1] * inst.gamma(j, i) * a);
}

TEST_CASE("two ads two slots") {
  Instance inst = testing::make_aa(2, 2, 1, false);
  inst.gamma(0, 1) = inst.gamma(1, 0) = 0.5;
  const PackingInstance p = build_w3sp(inst);
  CHECK(p.num_blocks == 1);
  CHECK(count_pairs(p) == 1);
  CHECK(p.sets.size() == 3);
  for (const PackingSet& s : p.sets) {
    CHECK(s.elements.size() <= 3);
    CHECK(std::count(s.elements.begin(), s.elements.end(), 2) == 1);
  }
}

TEST_CASE("symmetric pair") {
  Instance inst = testing::make_aa(2, 2, 1, false);
  inst.gamma(0, 1) = inst.gamma(1, 0) = 0.5;
  inst.lambda = {1.0, 0.8};
  const PackingInstance p = build_w3sp(inst);
  for (const PackingSet& s : p.sets) {
    if (s.second != kBot) CHECK(s.weight == doctest::Approx(1.0 + 0.8 * 0.5));
  }
}

TEST_CASE("weights on four ads") {
  const Instance inst = complete(7, 4, 4, 0.2);
  const PackingInstance p = build_w3sp(inst);
  CHECK(p.num_blocks == 2);
  CHECK(count_pairs(p) == 12);
  CHECK(p.sets.size() == 20);
  const std::vector<double> lam = prominences(inst);
  for (const PackingSet& s : p.sets) {
    const int upper = p.block_slot[s.block];
    if (s.second == kBot) {
      CHECK(s.weight == doctest::Approx(lam[upper] * inst.quality[s.first] * inst.value[s.first]));
    } else {
      CHECK(s.weight == doctest::Approx(reference_weight(inst, s.first, s.second, upper)));
      CHECK(s.weight >= reference_weight(inst, s.second, s.first, upper) - 1e-12);
    }
  }
}

TEST_CASE("odd slot count ends with a singleton block") {
  const PackingInstance p = build_w3sp(complete(1, 3, 3, 0.5));
  CHECK(p.num_blocks == 2);
  for (const PackingSet& s : p.sets) {
    if (s.block == 1) CHECK(s.second == kBot);
  }
}

TEST_CASE("needs a complete graph") {
  Instance inst = testing::make_aa(3, 2, 1, false);
  CHECK(gamma_min(inst) == 0.0);
  CHECK_THROWS_AS(build_w3sp(inst), PreconditionError);
  Instance reset = complete(1, 3, 2, 0.5);
  reset.model.reset = true;
  CHECK_THROWS_AS(build_w3sp(reset), PreconditionError);
}

PackingInstance manual(const std::vector<std::vector<int>>& sets, const std::vector<double>& w,
                       int universe) {
  PackingInstance p;
  p.num_ads = universe;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    PackingSet set;
    set.elements = sets[s];
    set.weight = w[s];
    p.sets.push_back(set);
  }
  return p;
}

TEST_CASE("disjoint sets are all chosen") {
  const PackingInstance p = manual({{0, 1}, {2}, {3, 4, 5}}, {1.0, 2.0, 3.0}, 6);
  const Packing k = solve_w3sp(p, PackingMethod::kGreedy);
  CHECK(k.chosen.size() == 3);
  CHECK(k.weight == doctest::Approx(6.0));
}

TEST_CASE("overlap keeps the heavier set") {
  const PackingInstance p = manual({{0, 1}, {1, 2}}, {3.0, 5.0}, 3);
  const Packing k = solve_w3sp(p, PackingMethod::kGreedy);
  CHECK(k.chosen == std::vector<int>{1});
}

TEST_CASE("local search fixes a greedy trap") {
  const PackingInstance p = manual({{0, 1}, {0, 2}, {1, 3}}, {5.0, 4.0, 4.0}, 4);
  CHECK(solve_w3sp(p, PackingMethod::kGreedy).weight == doctest::Approx(5.0));
  CHECK(solve_w3sp(p, PackingMethod::kLocalSearch).weight == doctest::Approx(8.0));
}

TEST_CASE("packings reach a third of the optimum") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int universe = 4 + static_cast<int>(rng() % 6);
    const int count = 1 + static_cast<int>(rng() % 12);
    std::vector<std::vector<int>> sets;
    std::vector<double> w;
    for (int s = 0; s < count; ++s) {
      std::vector<int> e;
      const int size = 1 + static_cast<int>(rng() % 3);
      while (static_cast<int>(e.size()) < size) {
        const int x = static_cast<int>(rng() % universe);
        if (std::find(e.begin(), e.end(), x) == e.end()) e.push_back(x);
      }
      sets.push_back(e);
      w.push_back(unit_draw(rng) * 10.0);
    }
    const PackingInstance p = manual(sets, w, universe);
    const double opt = testing::ref_best_packing(sets, w, universe);
    const Packing g = solve_w3sp(p, PackingMethod::kGreedy);
    const Packing l = solve_w3sp(p, PackingMethod::kLocalSearch);
    CHECK(is_disjoint(p, g.chosen));
    CHECK(is_disjoint(p, l.chosen));
    CHECK(g.weight >= opt / 3.0 - 1e-12);
    CHECK(l.weight >= g.weight - 1e-12);
    CHECK(l.weight <= opt + 1e-9);
  }
}

TEST_CASE("allocation ratio and sandwich") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const double gmin = seed % 2 ? 0.2 : 0.5;
    const Instance inst = complete(seed, testing::pick(seed, 2, 6), testing::pick(seed + 1, 1, 4),
                                   gmin);
    const W3spResult r = allocate_via_w3sp_detailed(inst, PackingMethod::kGreedy);
    const double sw = social_welfare(inst, r.allocation);
    const double opt = testing::ref_optimum(inst);
    const int c = std::min(inst.model.window, inst.k - 1);
    CHECK(sw >= gamma_min(inst) / 3.0 * opt - 1e-12);
    CHECK(sw >= std::pow(gamma_min(inst), c) * r.packing.weight - 1e-12);
    const PackingInstance p = build_w3sp(inst);
    std::vector<std::vector<int>> sets;
    std::vector<double> w;
    for (const PackingSet& s : p.sets) {
      sets.push_back(s.elements);
      w.push_back(s.weight);
    }
    CHECK(testing::ref_best_packing(sets, w, p.universe_size()) >= opt - 1e-9);
  }
}

}  // namespace
}  // namespace fnex
