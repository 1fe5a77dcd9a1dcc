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

#include "fnex/greedy_reset.hpp"
#include "fnex/harness.hpp"
#include "test_support.hpp"

namespace fnex {
namespace {

using testing::alloc;

TEST_CASE("four slots") {
  Instance inst = testing::make_aa(4, 4, 1, true);
  inst.lambda = {1.0, 0.9, 0.8 / 0.9, 0.7 / 0.8};
  inst.value = {4.0, 3.0, 2.0, 1.0};
  const Allocation theta = greedy_half(inst);
  CHECK(theta == alloc({1, 0, 2, 0}));
  CHECK(social_welfare(inst, theta) == doctest::Approx(6.4));
  CHECK(in_greedy_range(theta));
}

TEST_CASE("one slot takes the best ad") {
  Instance inst = testing::make_aa(3, 1, 1, true);
  inst.value = {1.0, 5.0, 2.0};
  CHECK(greedy_half(inst) == alloc({2}));
}

TEST_CASE("ties go to the smaller index") {
  Instance inst = testing::make_aa(3, 3, 1, true);
  inst.value = {1.0, 2.0, 2.0};
  CHECK(greedy_half(inst) == alloc({2, 0, 3}));
}

TEST_CASE("needs reset") {
  CHECK_THROWS_AS(greedy_half(testing::inst1()), PreconditionError);
}

TEST_CASE("range") {
  CHECK(in_greedy_range(alloc({1, 0, 2})));
  CHECK_FALSE(in_greedy_range(alloc({1, 2, 0})));
}

TEST_CASE("half ratio and range optimality") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenParams p;
    p.n = testing::pick(seed, 1, 6);
    p.k = testing::pick(seed + 1, 1, 5);
    p.window = testing::pick(seed + 2, 1, p.k);
    p.reset = true;
    p.seed = seed;
    const Instance inst = gen_random(p);
    const double sw = social_welfare(inst, greedy_half(inst));
    CHECK(sw >= 0.5 * testing::ref_optimum(inst) - 1e-12);
    CHECK(testing::close(sw, testing::ref_greedy_range_optimum(inst)));
  }
}

}  // namespace
}  // namespace fnex
