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

#include <random>

#include "fnex/core.hpp"
#include "fnex/harness.hpp"
#include "fnex/json_io.hpp"
#include "test_support.hpp"

namespace fnex {
namespace {

using testing::alloc;
using testing::inst1;

bool has_message(const Instance& inst, const std::string& needle) {
  for (const auto& m : validate_instance(inst)) {
    if (m.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST_CASE("inst1 ctr and welfare") {
  const Instance inst = inst1();
  const Allocation theta = alloc({1, 2});
  CHECK(eval_ctr(inst, theta, 0) == doctest::Approx(1.0));
  CHECK(eval_ctr(inst, theta, 1) == doctest::Approx(0.25));
  CHECK(social_welfare(inst, theta) == doctest::Approx(2.25));
  CHECK(welfare_of_others(inst, theta, 0) == doctest::Approx(0.25));
}

TEST_CASE("bot above an ad kills it without reset") {
  Instance inst = inst1();
  CHECK(social_welfare(inst, alloc({0, 1})) == 0.0);
  inst.model.reset = true;
  CHECK(social_welfare(inst, alloc({0, 1})) == doctest::Approx(1.0));
}

TEST_CASE("unallocated ad has zero ctr") {
  const Instance inst = inst1();
  CHECK(eval_ctr(inst, alloc({1, 0}), 1) == 0.0);
}

TEST_CASE("validation messages") {
  Instance inst = inst1();
  CHECK(validate_instance(inst).empty());
  inst.quality[0] = 1.5;
  CHECK(has_message(inst, "quality out of [0,1]"));
  inst = inst1();
  inst.lambda[0] = 0.9;
  CHECK(has_message(inst, "lambda[1] must equal 1"));
  inst = inst1();
  inst.gamma(0, 1) = -0.1;
  CHECK(has_message(inst, "gamma out of [0,1]"));
  inst = inst1();
  inst.model.window = 3;
  CHECK(has_message(inst, "window"));
  CHECK_THROWS_AS(require_valid(inst), PreconditionError);
}

TEST_CASE("allocation validation") {
  const Instance inst = inst1();
  CHECK_THROWS_AS(require_valid(inst, alloc({1, 1})), PreconditionError);
  CHECK_THROWS_AS(require_valid(inst, alloc({1})), PreconditionError);
  CHECK_THROWS_AS(require_valid(inst, Allocation({0, 5})), PreconditionError);
  CHECK_NOTHROW(require_valid(inst, alloc({0, 0})));
}

TEST_CASE("allocation formatting and order") {
  CHECK(alloc({1, 0, 3}).to_string() == "<a1, BOT, a3>");
  CHECK(alloc({0, 2}) < alloc({1, 0}));
  CHECK(alloc({2, 1}).slot_of(0) == 1);
  CHECK(alloc({2, 1}).slot_of(2) == -1);
  CHECK(alloc({2, 0, 1}).allocated_count() == 2);
}

TEST_CASE("slot-ad ctr") {
  Instance inst = testing::make_sa(2, 3, 1, false);
  inst.quality = {0.5, 1.0};
  inst.gamma(0, 0) = 0.5;
  inst.gamma(0, 1) = 0.25;
  CHECK(eval_ctr(inst, alloc({1, 2}), 1) == doctest::Approx(0.5));
  CHECK(eval_ctr(inst, alloc({2, 1}), 0) == doctest::Approx(0.5 * 0.25));
  CHECK(eval_ctr(inst, alloc({0, 1}), 0) == 0.0);
  inst.model.reset = true;
  CHECK(eval_ctr(inst, alloc({0, 1}), 0) == doctest::Approx(0.5));
}

TEST_CASE("prune zero pairs") {
  Instance inst = testing::make_aa(3, 3, 1, true);
  inst.gamma(1, 2) = 1.0;
  CHECK(prune_zero_pairs(inst, alloc({1, 2, 3})) == alloc({0, 2, 3}));
  Instance two = testing::make_aa(2, 2, 1, true);
  CHECK(prune_zero_pairs(two, alloc({1, 2})) == alloc({0, 2}));
  Instance bad = two;
  bad.value[0] = 2.0;
  CHECK_THROWS_AS(prune_zero_pairs(bad, alloc({1, 2})), PreconditionError);
}

TEST_CASE("ctr matches the reference on random instances") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenParams p;
    p.n = 5;
    p.k = 4;
    p.kind = seed % 2 ? Externality::kAdAd : Externality::kSlotAd;
    p.window = 1 + static_cast<int>(seed % 4);
    p.reset = seed % 3 == 0;
    p.seed = seed;
    const Instance inst = gen_random(p);
    std::mt19937_64 rng(seed);
    std::vector<int> slots = {0, 1, 2, 3, 4};
    std::shuffle(slots.begin(), slots.end(), rng);
    slots.resize(4);
    slots[rng() % 4] = kBot;
    const Allocation theta(slots);
    for (int i = 0; i < inst.n; ++i) {
      CHECK(testing::close(eval_ctr(inst, theta, i), testing::ref_ctr(inst, slots, i)));
    }
  }
}

TEST_CASE("window K reproduces the cascade product") {
  GenParams p;
  p.n = 5;
  p.k = 5;
  p.window = 5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    p.seed = seed;
    const Instance inst = gen_random(p);
    const Allocation theta({4, 2, 0, 3, 1});
    double running = 1.0;
    for (int m = 0; m < 5; ++m) {
      running *= inst.lambda[m];
      if (m > 0) running *= inst.gamma(theta[m - 1], theta[m]);
      CHECK(testing::close(eval_ctr(inst, theta, theta[m]), inst.quality[theta[m]] * running));
    }
  }
}

TEST_CASE("ctr does not increase with the window") {
  GenParams p;
  p.n = 5;
  p.k = 5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    p.seed = seed;
    Instance inst = gen_random(p);
    const Allocation theta({1, 3, 0, 4, 2});
    for (int c = 1; c < 5; ++c) {
      inst.model.window = c;
      Instance wider = inst;
      wider.model.window = c + 1;
      for (int i = 0; i < inst.n; ++i) {
        CHECK(eval_ctr(wider, theta, i) <= eval_ctr(inst, theta, i) + 1e-15);
      }
    }
  }
}

TEST_CASE("json round trip") {
  const Instance inst = inst1();
  CHECK(instance_from_json(instance_to_json(inst)) == inst);
  const Allocation theta = alloc({2, 0});
  CHECK(allocation_from_json(allocation_to_json(theta)) == theta);
  CHECK(allocation_to_json(theta).dump() == R"([2,"BOT"])");
  CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(R"({"model":"xx"})")), FormatError);
}

TEST_CASE("with_value") {
  const Instance inst = with_value(inst1(), 1, 7.0);
  CHECK(inst.value[1] == 7.0);
  CHECK_THROWS_AS(with_value(inst1(), 2, 1.0), PreconditionError);
}

}  // namespace
}  // namespace fnex
