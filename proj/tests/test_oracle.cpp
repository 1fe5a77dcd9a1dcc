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

#include "fnex/harness.hpp"
#include "fnex/oracle.hpp"
#include "test_support.hpp"

namespace fnex {
namespace {

using testing::alloc;

TEST_CASE("inst1 optimum") {
  const OracleResult r = brute_force_optimum(testing::inst1());
  CHECK(r.count == 7);
  CHECK(r.best == alloc({1, 2}));
  CHECK(r.value == doctest::Approx(2.25));
}

TEST_CASE("enumeration size") {
  CHECK(enumeration_size(2, 2) == 9);
  CHECK(enumeration_size(0, 3) == 1);
  CHECK(enumeration_size(1000, 10) == UINT64_MAX);
}

TEST_CASE("cap is enforced") {
  Instance inst = testing::make_aa(9, 8, 1, false);
  CHECK_FALSE(oracle_fits(inst));
  CHECK_THROWS_AS(brute_force_optimum(inst), TooLargeError);
  CHECK_NOTHROW(brute_force_optimum(testing::inst1(), true, 9));
  CHECK_THROWS_AS(brute_force_optimum(testing::inst1(), true, 8), TooLargeError);
}

TEST_CASE("no ads leaves every slot empty") {
  Instance inst = testing::make_aa(0, 2, 1, false);
  const OracleResult r = brute_force_optimum(inst);
  CHECK(r.best == Allocation::empty(2));
  CHECK(r.value == 0.0);
}

TEST_CASE("ties go to the lexicographically smallest allocation") {
  Instance inst = testing::make_aa(2, 1, 1, false);
  CHECK(brute_force_optimum(inst).best == alloc({1}));
}

TEST_CASE("matches the reference enumeration") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    GenParams p;
    p.n = testing::pick(seed, 1, 5);
    p.k = testing::pick(seed + 1000, 1, 4);
    p.kind = seed % 2 ? Externality::kAdAd : Externality::kSlotAd;
    p.window = testing::pick(seed + 2000, 1, p.k);
    p.reset = seed % 3 == 0;
    p.seed = seed;
    const Instance inst = gen_random(p);
    const OracleResult r = brute_force_optimum(inst);
    CHECK(testing::close(r.value, testing::ref_optimum(inst)));
    CHECK(testing::close(r.value, social_welfare(inst, r.best)));
    if (inst.n >= inst.k) {
      const OracleResult nb = brute_force_optimum(inst, false);
      CHECK(testing::close(nb.value, testing::ref_optimum(inst, false)));
    } else {
      CHECK_THROWS_AS(brute_force_optimum(inst, false), PreconditionError);
    }
  }
}

}  // namespace
}  // namespace fnex
