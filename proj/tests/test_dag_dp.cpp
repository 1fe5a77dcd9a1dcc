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

#include "fnex/dag_dp.hpp"
#include "fnex/harness.hpp"
#include "fnex/oracle.hpp"
#include "test_support.hpp"

namespace fnex {
namespace {

using testing::alloc;

TEST_CASE("rename") {
  Instance inst = testing::make_aa(3, 3, 3, false);
  CHECK(topological_rename(inst) == std::vector<int>{0, 1, 2});
  Instance two = testing::make_aa(2, 2, 2, false);
  two.gamma(1, 0) = 1.0;
  CHECK(topological_rename(two) == std::vector<int>{1, 0});
  inst.gamma(0, 1) = inst.gamma(1, 2) = inst.gamma(2, 0) = 0.5;
  CHECK_THROWS_AS(topological_rename(inst), NotADagError);
  CHECK_FALSE(dag_dp_applicable(inst));
}

TEST_CASE("chain of two") {
  Instance inst = testing::make_aa(2, 2, 2, false);
  inst.gamma(0, 1) = 1.0;
  const Allocation theta = dp_optimal_dag(inst);
  CHECK(theta == alloc({1, 2}));
  CHECK(social_welfare(inst, theta) == doctest::Approx(2.0));
}

TEST_CASE("preconditions") {
  Instance inst = testing::make_aa(2, 2, 1, false);
  CHECK_THROWS_AS(fill_dp_table(inst), PreconditionError);
  inst.model.window = 2;
  inst.model.reset = true;
  CHECK_THROWS_AS(dp_optimal_dag(inst), PreconditionError);
  CHECK_THROWS_AS(dp_optimal_dag(testing::make_sa(2, 2, 2, false)), PreconditionError);
}

TEST_CASE("allocation is ordered under the renaming") {
  GenParams p;
  p.graph = GraphClass::kDag;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    p.n = testing::pick(seed, 1, 7);
    p.k = testing::pick(seed + 7, 1, 5);
    p.window = p.k;
    p.seed = seed;
    const Instance inst = gen_random(p);
    const std::vector<int> order = topological_rename(inst);
    std::vector<int> rank(inst.n);
    for (int r = 0; r < inst.n; ++r) rank[order[r]] = r;
    const Allocation theta = dp_optimal_dag(inst);
    int last = -1;
    for (int m = 0; m < inst.k && theta[m] != kBot; ++m) {
      CHECK(rank[theta[m]] > last);
      last = rank[theta[m]];
    }
    CHECK(testing::close(social_welfare(inst, theta), testing::ref_optimum(inst)));
  }
}

}  // namespace
}  // namespace fnex
