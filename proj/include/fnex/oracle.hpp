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

#ifndef FNEX_ORACLE_HPP_
#define FNEX_ORACLE_HPP_

#include <cstdint>

#include "fnex/core.hpp"

namespace fnex {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

class TooLargeError : public Error {
 public:
  using Error::Error;
};

struct OracleResult {
  Allocation best;
  double value = 0.0;
  std::uint64_t count = 0;
};

// (N+1)^K, saturating at UINT64_MAX.
std::uint64_t enumeration_size(int n, int k);

// True when brute_force_optimum would accept the instance under `cap`.
bool oracle_fits(const Instance& inst, std::uint64_t cap = kDefaultEnumerationCap);

// Exhaustive maximum of social welfare over all length-K sequences of
// distinct ads, with the fictitious ad allowed in any slot when `allow_bot`.
// Among allocations within a relative 1e-12 of each other the
// lexicographically smallest one wins (BOT sorts first).
OracleResult brute_force_optimum(const Instance& inst, bool allow_bot = true,
                                 std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace fnex

#endif  // FNEX_ORACLE_HPP_
