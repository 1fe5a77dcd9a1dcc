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

// Half-approximate greedy for ad-ad instances with reset.
//
// Ads go to slots 1, 3, 5, ... in nonincreasing q_i v_i; every even slot
// stays empty, so each ad sees only the (resetting) fictitious ad above it.
// The result maximizes welfare over that range of allocations.

#ifndef FNEX_GREEDY_RESET_HPP_
#define FNEX_GREEDY_RESET_HPP_

#include "fnex/core.hpp"

namespace fnex {

Allocation greedy_half(const Instance& inst);

// Whether every even slot (1-based) of `theta` is empty.
bool in_greedy_range(const Allocation& theta);

}  // namespace fnex

#endif  // FNEX_GREEDY_RESET_HPP_
