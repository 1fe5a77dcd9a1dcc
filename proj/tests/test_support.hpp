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

// Shared fixtures and test-side reference implementations. Nothing here
// calls into the library's evaluators, so it can serve as ground truth.

#ifndef FNEX_TESTS_TEST_SUPPORT_HPP_
#define FNEX_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fnex/core.hpp"
#include "fnex/harness.hpp"

namespace fnex::testing {

inline Instance make_aa(int n, int k, int window, bool reset) {
  Instance inst;
  inst.model = ModelSpec{Externality::kAdAd, window, reset};
  inst.n = n;
  inst.k = k;
  inst.quality.assign(n, 1.0);
  inst.value.assign(n, 1.0);
  inst.lambda.assign(k, 1.0);
  inst.gamma = Matrix(n, n, 0.0);
  return inst;
}

inline Instance make_sa(int n, int k, int window, bool reset) {
  Instance inst;
  inst.model = ModelSpec{Externality::kSlotAd, window, reset};
  inst.n = n;
  inst.k = k;
  inst.quality.assign(n, 1.0);
  inst.value.assign(n, 1.0);
  inst.gamma = Matrix(k, n, 1.0);
  return inst;
}

// AA, no reset, c = K = 2, q = (1, 1), v = (2, 1), lambda = (1, 0.5),
// gamma_12 = 0.5, gamma_21 = 1.
inline Instance inst1() {
  Instance inst = make_aa(2, 2, 2, false);
  inst.value = {2.0, 1.0};
  inst.lambda = {1.0, 0.5};
  inst.gamma(0, 1) = 0.5;
  inst.gamma(1, 0) = 1.0;
  return inst;
}

inline Allocation alloc(std::vector<int> one_based) {
  for (int& a : one_based) a = a == 0 ? kBot : a - 1;
  return Allocation(std::move(one_based));
}

// Straight transcription of the CTR definitions, BOT included.
inline double ref_ctr(const Instance& inst, const std::vector<int>& theta, int ad) {
  const auto it = std::find(theta.begin(), theta.end(), ad);
  if (it == theta.end()) return 0.0;
  const int pos = static_cast<int>(it - theta.begin());
  const double bot = inst.model.reset ? 1.0 : 0.0;
  double g = 1.0;
  if (inst.model.kind == Externality::kAdAd) {
    for (int m = 0; m <= pos; ++m) g *= inst.lambda[m];
    for (int l = std::max(0, pos - inst.model.window); l < pos; ++l) {
      const int up = theta[l];
      const int down = theta[l + 1];
      g *= (up == kBot || down == kBot) ? bot : inst.gamma(up, down);
    }
  } else {
    for (int m = std::max(0, pos - inst.model.window); m < pos; ++m) {
      g *= theta[m] == kBot ? bot : inst.gamma(m, theta[m]);
    }
  }
  return inst.quality[ad] * g;
}

inline double ref_sw(const Instance& inst, const std::vector<int>& theta) {
  double sw = 0.0;
  for (int i = 0; i < inst.n; ++i) sw += ref_ctr(inst, theta, i) * inst.value[i];
  return sw;
}

inline double ref_sw(const Instance& inst, const Allocation& theta) {
  return ref_sw(inst, std::vector<int>(theta.slots().begin(), theta.slots().end()));
}

// Every length-K sequence of distinct ads, optionally with BOT entries.
inline void for_each_allocation(int n, int k, bool allow_bot,
                                const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> theta(k, kBot);
  std::vector<char> used(n, 0);
  std::function<void(int)> rec = [&](int m) {
    if (m == k) {
      fn(theta);
      return;
    }
    if (allow_bot) {
      theta[m] = kBot;
      rec(m + 1);
    }
    for (int a = 0; a < n; ++a) {
      if (used[a]) continue;
      used[a] = 1;
      theta[m] = a;
      rec(m + 1);
      used[a] = 0;
    }
  };
  rec(0);
}

inline double ref_optimum(const Instance& inst, bool allow_bot = true) {
  double best = 0.0;
  for_each_allocation(inst.n, inst.k, allow_bot,
                      [&](const std::vector<int>& t) { best = std::max(best, ref_sw(inst, t)); });
  return best;
}

// Best welfare over allocations that leave every even slot empty.
inline double ref_greedy_range_optimum(const Instance& inst) {
  double best = 0.0;
  for_each_allocation(inst.n, inst.k, true, [&](const std::vector<int>& t) {
    for (int m = 1; m < inst.k; m += 2) {
      if (t[m] != kBot) return;
    }
    best = std::max(best, ref_sw(inst, t));
  });
  return best;
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + salt);
  return rng();
}

// Random sizes within [lo, hi] drawn from a seed.
inline int pick(std::uint64_t seed, int lo, int hi) {
  std::mt19937_64 rng(seed);
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// The cc_approx non-monotonicity instance: K = 3, N = 4, tau = 1,
// phi = 0.1, Lambda = (1, 0.9, 0.8), delta = 1/32 and epsilon = 7/8 with all
// three slots used.
struct CcFixture {
  static constexpr double kTau = 1.0;
  static constexpr double kPhi = 0.1;
  static constexpr double kDelta = 1.0 / 32.0;
  static constexpr double kEpsilon = 7.0 / 8.0;
  Instance inst;
  double lambda2 = 0.9;
  double lambda3 = 0.8;
  double threshold = 0.0;
  std::vector<double> grid;
};

inline CcFixture cc_fixture() {
  CcFixture f;
  const double t = CcFixture::kTau;
  f.inst = make_aa(4, 3, 3, false);
  f.inst.lambda = {1.0, 0.9, 0.8 / 0.9};
  f.inst.value = {
      std::exp2(2 * t) * (f.lambda2 - f.lambda3 * std::exp2(-6 * t)) / (f.lambda2 - f.lambda3) +
          3.0,
      1.0, 1.0, 1.0};
  f.inst.gamma(0, 1) = std::exp2((-4.0 + CcFixture::kPhi) * t);
  f.inst.gamma(0, 2) = std::exp2(-t);
  f.inst.gamma(1, 3) = std::exp2(-t);
  f.inst.gamma(2, 1) = std::exp2(-t);
  f.threshold =
      std::exp2(2 * t) * (f.lambda2 - f.lambda3 * std::exp2(-4 * t)) / (f.lambda2 - f.lambda3);
  for (double x = 25.0; x <= 38.0 + 1e-12; x += 0.5) f.grid.push_back(x);
  return f;
}

// The w3sp non-monotonicity instance: N = K = 4, c = 1,
// Lambda = (1, 1, 0.8, 0.6), gamma_12 = gamma_21 = gamma_34 = 1,
// gamma_43 = 0.5 and every other off-diagonal gamma 0.5.
struct W3spFixture {
  Instance inst;
  double threshold = 0.0;       // v4 at which block 2 flips its order
  double closed_form_threshold = 0.0;  // Lambda4 g43 / (Lambda3^2 - Lambda3 Lambda4 g34)
  std::vector<double> grid;
};

inline W3spFixture w3sp_fixture() {
  W3spFixture f;
  f.inst = make_aa(4, 4, 1, false);
  f.inst.lambda = {1.0, 1.0, 0.8, 0.75};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) f.inst.gamma(i, j) = 0.5;
    }
  }
  f.inst.gamma(0, 1) = 1.0;
  f.inst.gamma(1, 0) = 1.0;
  f.inst.gamma(2, 3) = 1.0;
  f.inst.gamma(3, 2) = 0.5;
  f.inst.value = {100.0, 100.0, 0.75, 1.0};
  const double l3 = 0.8;
  const double l4 = 0.6;
  const double q3v3 = f.inst.quality[2] * f.inst.value[2];
  f.threshold = q3v3 * (l3 - l4 * f.inst.gamma(3, 2)) /
                (f.inst.quality[3] * (l3 - l4 * f.inst.gamma(2, 3)));
  f.closed_form_threshold = l4 * f.inst.gamma(3, 2) / (l3 * l3 - l3 * l4 * f.inst.gamma(2, 3));
  for (double v = 0.5; v <= 3.5 + 1e-12; v += 0.125) f.grid.push_back(v);
  return f;
}

// Exact best packing weight by subset enumeration over `sets` (each a list
// of universe elements).
inline double ref_best_packing(const std::vector<std::vector<int>>& sets,
                               const std::vector<double>& weights, int universe) {
  double best = 0.0;
  std::vector<char> used(universe, 0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t s, double w) {
    best = std::max(best, w);
    for (std::size_t t = s; t < sets.size(); ++t) {
      bool free = true;
      for (int x : sets[t]) free = free && !used[x];
      if (!free) continue;
      for (int x : sets[t]) used[x] = 1;
      rec(t + 1, w + weights[t]);
      for (int x : sets[t]) used[x] = 0;
    }
  };
  rec(0, 0.0);
  return best;
}

}  // namespace fnex::testing

#endif  // FNEX_TESTS_TEST_SUPPORT_HPP_
