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

#include "fnex/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fnex {
namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

void check_unit_range(std::span<const double> xs, const char* what,
                      std::vector<std::string>& out) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!in_unit_interval(xs[i])) {
      std::ostringstream os;
      os << what << " out of [0,1] at index " << i + 1 << " (" << xs[i] << ")";
      out.push_back(os.str());
    }
  }
}

}  // namespace

std::vector<double> prominences(const Instance& inst) {
  std::vector<double> out(inst.k, 1.0);
  if (inst.model.kind == Externality::kSlotAd) return out;
  double running = 1.0;
  for (int m = 0; m < inst.k && m < static_cast<int>(inst.lambda.size()); ++m) {
    running *= inst.lambda[m];
    out[m] = running;
  }
  return out;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.n < 0) out.emplace_back("ad count must be nonnegative");
  if (inst.k < 1) out.emplace_back("slot count must be positive");
  if (inst.model.window < 1 || inst.model.window > std::max(inst.k, 1)) {
    out.emplace_back("window must lie in [1, K]");
  }
  if (static_cast<int>(inst.quality.size()) != inst.n) {
    out.emplace_back("quality vector must have N entries");
  }
  if (static_cast<int>(inst.value.size()) != inst.n) {
    out.emplace_back("value vector must have N entries");
  }
  std::vector<std::string> ranges;
  check_unit_range(inst.quality, "quality", ranges);
  for (std::size_t i = 0; i < inst.value.size(); ++i) {
    if (!(inst.value[i] >= 0.0) || !std::isfinite(inst.value[i])) {
      ranges.push_back("value must be finite and nonnegative at index " +
                       std::to_string(i + 1));
    }
  }
  if (inst.model.kind == Externality::kAdAd) {
    if (static_cast<int>(inst.lambda.size()) != inst.k) {
      out.emplace_back("lambda vector must have K entries");
    } else {
      check_unit_range(inst.lambda, "lambda", ranges);
      if (!inst.lambda.empty() && inst.lambda[0] != 1.0) {
        out.emplace_back("lambda[1] must equal 1");
      }
    }
    if (inst.gamma.rows() != inst.n || inst.gamma.cols() != inst.n) {
      out.emplace_back("gamma must be N x N for ad-ad externalities");
    }
  } else {
    if (!inst.lambda.empty()) {
      out.emplace_back("lambda is only defined for ad-ad externalities");
    }
    if (inst.gamma.rows() != inst.k || inst.gamma.cols() != inst.n) {
      out.emplace_back("gamma must be K x N for slot-ad externalities");
    }
  }
  for (int r = 0; r < inst.gamma.rows(); ++r) {
    for (int c = 0; c < inst.gamma.cols(); ++c) {
      if (!in_unit_interval(inst.gamma(r, c))) {
        std::ostringstream os;
        os << "gamma out of [0,1] at (" << r + 1 << "," << c + 1 << ")";
        ranges.push_back(os.str());
      }
    }
  }
  out.insert(out.end(), ranges.begin(), ranges.end());
  return out;
}

void require_valid(const Instance& inst) {
  const auto violations = validate_instance(inst);
  if (violations.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& v : violations) msg += " " + v + ";";
  throw PreconditionError(msg);
}

Instance with_value(const Instance& inst, int ad, double value) {
  if (ad < 0 || ad >= inst.n) throw PreconditionError("ad index out of range");
  Instance out = inst;
  out.value[ad] = value;
  return out;
}

int Allocation::slot_of(int ad) const {
  const auto it = std::find(slots_.begin(), slots_.end(), ad);
  return it == slots_.end() ? -1 : static_cast<int>(it - slots_.begin());
}

int Allocation::allocated_count() const {
  return static_cast<int>(
      std::count_if(slots_.begin(), slots_.end(), [](int a) { return a != kBot; }));
}

std::string Allocation::to_string() const {
  std::string out = "<";
  for (std::size_t m = 0; m < slots_.size(); ++m) {
    if (m > 0) out += ", ";
    out += slots_[m] == kBot ? std::string("BOT") : "a" + std::to_string(slots_[m] + 1);
  }
  return out + ">";
}

void require_valid(const Instance& inst, const Allocation& theta) {
  if (theta.size() != inst.k) {
    throw PreconditionError("allocation must have exactly K = " +
                            std::to_string(inst.k) + " entries, got " +
                            std::to_string(theta.size()));
  }
  std::vector<char> seen(inst.n, 0);
  for (int ad : theta.slots()) {
    if (ad == kBot) continue;
    if (ad < 0 || ad >= inst.n) throw PreconditionError("allocation names an unknown ad");
    if (seen[ad]) throw PreconditionError("allocation repeats ad a" + std::to_string(ad + 1));
    seen[ad] = 1;
  }
}

double adjacent_gamma(const Instance& inst, int upper, int lower) {
  if (upper == kBot || lower == kBot) return inst.model.reset ? 1.0 : 0.0;
  return inst.gamma(upper, lower);
}

double eval_ctr(const Instance& inst, const Allocation& theta, int ad) {
  if (ad < 0 || ad >= inst.n) throw PreconditionError("ad index out of range");
  const int pos = theta.slot_of(ad);
  if (pos < 0) return 0.0;
  const int first = std::max(0, pos - inst.model.window);
  double attention = 1.0;
  if (inst.model.kind == Externality::kAdAd) {
    for (int m = 0; m <= pos; ++m) attention *= inst.lambda[m];
    for (int l = first; l < pos; ++l) attention *= adjacent_gamma(inst, theta[l], theta[l + 1]);
  } else {
    for (int m = first; m < pos; ++m) {
      const int above = theta[m];
      attention *= above == kBot ? (inst.model.reset ? 1.0 : 0.0) : inst.gamma(m, above);
    }
  }
  return inst.quality[ad] * attention;
}

double social_welfare(const Instance& inst, const Allocation& theta) {
  double sw = 0.0;
  for (int ad : theta.slots()) {
    if (ad != kBot) sw += eval_ctr(inst, theta, ad) * inst.value[ad];
  }
  return sw;
}

double welfare_of_others(const Instance& inst, const Allocation& theta, int ad) {
  double sw = 0.0;
  for (int other : theta.slots()) {
    if (other != kBot && other != ad) sw += eval_ctr(inst, theta, other) * inst.value[other];
  }
  return sw;
}

Allocation prune_zero_pairs(const Instance& inst, const Allocation& theta) {
  require_valid(inst);
  require_valid(inst, theta);
  const bool unit_ads =
      std::all_of(inst.quality.begin(), inst.quality.end(), [](double x) { return x == 1.0; }) &&
      std::all_of(inst.value.begin(), inst.value.end(), [](double x) { return x == 1.0; }) &&
      std::all_of(inst.lambda.begin(), inst.lambda.end(), [](double x) { return x == 1.0; });
  bool binary = true;
  for (int i = 0; i < inst.gamma.rows(); ++i) {
    for (int j = 0; j < inst.gamma.cols(); ++j) {
      if (i != j && inst.gamma(i, j) != 0.0 && inst.gamma(i, j) != 1.0) binary = false;
    }
  }
  if (inst.model.kind != Externality::kAdAd || inst.model.window != 1 || !inst.model.reset ||
      !binary || !unit_ads) {
    throw PreconditionError(
        "prune_zero_pairs needs a unit ad-ad instance with window 1, reset and binary gamma");
  }

  // Top-down: once an upper ad is dropped its pair with the ad above vanishes.
  std::vector<int> slots(theta.slots().begin(), theta.slots().end());
  for (int m = 0; m + 1 < inst.k; ++m) {
    if (slots[m] != kBot && slots[m + 1] != kBot && inst.gamma(slots[m], slots[m + 1]) == 0.0) {
      slots[m] = kBot;
    }
  }
  Allocation pruned(std::move(slots));
  if (social_welfare(inst, pruned) != social_welfare(inst, theta)) {
    throw std::logic_error("prune_zero_pairs changed the social welfare");
  }
  return pruned;
}

}  // namespace fnex
