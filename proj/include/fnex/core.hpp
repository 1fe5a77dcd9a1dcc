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

#ifndef FNEX_CORE_HPP_
#define FNEX_CORE_HPP_

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fnex {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller handed in an instance or allocation outside an operation's domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Sentinel for the fictitious ad (an empty slot).
inline constexpr int kBot = -1;

enum class Externality { kSlotAd, kAdAd };

// Which externality family, how far back a user remembers, and whether an
// empty slot restores full attention.
struct ModelSpec {
  Externality kind = Externality::kAdAd;
  int window = 1;
  bool reset = false;

  bool operator==(const ModelSpec&) const = default;
};

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int r, int c) const { return data_[index(r, c)]; }
  double& operator()(int r, int c) { return data_[index(r, c)]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// A full auction: N ads, K slots, and the externality parameters.
//
// Ads and slots are 0-based in code; files and CLI output use 1-based ads.
// For kAdAd, `lambda` holds the K per-slot factors (lambda[0] == 1) and
// `gamma` is N x N with gamma(i, j) the effect of ad i on the ad right below
// it. For kSlotAd, `lambda` is empty and `gamma` is K x N with gamma(m, j) the
// effect of ad j displayed in slot m on the ads below it.
struct Instance {
  ModelSpec model;
  int n = 0;
  int k = 0;
  std::vector<double> quality;
  std::vector<double> value;
  std::vector<double> lambda;
  Matrix gamma;

  bool operator==(const Instance&) const = default;
};

// Cumulative prominences Lambda_m = prod_{l <= m} lambda_l. All ones for SA.
std::vector<double> prominences(const Instance& inst);

// Every invariant violation, in a stable order. Empty means well formed.
std::vector<std::string> validate_instance(const Instance& inst);

// Throws PreconditionError listing the violations, if any.
void require_valid(const Instance& inst);

// Copy of `inst` with ad `ad`'s valuation replaced.
Instance with_value(const Instance& inst, int ad, double value);

// Ordered assignment of ads to slots; each entry is an ad index or kBot.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<int> slots) : slots_(std::move(slots)) {}

  static Allocation empty(int k) { return Allocation(std::vector<int>(k, kBot)); }

  int size() const { return static_cast<int>(slots_.size()); }
  int operator[](int slot) const { return slots_[slot]; }
  std::span<const int> slots() const { return slots_; }

  // Slot holding `ad`, or -1 when the ad sits in the fictitious slot.
  int slot_of(int ad) const;
  int allocated_count() const;

  // Lexicographic over slots, with kBot before every real ad.
  auto operator<=>(const Allocation&) const = default;

  // "<a1, BOT, a3>" with 1-based ad indices.
  std::string to_string() const;

 private:
  std::vector<int> slots_;
};

// Throws PreconditionError unless `theta` has length K and lists each real ad
// at most once.
void require_valid(const Instance& inst, const Allocation& theta);

// gamma between two vertically adjacent entries of an AA allocation, with the
// fictitious-ad convention of the reset flag.
double adjacent_gamma(const Instance& inst, int upper, int lower);

// CTR of one ad under `theta`: q_i * Gamma_i(theta). Zero when unallocated.
double eval_ctr(const Instance& inst, const Allocation& theta, int ad);

// Sum over allocated ads of CTR_i * v_i.
double social_welfare(const Instance& inst, const Allocation& theta);

// Welfare of everybody except `ad`.
double welfare_of_others(const Instance& inst, const Allocation& theta, int ad);

// Replaces the upper ad of every zero-gamma adjacent pair with the fictitious
// ad. Defined on unit AA instances (q = v = lambda = 1) with window 1, binary
// gamma and reset; the welfare of the result is checked to be unchanged.
Allocation prune_zero_pairs(const Instance& inst, const Allocation& theta);

}  // namespace fnex

#endif  // FNEX_CORE_HPP_
