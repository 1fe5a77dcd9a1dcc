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

#include "fnex/simplex.hpp"

#include <stdexcept>

namespace fnex::lp {
namespace {

// Dense tableau; the last column of each row is the right-hand side. The
// reduced-cost row keeps r_j = c_j - c_B . B^-1 A_j and -objective at the end.
class Tableau {
 public:
  Tableau(const Problem& problem) : num_original_(problem.num_vars) {
    const int m = static_cast<int>(problem.rows.size());
    int extra = 0;
    int artificial = 0;
    for (const auto& row : problem.rows) {
      const Sense s = normalized_sense(row);
      if (s != Sense::kEqual) ++extra;
      if (s != Sense::kLessEqual) ++artificial;
    }
    first_artificial_ = num_original_ + extra;
    width_ = first_artificial_ + artificial;
    rows_.assign(m, std::vector<Rational>(width_ + 1));
    basis_.assign(m, -1);

    int next_extra = num_original_;
    int next_artificial = first_artificial_;
    for (int i = 0; i < m; ++i) {
      const Row& row = problem.rows[i];
      const bool flip = sgn(row.rhs) < 0;
      auto& t = rows_[i];
      for (const auto& [var, coef] : row.terms) {
        if (var < 0 || var >= num_original_) throw std::out_of_range("row references unknown variable");
        t[var] += flip ? Rational(-coef) : coef;
      }
      t[width_] = flip ? Rational(-row.rhs) : row.rhs;
      switch (normalized_sense(row)) {
        case Sense::kLessEqual:
          t[next_extra] = 1;
          basis_[i] = next_extra++;
          break;
        case Sense::kGreaterEqual:
          t[next_extra++] = -1;
          t[next_artificial] = 1;
          basis_[i] = next_artificial++;
          break;
        case Sense::kEqual:
          t[next_artificial] = 1;
          basis_[i] = next_artificial++;
          break;
      }
    }
  }

  Solution solve(const std::vector<Rational>& objective) {
    Solution out;
    // Phase I: maximize -(sum of artificials).
    std::vector<Rational> phase_one(width_);
    for (int j = first_artificial_; j < width_; ++j) phase_one[j] = -1;
    set_costs(phase_one);
    if (iterate(width_, out.pivots) != Status::kOptimal) {
      throw std::logic_error("phase one cannot be unbounded");
    }
    if (sgn(costs_[width_]) != 0) {
      out.status = Status::kInfeasible;
      return out;
    }
    evict_artificials(out.pivots);

    std::vector<Rational> phase_two(width_);
    for (int j = 0; j < num_original_; ++j) phase_two[j] = objective[j];
    set_costs(phase_two);
    out.status = iterate(first_artificial_, out.pivots);
    if (out.status != Status::kOptimal) return out;

    out.x.assign(num_original_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < num_original_) out.x[basis_[i]] = rows_[i][width_];
    }
    out.objective = -costs_[width_];
    out.reduced_costs.assign(costs_.begin(), costs_.begin() + num_original_);
    return out;
  }

 private:
  static Sense normalized_sense(const Row& row) {
    if (sgn(row.rhs) >= 0 || row.sense == Sense::kEqual) return row.sense;
    return row.sense == Sense::kLessEqual ? Sense::kGreaterEqual : Sense::kLessEqual;
  }

  void set_costs(const std::vector<Rational>& c) {
    costs_.assign(width_ + 1, Rational(0));
    for (int j = 0; j < width_; ++j) costs_[j] = c[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      const auto& t = rows_[i];
      for (int j = 0; j <= width_; ++j) {
        if (sgn(t[j]) != 0) costs_[j] -= cb * t[j];
      }
    }
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving basic
  // variable among ratio ties. Columns at or beyond `limit` never enter.
  Status iterate(int limit, long& pivots) {
    for (;;) {
      int entering = -1;
      for (int j = 0; j < limit; ++j) {
        if (sgn(costs_[j]) > 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return Status::kOptimal;

      int leaving = -1;
      Rational best_ratio;
      Rational ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][entering];
        if (sgn(a) <= 0) continue;
        ratio = rows_[i][width_] / a;
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return Status::kUnbounded;
      pivot(leaving, entering);
      ++pivots;
    }
  }

  void evict_artificials(long& pivots) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (int j = 0; j < first_artificial_; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          pivot(static_cast<int>(i), j);
          ++pivots;
          break;
        }
      }
      // A row with no structural entry left is redundant; its artificial
      // stays basic at zero and can never move again.
    }
  }

  void pivot(int p, int e) {
    auto& prow = rows_[p];
    const Rational inv = 1 / prow[e];
    nonzero_.clear();
    for (int j = 0; j <= width_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nonzero_.push_back(j);
      }
    }
    Rational factor;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == p) continue;
      auto& t = rows_[i];
      if (sgn(t[e]) == 0) continue;
      factor = t[e];
      for (int j : nonzero_) t[j] -= factor * prow[j];
    }
    if (sgn(costs_[e]) != 0) {
      factor = costs_[e];
      for (int j : nonzero_) costs_[j] -= factor * prow[j];
    }
    basis_[p] = e;
  }

  int num_original_;
  int first_artificial_ = 0;
  int width_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
  std::vector<Rational> costs_;
  std::vector<int> nonzero_;
};

}  // namespace

Solution maximize(const Problem& problem) {
  if (static_cast<int>(problem.objective.size()) != problem.num_vars) {
    throw std::invalid_argument("objective length must equal the variable count");
  }
  return Tableau(problem).solve(problem.objective);
}

bool is_feasible(const Problem& problem, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != problem.num_vars) return false;
  for (const auto& xi : x) {
    if (sgn(xi) < 0) return false;
  }
  for (const auto& row : problem.rows) {
    Rational lhs = 0;
    for (const auto& [var, coef] : row.terms) lhs += coef * x[var];
    switch (row.sense) {
      case Sense::kLessEqual:
        if (lhs > row.rhs) return false;
        break;
      case Sense::kEqual:
        if (lhs != row.rhs) return false;
        break;
      case Sense::kGreaterEqual:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace fnex::lp
