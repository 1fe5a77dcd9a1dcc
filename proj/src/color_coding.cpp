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

#include "fnex/color_coding.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <utility>

namespace fnex {
namespace {

struct Partial {
  std::vector<int> ads;
  unsigned mask = 0;
  long cap = 0;
  double sw = 0.0;
  double chain = 1.0;  // product of the gammas the last ad sees
  double rsw = 0.0;
  double rchain = 1.0;
};

struct DpConfig {
  bool rounded = false;
  int slots = 0;
  bool full_window = true;
  int window = 0;
  double tau = 1.0;
  long budget = 0;
  bool audit = false;
};

void require_nr_ad_ad(const Instance& inst, int slots_used) {
  require_valid(inst);
  if (inst.model.kind != Externality::kAdAd || inst.model.reset) {
    throw PreconditionError("color coding needs an ad-ad, no-reset instance");
  }
  if (slots_used < 0 || slots_used > inst.k) {
    throw PreconditionError("slots_used must lie in [0, K]");
  }
}

void require_coloring(const Instance& inst, const Coloring& coloring) {
  if (static_cast<int>(coloring.color.size()) != inst.n || coloring.num_colors < 1 ||
      coloring.num_colors > 30) {
    throw PreconditionError("coloring does not match the instance");
  }
  for (int c : coloring.color) {
    if (c < 0 || c >= coloring.num_colors) throw PreconditionError("color out of range");
  }
}

Allocation pad(const std::vector<int>& ads, int k) {
  std::vector<int> slots(k, kBot);
  std::copy(ads.begin(), ads.end(), slots.begin());
  return Allocation(std::move(slots));
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

class KeyPacker {
 public:
  KeyPacker(const Instance& inst, const Coloring& coloring, long budget, int tail_len) {
    const long double span = std::pow(static_cast<long double>(inst.n), tail_len) *
                             static_cast<long double>(budget + 1) *
                             std::ldexp(1.0L, coloring.num_colors);
    if (span > 9.0e18L) throw PreconditionError("color-coding state space too large");
    n_ = inst.n;
    colors_ = coloring.num_colors;
    caps_ = budget + 1;
  }

  // Key without the capacity component.
  std::uint64_t group(const Partial& p, int tail_len) const {
    std::uint64_t code = 0;
    const int len = static_cast<int>(p.ads.size());
    for (int i = std::max(0, len - tail_len); i < len; ++i) {
      code = code * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(p.ads[i]);
    }
    return (code << colors_) | p.mask;
  }

  std::uint64_t full(const Partial& p, int tail_len) const {
    return group(p, tail_len) * static_cast<std::uint64_t>(caps_) +
           static_cast<std::uint64_t>(p.cap);
  }

 private:
  int n_ = 0;
  int colors_ = 0;
  long caps_ = 1;
};

std::vector<Partial> pareto_prune(std::vector<Partial> entries) {
  std::sort(entries.begin(), entries.end(), [](const Partial& a, const Partial& b) {
    if (a.sw != b.sw) return a.sw > b.sw;
    if (a.chain != b.chain) return a.chain > b.chain;
    return lex_less(a.ads, b.ads);
  });
  std::vector<Partial> kept;
  double best_chain = -1.0;
  for (Partial& e : entries) {
    if (e.chain > best_chain) {
      best_chain = e.chain;
      kept.push_back(std::move(e));
    }
  }
  return kept;
}

std::size_t count_dominated(const std::vector<Partial>& entries) {
  std::size_t count = 0;
  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = 0; b < entries.size(); ++b) {
      if (a != b && entries[a].sw >= entries[b].sw && entries[a].chain >= entries[b].chain) {
        ++count;
      }
    }
  }
  return count;
}

ColorfulResult run_colorful(const Instance& inst, const Coloring& coloring,
                            const DpConfig& cfg) {
  const std::vector<double> lam = prominences(inst);
  // Full-window mode keys on the last ad only; the chain carries the rest.
  const int tail_len = cfg.full_window ? 1 : cfg.window + 1;
  const KeyPacker packer(inst, coloring, cfg.rounded ? cfg.budget : 0, tail_len);

  ColorfulResult result;
  result.allocation = Allocation::empty(inst.k);
  std::vector<int> best_ads;
  double best_score = 0.0;
  auto consider = [&](const Partial& p) {
    const double score = cfg.rounded ? p.rsw : p.sw;
    if (score > best_score || (score == best_score && lex_less(p.ads, best_ads))) {
      best_score = score;
      best_ads = p.ads;
      result.welfare = p.sw;
      result.rounded_welfare = p.rsw;
    }
  };

  std::vector<Partial> layer(1);
  for (int p = 0; p < cfg.slots && !layer.empty(); ++p) {
    std::unordered_map<std::uint64_t, std::vector<Partial>> buckets;
    for (const Partial& prev : layer) {
      for (int j = 0; j < inst.n; ++j) {
        const unsigned bit = 1u << coloring.color[j];
        if (prev.mask & bit) continue;
        Partial next;
        next.mask = prev.mask | bit;
        next.cap = prev.cap;
        if (p == 0) {
          next.chain = 1.0;
          next.rchain = 1.0;
        } else if (cfg.full_window) {
          const double g = inst.gamma(prev.ads.back(), j);
          next.chain = prev.chain * g;
          if (cfg.rounded) {
            const long rc = rounded_capacity(g, cfg.tau);
            if (rc == kInfiniteCapacity || prev.cap + rc > cfg.budget) continue;
            next.cap = prev.cap + rc;
            next.rchain = prev.rchain * std::exp2(-cfg.tau * static_cast<double>(rc + 1));
          }
        } else {
          next.chain = 1.0;
          next.rchain = 1.0;
          const int first = std::max(0, p - cfg.window);
          for (int l = first; l < p; ++l) {
            const int lower = l + 1 < p ? prev.ads[l + 1] : j;
            const double g = inst.gamma(prev.ads[l], lower);
            next.chain *= g;
            if (cfg.rounded) {
              const long rc = rounded_capacity(g, cfg.tau);
              if (rc == kInfiniteCapacity) {
                next.rchain = -1.0;
                break;
              }
              next.rchain *= std::exp2(-cfg.tau * static_cast<double>(rc + 1));
            }
          }
          if (cfg.rounded) {
            if (next.rchain < 0.0) continue;
            const long rc = rounded_capacity(inst.gamma(prev.ads.back(), j), cfg.tau);
            if (prev.cap + rc > cfg.budget) continue;
            next.cap = prev.cap + rc;
          }
        }
        const double qv = inst.quality[j] * inst.value[j];
        next.sw = prev.sw + lam[p] * qv * next.chain;
        next.rsw = prev.rsw + lam[p] * qv * next.rchain;
        next.ads = prev.ads;
        next.ads.push_back(j);

        const std::uint64_t key = (cfg.rounded || !cfg.full_window)
                                      ? packer.full(next, tail_len)
                                      : packer.group(next, tail_len);
        std::vector<Partial>& bucket = buckets[key];
        if (!cfg.rounded && cfg.full_window) {
          bucket.push_back(std::move(next));
          continue;
        }
        // Single survivor per bucket.
        if (bucket.empty()) {
          bucket.push_back(std::move(next));
        } else {
          const double a = cfg.rounded ? next.rsw : next.sw;
          const double b = cfg.rounded ? bucket[0].rsw : bucket[0].sw;
          if (a > b || (a == b && lex_less(next.ads, bucket[0].ads))) {
            bucket[0] = std::move(next);
          }
        }
      }
    }

    std::unordered_map<std::uint64_t, std::size_t> per_group;
    layer.clear();
    for (auto& [key, bucket] : buckets) {
      if (!cfg.rounded && cfg.full_window) {
        bucket = pareto_prune(std::move(bucket));
        if (cfg.audit) result.stats.dominated_pairs += count_dominated(bucket);
      }
      per_group[packer.group(bucket[0], tail_len)] += bucket.size();
      for (Partial& e : bucket) layer.push_back(std::move(e));
    }
    result.stats.keys += per_group.size();
    for (const auto& [group, size] : per_group) {
      result.stats.max_entries_per_key = std::max(result.stats.max_entries_per_key, size);
    }
    // Deterministic visiting order for the next layer.
    std::sort(layer.begin(), layer.end(),
              [](const Partial& a, const Partial& b) { return lex_less(a.ads, b.ads); });
    for (const Partial& e : layer) consider(e);
  }
  result.allocation = pad(best_ads, inst.k);
  return result;
}

DpConfig exact_config(const Instance& inst, int slots_used, bool audit) {
  DpConfig cfg;
  cfg.slots = slots_used;
  cfg.window = inst.model.window;
  cfg.full_window = inst.model.window >= slots_used - 1;
  cfg.audit = audit;
  return cfg;
}

// Better-of with the deterministic tie-break used across colorings.
bool improves(double score, const Allocation& alloc, double best, const Allocation& incumbent) {
  if (score != best) return score > best;
  return alloc < incumbent;
}

}  // namespace

Coloring random_coloring(int n, int num_colors, std::mt19937_64& rng) {
  if (num_colors < 1) throw PreconditionError("need at least one color");
  Coloring coloring;
  coloring.num_colors = num_colors;
  coloring.color.resize(n);
  for (int i = 0; i < n; ++i) {
    coloring.color[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(num_colors));
  }
  return coloring;
}

long rounded_capacity(double gamma, double tau) {
  if (!(tau > 0.0)) throw PreconditionError("tau must be positive");
  if (gamma < 0.0 || gamma > 1.0) throw PreconditionError("gamma must lie in [0, 1]");
  if (gamma == 0.0) return kInfiniteCapacity;
  const double x = std::log2(1.0 / gamma) / tau;
  return static_cast<long>(std::floor(x + 1e-9));
}

int reduced_slots(int n, int k) {
  int ceil_log = 0;
  while ((1L << ceil_log) < n) ++ceil_log;
  return std::max(1, std::min(ceil_log, k));
}

double rounding_tau(double epsilon, int slots) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  if (slots < 1) throw PreconditionError("slots must be positive");
  return std::log2(1.0 / (1.0 - epsilon)) / slots;
}

long capacity_budget(double delta, double tau) {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
  if (!(tau > 0.0)) throw PreconditionError("tau must be positive");
  return static_cast<long>(std::floor(std::log2(1.0 / delta) / tau + 1e-9));
}

long coloring_count(double reps, int colors) {
  if (!(reps >= 1.0)) throw PreconditionError("repetitions must be at least 1");
  return static_cast<long>(std::ceil(reps * std::exp(static_cast<double>(colors))));
}

ColorfulResult colorful_dp_exact(const Instance& inst, const Coloring& coloring, int slots_used,
                                 bool audit) {
  require_nr_ad_ad(inst, slots_used);
  require_coloring(inst, coloring);
  return run_colorful(inst, coloring, exact_config(inst, slots_used, audit));
}

ColorfulResult colorful_dp_rounded(const Instance& inst, const Coloring& coloring,
                                   int slots_used, double tau, long budget) {
  require_nr_ad_ad(inst, slots_used);
  require_coloring(inst, coloring);
  DpConfig cfg = exact_config(inst, slots_used, false);
  cfg.rounded = true;
  cfg.tau = tau;
  cfg.budget = budget;
  return run_colorful(inst, coloring, cfg);
}

Allocation cc_exact(const Instance& inst, std::uint64_t seed, double reps) {
  require_nr_ad_ad(inst, inst.k);
  const long runs = coloring_count(reps, inst.k);
  std::mt19937_64 rng(seed);
  Allocation best = Allocation::empty(inst.k);
  double best_sw = 0.0;
  for (long r = 0; r < runs; ++r) {
    const Coloring coloring = random_coloring(inst.n, inst.k, rng);
    const ColorfulResult res = run_colorful(inst, coloring, exact_config(inst, inst.k, false));
    if (improves(res.welfare, res.allocation, best_sw, best)) {
      best_sw = res.welfare;
      best = res.allocation;
    }
  }
  return best;
}

CcReport cc_approx_report(const Instance& inst, const ApproxParams& params) {
  CcReport report;
  report.slots_used = params.slots.value_or(reduced_slots(inst.n, inst.k));
  require_nr_ad_ad(inst, report.slots_used);
  report.allocation = Allocation::empty(inst.k);
  if (report.slots_used == 0) return report;
  report.tau = rounding_tau(params.epsilon, report.slots_used);
  report.budget = capacity_budget(params.delta, report.tau);
  report.colorings = coloring_count(params.reps, report.slots_used);

  DpConfig cfg = exact_config(inst, report.slots_used, false);
  cfg.rounded = true;
  cfg.tau = report.tau;
  cfg.budget = report.budget;

  std::mt19937_64 rng(params.seed);
  for (long r = 0; r < report.colorings; ++r) {
    const Coloring coloring = random_coloring(inst.n, report.slots_used, rng);
    const ColorfulResult res = run_colorful(inst, coloring, cfg);
    report.stats.keys = std::max(report.stats.keys, res.stats.keys);
    report.stats.max_entries_per_key =
        std::max(report.stats.max_entries_per_key, res.stats.max_entries_per_key);
    if (improves(res.rounded_welfare, res.allocation, report.rounded_welfare,
                 report.allocation)) {
      report.rounded_welfare = res.rounded_welfare;
      report.welfare = res.welfare;
      report.allocation = res.allocation;
    }
  }
  return report;
}

Allocation cc_approx(const Instance& inst, const ApproxParams& params) {
  return cc_approx_report(inst, params).allocation;
}

Allocation cc_mir(const Instance& inst, std::uint64_t seed, double reps) {
  const int slots = reduced_slots(inst.n, inst.k);
  require_nr_ad_ad(inst, slots);
  const long runs = coloring_count(reps, slots);
  std::mt19937_64 rng(seed);
  Allocation best = Allocation::empty(inst.k);
  double best_sw = 0.0;
  for (long r = 0; r < runs; ++r) {
    const Coloring coloring = random_coloring(inst.n, slots, rng);
    const ColorfulResult res = run_colorful(inst, coloring, exact_config(inst, slots, false));
    if (improves(res.welfare, res.allocation, best_sw, best)) {
      best_sw = res.welfare;
      best = res.allocation;
    }
  }
  return best;
}

double cc_approx_bound(const Instance& inst, double delta, double epsilon) {
  if (inst.n <= 1 || inst.k == 0) return 0.0;
  // With K <= log2 N nothing is truncated and the factor is 1.
  const double truncation =
      std::log2(static_cast<double>(inst.n)) / (2.0 * std::min(inst.n, inst.k));
  return (1.0 - delta) * (1.0 - epsilon) * std::min(1.0, truncation);
}

}  // namespace fnex
