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

// Instance generators, hardness reductions and the benchmark runner.

#ifndef FNEX_HARNESS_HPP_
#define FNEX_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fnex/core.hpp"

namespace fnex {

enum class GraphClass { kRandomDensity, kDag, kCompleteGammaMin, kBinary };

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

struct GenParams {
  int n = 4;
  int k = 3;
  Externality kind = Externality::kAdAd;
  int window = 1;
  bool reset = false;
  GraphClass graph = GraphClass::kRandomDensity;
  double density = 0.5;    // edge probability for random, dag and binary
  double gamma_min = 0.5;  // floor for complete graphs
  Range quality{0.1, 1.0};
  Range value{0.0, 10.0};
  Range lambda{0.5, 1.0};
  Range gamma{0.1, 1.0};
  // Positive: round every drawn number to a multiple of it.
  double quantum = 0.0;
  std::uint64_t seed = 0;
};

// Uniform double in [0, 1) from 53 random bits.
double unit_draw(std::mt19937_64& rng);

Instance gen_random(const GenParams& params);

GenParams gen_params_from_json(const nlohmann::json& doc);
nlohmann::json gen_params_to_json(const GenParams& params);

struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  bool has_edge(int from, int to) const;
};

Digraph random_digraph(int n, double density, std::uint64_t seed);
// Digraph number `code` on n vertices: bit t marks the t-th ordered pair.
Digraph digraph_from_code(int n, std::uint64_t code);

// Ads are vertices, gamma is the adjacency matrix, everything else is 1.
Instance reduce_longest_path(const Digraph& graph);

// Edge count of a longest simple path, by exhaustive search.
int longest_simple_path(const Digraph& graph);

// Complete digraph with weights in {1, 2} (diagonal ignored).
struct WeightedDigraph {
  int n = 0;
  Matrix weight;
};

WeightedDigraph random_weighted_digraph(int n, double p_one, std::uint64_t seed);

// Reset instance with k slots; gamma(i, j) = 1 exactly when w(i, j) = 1.
Instance reduce_atsp12(const WeightedDigraph& graph, int k);

struct Tour {
  std::vector<int> order;
  int cost = 0;
};

// Reads the allocated ads top-down as a tour; needs every vertex allocated.
Tour tour_from_allocation(const WeightedDigraph& graph, const Allocation& theta);

// Appends K zero-value ads linked both ways to everything, turning empty
// slots of the reset model into ads of the no-reset model.
Instance reduce_r_to_nr(const Instance& inst);

struct ReportRow {
  std::string instance;
  std::string algo;
  std::optional<double> sw;
  std::optional<double> oracle_sw;
  std::optional<double> ratio;
  std::optional<double> bound;
  std::optional<double> ms;
};

inline constexpr const char* kCsvHeader = "instance,algo,sw,oracle_sw,ratio,bound,ms";

struct BenchReport {
  std::vector<ReportRow> rows;
  // No oracle-checked row fell below its bound.
  bool ok = true;
};

BenchReport run_bench(const nlohmann::json& config,
                      const std::filesystem::path& base_dir = std::filesystem::path("."));
BenchReport run_bench_file(const std::filesystem::path& config_path);

void write_csv(const BenchReport& report, std::ostream& out);

}  // namespace fnex

#endif  // FNEX_HARNESS_HPP_
