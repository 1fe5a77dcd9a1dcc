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

#include "fnex/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <tuple>

#include "fnex/json_io.hpp"
#include "fnex/oracle.hpp"
#include "fnex/solvers.hpp"

namespace fnex {
namespace {

using nlohmann::json;

double draw(std::mt19937_64& rng, const Range& r, double quantum) {
  double x = r.lo + (r.hi - r.lo) * unit_draw(rng);
  if (quantum > 0.0) x = std::clamp(std::round(x / quantum) * quantum, r.lo, r.hi);
  return x;
}

void check_range(const Range& r, double lo, double hi, const char* name) {
  if (!(r.lo <= r.hi) || r.lo < lo || r.hi > hi) {
    throw PreconditionError(std::string("bad ") + name + " range");
  }
}

const char* graph_name(GraphClass g) {
  switch (g) {
    case GraphClass::kRandomDensity: return "random";
    case GraphClass::kDag: return "dag";
    case GraphClass::kCompleteGammaMin: return "complete";
    case GraphClass::kBinary: return "binary";
  }
  return "random";
}

GraphClass parse_graph(const std::string& s) {
  if (s == "random" || s == "random_density") return GraphClass::kRandomDensity;
  if (s == "dag") return GraphClass::kDag;
  if (s == "complete" || s == "complete_gamma_min") return GraphClass::kCompleteGammaMin;
  if (s == "binary") return GraphClass::kBinary;
  throw PreconditionError("unknown graph class '" + s + "'");
}

Range range_from_json(const json& doc) {
  if (!doc.is_array() || doc.size() != 2) throw PreconditionError("ranges are [lo, hi] pairs");
  return Range{doc[0].get<double>(), doc[1].get<double>()};
}

Instance unit_instance(Externality kind, int n, int k, int window, bool reset) {
  Instance inst;
  inst.model = ModelSpec{kind, window, reset};
  inst.n = n;
  inst.k = k;
  inst.quality.assign(n, 1.0);
  inst.value.assign(n, 1.0);
  inst.lambda.assign(k, 1.0);
  inst.gamma = Matrix(n, n, 0.0);
  return inst;
}

std::string format_number(const std::optional<double>& x) {
  if (!x) return "NA";
  std::ostringstream out;
  out << std::setprecision(12) << *x;
  return out.str();
}

}  // namespace

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

Instance gen_random(const GenParams& params) {
  if (params.n < 0 || params.k < 0) throw PreconditionError("N and K must be nonnegative");
  if (params.kind == Externality::kSlotAd &&
      (params.graph == GraphClass::kDag || params.graph == GraphClass::kCompleteGammaMin)) {
    throw PreconditionError("dag and complete graph classes apply to ad-ad instances only");
  }
  if (!(params.density >= 0.0 && params.density <= 1.0)) {
    throw PreconditionError("density must lie in [0, 1]");
  }
  if (!(params.gamma_min > 0.0 && params.gamma_min <= 1.0)) {
    throw PreconditionError("gamma_min must lie in (0, 1]");
  }
  check_range(params.quality, 0.0, 1.0, "quality");
  check_range(params.value, 0.0, 1e300, "value");
  check_range(params.lambda, 0.0, 1.0, "lambda");
  if (!(params.lambda.lo > 0.0)) throw PreconditionError("lambda range must stay positive");
  check_range(params.gamma, 0.0, 1.0, "gamma");

  std::mt19937_64 rng(params.seed);
  const double quantum = params.quantum;
  Instance inst;
  inst.model = ModelSpec{params.kind, params.window, params.reset};
  inst.n = params.n;
  inst.k = params.k;
  for (int i = 0; i < params.n; ++i) inst.quality.push_back(draw(rng, params.quality, quantum));
  for (int i = 0; i < params.n; ++i) inst.value.push_back(draw(rng, params.value, quantum));

  auto edge_weight = [&]() {
    switch (params.graph) {
      case GraphClass::kBinary:
        return unit_draw(rng) < params.density ? 1.0 : 0.0;
      case GraphClass::kCompleteGammaMin:
        return draw(rng, Range{params.gamma_min, 1.0}, quantum);
      default: {
        const bool present = unit_draw(rng) < params.density;
        const double w = draw(rng, params.gamma, quantum);
        return present ? w : 0.0;
      }
    }
  };

  if (params.kind == Externality::kAdAd) {
    inst.lambda.assign(params.k, 1.0);
    for (int m = 1; m < params.k; ++m) {
      inst.lambda[m] = std::max(draw(rng, params.lambda, quantum), params.lambda.lo);
    }
    inst.gamma = Matrix(params.n, params.n, 0.0);
    std::vector<int> rank(params.n);
    std::iota(rank.begin(), rank.end(), 0);
    if (params.graph == GraphClass::kDag) std::shuffle(rank.begin(), rank.end(), rng);
    for (int i = 0; i < params.n; ++i) {
      for (int j = 0; j < params.n; ++j) {
        if (i == j) continue;
        const double w = edge_weight();
        if (params.graph == GraphClass::kDag && rank[i] >= rank[j]) continue;
        inst.gamma(i, j) = w;
      }
    }
  } else {
    inst.gamma = Matrix(params.k, params.n, 0.0);
    for (int m = 0; m < params.k; ++m) {
      for (int i = 0; i < params.n; ++i) inst.gamma(m, i) = edge_weight();
    }
  }
  const std::vector<std::string> problems = validate_instance(inst);
  if (!problems.empty()) throw PreconditionError("generated instance invalid: " + problems[0]);
  return inst;
}

GenParams gen_params_from_json(const json& doc) {
  if (!doc.is_object()) throw PreconditionError("generator parameters must be an object");
  GenParams p;
  p.n = doc.value("n", p.n);
  p.k = doc.value("k", p.k);
  const std::string model = doc.value("model", std::string("aa"));
  if (model == "aa") {
    p.kind = Externality::kAdAd;
  } else if (model == "sa") {
    p.kind = Externality::kSlotAd;
  } else {
    throw PreconditionError("model must be \"sa\" or \"aa\"");
  }
  p.window = doc.value("window", p.window);
  p.reset = doc.value("reset", p.reset);
  p.graph = parse_graph(doc.value("graph", std::string("random")));
  p.density = doc.value("density", p.density);
  p.gamma_min = doc.value("gamma_min", p.gamma_min);
  if (doc.contains("q")) p.quality = range_from_json(doc["q"]);
  if (doc.contains("v")) p.value = range_from_json(doc["v"]);
  if (doc.contains("lambda")) p.lambda = range_from_json(doc["lambda"]);
  if (doc.contains("gamma")) p.gamma = range_from_json(doc["gamma"]);
  p.quantum = doc.value("quantum", p.quantum);
  p.seed = doc.value("seed", p.seed);
  return p;
}

json gen_params_to_json(const GenParams& p) {
  json doc;
  doc["n"] = p.n;
  doc["k"] = p.k;
  doc["model"] = p.kind == Externality::kAdAd ? "aa" : "sa";
  doc["window"] = p.window;
  doc["reset"] = p.reset;
  doc["graph"] = graph_name(p.graph);
  doc["density"] = p.density;
  doc["gamma_min"] = p.gamma_min;
  doc["q"] = {p.quality.lo, p.quality.hi};
  doc["v"] = {p.value.lo, p.value.hi};
  doc["lambda"] = {p.lambda.lo, p.lambda.hi};
  doc["gamma"] = {p.gamma.lo, p.gamma.hi};
  doc["quantum"] = p.quantum;
  doc["seed"] = p.seed;
  return doc;
}

bool Digraph::has_edge(int from, int to) const {
  return std::find(edges.begin(), edges.end(), std::make_pair(from, to)) != edges.end();
}

Digraph random_digraph(int n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Digraph g;
  g.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && unit_draw(rng) < density) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

Digraph digraph_from_code(int n, std::uint64_t code) {
  Digraph g;
  g.n = n;
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if ((code >> bit) & 1u) g.edges.emplace_back(i, j);
      ++bit;
    }
  }
  return g;
}

Instance reduce_longest_path(const Digraph& graph) {
  if (graph.n < 1 || graph.edges.empty()) {
    throw PreconditionError("the longest-path reduction needs at least one edge");
  }
  Instance inst = unit_instance(Externality::kAdAd, graph.n, graph.n, graph.n, false);
  for (const auto& [from, to] : graph.edges) {
    if (from < 0 || to < 0 || from >= graph.n || to >= graph.n || from == to) {
      throw PreconditionError("edge endpoints out of range");
    }
    inst.gamma(from, to) = 1.0;
  }
  return inst;
}

int longest_simple_path(const Digraph& graph) {
  std::vector<std::vector<int>> out(graph.n);
  for (const auto& [from, to] : graph.edges) out[from].push_back(to);
  std::vector<char> on_path(graph.n, 0);
  int best = 0;
  std::function<void(int, int)> walk = [&](int v, int length) {
    best = std::max(best, length);
    on_path[v] = 1;
    for (int w : out[v]) {
      if (!on_path[w]) walk(w, length + 1);
    }
    on_path[v] = 0;
  };
  for (int v = 0; v < graph.n; ++v) walk(v, 0);
  return best;
}

WeightedDigraph random_weighted_digraph(int n, double p_one, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  WeightedDigraph g;
  g.n = n;
  g.weight = Matrix(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) g.weight(i, j) = unit_draw(rng) < p_one ? 1.0 : 2.0;
    }
  }
  return g;
}

Instance reduce_atsp12(const WeightedDigraph& graph, int k) {
  if (graph.n < 1) throw PreconditionError("graph must have a vertex");
  if (k < graph.n || k > 2 * graph.n) throw PreconditionError("k must lie in [N, 2N]");
  Instance inst = unit_instance(Externality::kAdAd, graph.n, k, k, true);
  for (int i = 0; i < graph.n; ++i) {
    for (int j = 0; j < graph.n; ++j) {
      if (i == j) continue;
      const double w = graph.weight(i, j);
      if (w != 1.0 && w != 2.0) throw PreconditionError("weights must be 1 or 2");
      inst.gamma(i, j) = w == 1.0 ? 1.0 : 0.0;
    }
  }
  return inst;
}

Tour tour_from_allocation(const WeightedDigraph& graph, const Allocation& theta) {
  Tour tour;
  for (int ad : theta.slots()) {
    if (ad != kBot) tour.order.push_back(ad);
  }
  std::vector<int> sorted = tour.order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> all(graph.n);
  std::iota(all.begin(), all.end(), 0);
  if (sorted != all) throw PreconditionError("the allocation must hold every vertex once");
  for (int t = 0; t < graph.n; ++t) {
    tour.cost += static_cast<int>(graph.weight(tour.order[t], tour.order[(t + 1) % graph.n]));
  }
  return tour;
}

Instance reduce_r_to_nr(const Instance& inst) {
  require_valid(inst);
  if (inst.model.kind != Externality::kAdAd || inst.model.window != 1 || !inst.model.reset) {
    throw PreconditionError("r-to-nr needs an ad-ad instance with window 1 and reset");
  }
  const int n = inst.n + inst.k;
  Instance out = inst;
  out.model.reset = false;
  out.n = n;
  out.quality.resize(n, 1.0);
  out.value.resize(n, 0.0);
  out.gamma = Matrix(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      out.gamma(i, j) = (i < inst.n && j < inst.n) ? inst.gamma(i, j) : 1.0;
    }
  }
  return out;
}

BenchReport run_bench(const json& config, const std::filesystem::path& base_dir) {
  if (!config.is_object()) throw PreconditionError("bench config must be a JSON object");
  const json sources = config.value("instances", json::array());
  const json algorithms = config.value("algorithms", json::array());
  std::vector<std::uint64_t> seeds = config.value("seeds", std::vector<std::uint64_t>{});
  if (seeds.empty()) seeds.push_back(0);

  SolverOptions base;
  if (config.contains("params")) {
    const json& p = config["params"];
    base.delta = p.value("delta", base.delta);
    base.epsilon = p.value("epsilon", base.epsilon);
    base.reps = p.value("reps", base.reps);
    base.exact = p.value("exact", base.exact);
    if (p.contains("packing")) base.packing = parse_packing(p["packing"].get<std::string>());
  }
  std::vector<std::string> algos;
  for (const json& a : algorithms) {
    const std::string name = a.get<std::string>();
    const auto& known = solver_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw UnknownSolverError("unknown algorithm '" + name + "'");
    }
    algos.push_back(name);
  }

  struct Job {
    std::string id;
    Instance inst;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    const json& src = sources[s];
    if (src.is_string()) {
      std::filesystem::path path = src.get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      jobs.push_back({path.stem().string(), load_instance(path), seeds.front()});
    } else if (src.is_object() && src.contains("gen")) {
      for (std::uint64_t seed : seeds) {
        GenParams params = gen_params_from_json(src["gen"]);
        params.seed = seed;
        jobs.push_back({"gen" + std::to_string(s) + "-s" + std::to_string(seed),
                        gen_random(params), seed});
      }
    } else {
      throw PreconditionError("instances entries are paths or {\"gen\": {...}} objects");
    }
  }

  BenchReport report;
  for (const Job& job : jobs) {
    std::optional<double> oracle_sw;
    if (oracle_fits(job.inst)) oracle_sw = brute_force_optimum(job.inst).value;
    for (const std::string& algo : algos) {
      ReportRow row;
      row.instance = job.id;
      row.algo = algo;
      row.oracle_sw = oracle_sw;
      if (solver_applicable(algo, job.inst)) {
        SolverOptions opts = base;
        opts.seed = job.seed;
        const auto start = std::chrono::steady_clock::now();
        const Allocation theta = run_solver(algo, job.inst, opts);
        const auto stop = std::chrono::steady_clock::now();
        row.ms = std::chrono::duration<double, std::milli>(stop - start).count();
        row.sw = social_welfare(job.inst, theta);
        row.bound = ratio_bound(algo, job.inst, opts);
        if (oracle_sw) {
          row.ratio = *oracle_sw > 0.0 ? *row.sw / *oracle_sw : 1.0;
          if (*row.ratio < *row.bound - 1e-9) report.ok = false;
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     return std::tie(a.instance, a.algo) < std::tie(b.instance, b.algo);
                   });
  return report;
}

BenchReport run_bench_file(const std::filesystem::path& config_path) {
  return run_bench(read_json_file(config_path), config_path.parent_path());
}

void write_csv(const BenchReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ReportRow& row : report.rows) {
    out << row.instance << ',' << row.algo << ',' << format_number(row.sw) << ','
        << format_number(row.oracle_sw) << ',' << format_number(row.ratio) << ','
        << format_number(row.bound) << ',' << format_number(row.ms) << '\n';
  }
}

}  // namespace fnex
