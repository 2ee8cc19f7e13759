#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "socfp/types.hpp"

namespace socfp {

// Deterministic RNG with hand-derived bounded/unit draws so sequences are
// identical across standard libraries for a given seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // uniform in [0, n), rejection sampled
  int below(int n) {
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return static_cast<int>(v % span);
  }

  // uniform in [0, 1), 53-bit resolution
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 gen_;
};

struct SAParams {
  double initial_temperature = 30.0;
  double cooling_factor = 0.98;  // applied every cooling_period iterations
  int iterations = 15000;
  int cooling_period = 100;
  int reruns = 20;
  double w_area = 0.5;
  double w_comm = 0.5;
  std::uint64_t seed = 1;
  ModelKind area_model = ModelKind::SDP;
  double eta = 0.1;
  double solver_tol = 1e-7;
  int workers = 0;  // 0: take SOCFP_WORKERS from the environment, else 1
};

struct Normalizers {
  double area0 = 1.0;
  double comm0 = 1.0;
};

// Layer content matrix -> bounding area of the configured solver's floorplan.
using LayerAreaFn = std::function<double(const AreaMatrix&)>;

LayerAreaFn make_area_evaluator(ModelKind kind, double eta, double tol);

// Content-addressed memoization of a layer evaluator; semantics unchanged.
LayerAreaFn area_cache(LayerAreaFn inner);
LayerAreaFn area_cache(LayerAreaFn inner, std::shared_ptr<std::size_t> misses);

// Sum of per-layer bounding areas for the mapping; all-zero layers count 0.
// Solver failures are rethrown with the offending layer named.
double mapping_area(const CoreGraph& graph, const TileGrid& grid, const Mapping& m,
                    const LayerAreaFn& area_eval);

double sa_cost(const Mapping& m, const CoreGraph& graph, const TileGrid& grid,
               const SAParams& params, const Normalizers& norm, const LayerAreaFn& area_eval);
double sa_cost(const Mapping& m, const CoreGraph& graph, const TileGrid& grid,
               const SAParams& params, const Normalizers& norm);

// Cores ordered by area descending (ties by id ascending) onto tiles in
// layer-major, row-major, column order.
Mapping initial_solution(const CoreGraph& graph, const TileGrid& grid);

// Uniform random core to a uniform random other tile; occupied targets swap.
Mapping neighbor(const Mapping& m, const TileGrid& grid, Rng& rng);

struct RerunOutcome {
  bool ok = false;
  std::string error;
  double cost = 0.0;
  double area = 0.0;
  double comm = 0.0;
  double max_link_load = 0.0;
  Mapping best;
};

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct TraceRow {
  int iteration = 0;
  double temperature = 0.0;
  double cost = 0.0;
  bool accepted = false;
  double area = 0.0;
  double comm = 0.0;
};

struct SAResult {
  Mapping best_mapping;
  double best_cost = 0.0;
  double best_area = 0.0;
  double best_comm = 0.0;
  double best_max_link_load = 0.0;
  Normalizers normalizers;
  std::vector<RerunOutcome> reruns;
  MetricStats cost_stats;
  MetricStats area_stats;
  MetricStats comm_stats;
  MetricStats link_stats;
  std::vector<TraceRow> trace;  // rerun 0 only, when requested
};

MetricStats aggregate(const std::vector<double>& values);

// Metropolis annealing, rerun i seeded with params.seed xor i; reruns run
// independently (optionally in parallel) and reduce in index order, so the
// result is identical at any worker count. A rerun hitting a solver error is
// reported and skipped; at least one rerun must succeed.
SAResult simulated_annealing(const CoreGraph& graph, const TileGrid& grid,
                             const SAParams& params, bool record_trace = false);

}  // namespace socfp
