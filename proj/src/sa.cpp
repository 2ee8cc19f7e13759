#include "socfp/sa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <thread>
#include <unordered_map>

#include "socfp/lp.hpp"
#include "socfp/metrics.hpp"
#include "socfp/milp.hpp"
#include "socfp/sdp.hpp"

namespace socfp {

LayerAreaFn make_area_evaluator(ModelKind kind, double eta, double tol) {
  return [kind, eta, tol](const AreaMatrix& areas) -> double {
    FloorplanProblem p{areas, eta};
    FloorplanSolution sol;
    switch (kind) {
      case ModelKind::LP: sol = solve_lp(build_lp(p), tol); break;
      case ModelKind::MILP: sol = solve_milp(build_lp_multispline(p, 4), tol); break;
      case ModelKind::SDP: sol = solve_sdp(build_sdp(p), tol); break;
    }
    if (!sol.stats.complete) throw SolverError("area solver did not converge");
    double sr = 0.0, sc = 0.0;
    for (double v : sol.row_heights) sr += v;
    for (double v : sol.col_widths) sc += v;
    return sr * sc;
  };
}

namespace {

std::string cache_key(const AreaMatrix& m) {
  std::string key;
  key.resize(2 * sizeof(int) + m.data().size() * sizeof(double));
  int dims[2] = {m.rows(), m.cols()};
  std::memcpy(key.data(), dims, sizeof dims);
  std::memcpy(key.data() + sizeof dims, m.data().data(), m.data().size() * sizeof(double));
  return key;
}

}  // namespace

LayerAreaFn area_cache(LayerAreaFn inner, std::shared_ptr<std::size_t> misses) {
  auto memo = std::make_shared<std::unordered_map<std::string, double>>();
  return [inner = std::move(inner), memo, misses](const AreaMatrix& m) {
    std::string key = cache_key(m);
    auto it = memo->find(key);
    if (it != memo->end()) return it->second;
    double v = inner(m);
    memo->emplace(std::move(key), v);
    if (misses) ++*misses;
    return v;
  };
}

LayerAreaFn area_cache(LayerAreaFn inner) { return area_cache(std::move(inner), nullptr); }

double mapping_area(const CoreGraph& graph, const TileGrid& grid, const Mapping& m,
                    const LayerAreaFn& area_eval) {
  double total = 0.0;
  for (int z = 0; z < grid.layers(); ++z) {
    AreaMatrix f = area_matrix_from_mapping(graph, grid, m, z);
    if (f.all_zero()) continue;
    try {
      total += area_eval(f);
    } catch (const SolverError& e) {
      throw SolverError("layer " + std::to_string(z) + ": " + e.what());
    }
  }
  return total;
}

double sa_cost(const Mapping& m, const CoreGraph& graph, const TileGrid& grid,
               const SAParams& params, const Normalizers& norm, const LayerAreaFn& area_eval) {
  if (norm.area0 <= 0.0 || norm.comm0 <= 0.0) throw SchemaError("normalizers must be positive");
  double area = mapping_area(graph, grid, m, area_eval);
  double comm = comm_cost(graph, m);
  return params.w_area * (area / norm.area0) + params.w_comm * (comm / norm.comm0);
}

double sa_cost(const Mapping& m, const CoreGraph& graph, const TileGrid& grid,
               const SAParams& params, const Normalizers& norm) {
  return sa_cost(m, graph, grid, params, norm,
                 make_area_evaluator(params.area_model, params.eta, params.solver_tol));
}

Mapping initial_solution(const CoreGraph& graph, const TileGrid& grid) {
  graph.validate();
  grid.validate();
  std::vector<TileCoord> tiles = grid.tiles();
  if (graph.size() > static_cast<int>(tiles.size()))
    throw SchemaError("more cores than tiles");
  std::vector<Core> order = graph.cores();
  std::sort(order.begin(), order.end(), [](const Core& a, const Core& b) {
    if (a.area != b.area) return a.area > b.area;
    return a.id < b.id;
  });
  Mapping m;
  for (size_t i = 0; i < order.size(); ++i) m.assign(order[i].id, tiles[i]);
  return m;
}

Mapping neighbor(const Mapping& m, const TileGrid& grid, Rng& rng) {
  const auto& entries = m.entries();
  if (entries.empty() || grid.tile_count() <= 1) return m;  // nowhere to move
  int pick = rng.below(static_cast<int>(entries.size()));
  auto it = entries.begin();
  std::advance(it, pick);
  const std::string& core = it->first;
  TileCoord from = it->second;

  std::vector<TileCoord> tiles = grid.tiles();
  int cur = 0;
  while (tiles[cur] != from) ++cur;
  int dest = rng.below(static_cast<int>(tiles.size()) - 1);
  if (dest >= cur) ++dest;
  TileCoord to = tiles[dest];

  Mapping out = m;
  for (const auto& [other, t] : entries) {
    if (t == to) {
      out.assign(other, from);  // swap with the occupant
      break;
    }
  }
  out.assign(core, to);
  return out;
}

MetricStats aggregate(const std::vector<double>& values) {
  MetricStats s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

namespace {

struct CostParts {
  double cost = 0.0;
  double area = 0.0;
  double comm = 0.0;
};

CostParts eval_cost(const Mapping& m, const CoreGraph& graph, const TileGrid& grid,
                    const SAParams& params, const Normalizers& norm,
                    const LayerAreaFn& area_eval) {
  CostParts p;
  p.area = mapping_area(graph, grid, m, area_eval);
  p.comm = comm_cost(graph, m);
  p.cost = params.w_area * (p.area / norm.area0) + params.w_comm * (p.comm / norm.comm0);
  return p;
}

int worker_count(const SAParams& params) {
  if (params.workers > 0) return params.workers;
  if (const char* env = std::getenv("SOCFP_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

}  // namespace

SAResult simulated_annealing(const CoreGraph& graph, const TileGrid& grid,
                             const SAParams& params, bool record_trace) {
  if (params.iterations < 1) throw SchemaError("iterations must be at least 1");
  if (params.reruns < 1) throw SchemaError("reruns must be at least 1");
  if (params.w_area < 0.0 || params.w_comm < 0.0 || params.w_area + params.w_comm <= 0.0)
    throw SchemaError("weights must be non-negative with a positive sum");
  if (params.cooling_factor <= 0.0 || params.cooling_factor >= 1.0)
    throw SchemaError("cooling factor must lie in (0,1)");
  if (params.cooling_period < 1) throw SchemaError("cooling period must be at least 1");

  Mapping init = initial_solution(graph, grid);
  Normalizers norm;
  {
    LayerAreaFn ev = area_cache(make_area_evaluator(params.area_model, params.eta,
                                                    params.solver_tol));
    norm.area0 = mapping_area(graph, grid, init, ev);
    norm.comm0 = comm_cost(graph, init);
  }
  if (norm.area0 <= 0.0) norm.area0 = 1.0;
  if (norm.comm0 <= 0.0) norm.comm0 = 1.0;  // no traffic: comm term vanishes

  SAResult result;
  result.normalizers = norm;
  result.reruns.resize(params.reruns);

  auto run_one = [&](int rerun, std::vector<TraceRow>* trace) {
    RerunOutcome& out = result.reruns[rerun];
    try {
      LayerAreaFn ev = area_cache(make_area_evaluator(params.area_model, params.eta,
                                                      params.solver_tol));
      Rng rng(params.seed ^ static_cast<std::uint64_t>(rerun));
      Mapping cur = init;
      CostParts cur_c = eval_cost(cur, graph, grid, params, norm, ev);
      Mapping best = cur;
      double best_cost = cur_c.cost;
      double temp = params.initial_temperature;
      for (int it = 1; it <= params.iterations; ++it) {
        Mapping prop = neighbor(cur, grid, rng);
        CostParts prop_c = eval_cost(prop, graph, grid, params, norm, ev);
        double delta = prop_c.cost - cur_c.cost;
        bool accepted = delta <= 0.0 || rng.unit() < std::exp(-delta / temp);
        if (accepted) {
          cur = std::move(prop);
          cur_c = prop_c;
          if (cur_c.cost < best_cost) {
            best_cost = cur_c.cost;
            best = cur;
          }
        }
        if (trace) trace->push_back({it, temp, cur_c.cost, accepted, cur_c.area, cur_c.comm});
        if (it % params.cooling_period == 0) temp *= params.cooling_factor;
      }
      CostParts best_c = eval_cost(best, graph, grid, params, norm, ev);
      out.ok = true;
      out.cost = best_c.cost;
      out.area = best_c.area;
      out.comm = best_c.comm;
      out.max_link_load = max_link_load(graph, best);
      out.best = std::move(best);
    } catch (const SolverError& e) {
      out.ok = false;
      out.error = e.what();
    }
  };

  int workers = std::min(worker_count(params), params.reruns);
  if (workers <= 1) {
    for (int rerun = 0; rerun < params.reruns; ++rerun)
      run_one(rerun, record_trace && rerun == 0 ? &result.trace : nullptr);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          int rerun = next.fetch_add(1);
          if (rerun >= params.reruns) return;
          run_one(rerun, record_trace && rerun == 0 ? &result.trace : nullptr);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<double> costs, areas, comms, loads;
  int best_at = -1;
  for (int rerun = 0; rerun < params.reruns; ++rerun) {
    const RerunOutcome& out = result.reruns[rerun];
    if (!out.ok) continue;
    costs.push_back(out.cost);
    areas.push_back(out.area);
    comms.push_back(out.comm);
    loads.push_back(out.max_link_load);
    if (best_at < 0 || out.cost < result.best_cost) {
      best_at = rerun;
      result.best_cost = out.cost;
    }
  }
  if (best_at < 0)
    throw SolverError("every rerun failed: " + result.reruns[0].error);
  const RerunOutcome& b = result.reruns[best_at];
  result.best_mapping = b.best;
  result.best_cost = b.cost;
  result.best_area = b.area;
  result.best_comm = b.comm;
  result.best_max_link_load = b.max_link_load;
  result.cost_stats = aggregate(costs);
  result.area_stats = aggregate(areas);
  result.comm_stats = aggregate(comms);
  result.link_stats = aggregate(loads);
  return result;
}

}  // namespace socfp
