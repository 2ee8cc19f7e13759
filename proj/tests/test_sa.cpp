#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "socfp/json_io.hpp"
#include "socfp/metrics.hpp"
#include "socfp/sa.hpp"

using namespace socfp;

namespace {

CoreGraph three_cores() {
  CoreGraph g;
  g.add_core({"a", 9.0});
  g.add_core({"b", 5.0});
  g.add_core({"c", 3.0});
  g.add_edge({"a", "b", 4.0});
  g.add_edge({"b", "c", 1.0});
  return g;
}

SAParams fast_params() {
  SAParams p;
  p.iterations = 800;
  p.reruns = 2;
  p.area_model = ModelKind::LP;
  p.solver_tol = 1e-9;
  p.seed = 5;
  return p;
}

}  // namespace

TEST_CASE("rng draws stay in range and replay") {
  Rng a(42), b(42);
  for (int i = 0; i < 2000; ++i) {
    int v = a.below(7);
    CHECK(v >= 0);
    CHECK(v < 7);
    CHECK(v == b.below(7));
  }
  Rng u(1);
  for (int i = 0; i < 2000; ++i) {
    double x = u.unit();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("initial solution packs big cores first") {
  CoreGraph g;
  g.add_core({"small", 1.0});
  g.add_core({"big", 9.0});
  g.add_core({"mid", 5.0});
  g.add_core({"mid2", 5.0});
  TileGrid grid = TileGrid::uniform(2, 1, 2);

  Mapping m = initial_solution(g, grid);
  CHECK(m.tile_of("big") == TileCoord{0, 0, 0});
  CHECK(m.tile_of("mid") == TileCoord{0, 0, 1});   // tie broken by id
  CHECK(m.tile_of("mid2") == TileCoord{1, 0, 0});
  CHECK(m.tile_of("small") == TileCoord{1, 0, 1});
}

TEST_CASE("initial solution needs enough tiles") {
  CoreGraph g = three_cores();
  CHECK_THROWS_AS(initial_solution(g, TileGrid::uniform(1, 1, 2)), SchemaError);
}

TEST_CASE("neighbor moves or swaps exactly one pair") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2);
  Mapping m = initial_solution(g, grid);
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    Mapping next = neighbor(m, grid, rng);
    next.validate(g, grid);
    int moved = 0;
    for (const auto& [id, t] : m.entries())
      if (next.tile_of(id) != t) ++moved;
    CHECK(moved >= 1);
    CHECK(moved <= 2);
    m = next;
  }
}

TEST_CASE("neighbor on a full grid always swaps") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 1, 3);
  Mapping m = initial_solution(g, grid);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Mapping next = neighbor(m, grid, rng);
    int moved = 0;
    for (const auto& [id, t] : m.entries())
      if (next.tile_of(id) != t) ++moved;
    CHECK(moved == 2);
    m = next;
  }
}

TEST_CASE("neighbor with nowhere to go returns the input") {
  CoreGraph g;
  g.add_core({"a", 1.0});
  TileGrid grid = TileGrid::uniform(1, 1, 1);
  Mapping m = initial_solution(g, grid);
  Rng rng(1);
  CHECK(neighbor(m, grid, rng).tile_of("a") == TileCoord{0, 0, 0});
}

TEST_CASE("area cache avoids repeat solves") {
  auto misses = std::make_shared<std::size_t>(0);
  LayerAreaFn ev = area_cache(make_area_evaluator(ModelKind::LP, 0.1, 1e-9), misses);
  AreaMatrix f = AreaMatrix::from_rows({{2.0, 1.0}});
  double first = ev(f);
  double again = ev(f);
  CHECK(first == again);
  CHECK(*misses == 1);

  AreaMatrix swapped = AreaMatrix::from_rows({{1.0, 2.0}});
  ev(swapped);
  CHECK(*misses == 2);
  ev(swapped);
  CHECK(*misses == 2);
}

TEST_CASE("initial solution has unit cost under balanced weights") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2, 0.5);
  SAParams params = fast_params();
  Mapping init = initial_solution(g, grid);

  LayerAreaFn ev = make_area_evaluator(params.area_model, params.eta, params.solver_tol);
  Normalizers norm{mapping_area(g, grid, init, ev), comm_cost(g, init)};
  CHECK(sa_cost(init, g, grid, params, norm, ev) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solver failures name the layer") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(2, 1, 2, 0.5);
  Mapping m = initial_solution(g, grid);
  LayerAreaFn boom = [](const AreaMatrix&) -> double { throw SolverError("nope"); };
  try {
    mapping_area(g, grid, m, boom);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("layer 0") != std::string::npos);
    CHECK(std::string(e.what()).find("nope") != std::string::npos);
  }
}

TEST_CASE("annealing finds the brute force optimum on a small instance") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2, 0.5);
  SAParams params = fast_params();

  SAResult res = simulated_annealing(g, grid, params);

  LayerAreaFn ev = area_cache(make_area_evaluator(params.area_model, params.eta,
                                                  params.solver_tol));
  std::vector<TileCoord> tiles = grid.tiles();
  std::vector<int> idx(tiles.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::string> ids = {"a", "b", "c"};
  double best = std::numeric_limits<double>::infinity();
  std::sort(idx.begin(), idx.end());
  do {
    Mapping m;
    for (size_t i = 0; i < ids.size(); ++i) m.assign(ids[i], tiles[idx[i]]);
    best = std::min(best, sa_cost(m, g, grid, params, res.normalizers, ev));
  } while (std::next_permutation(idx.begin(), idx.end()));

  CHECK(res.best_cost == doctest::Approx(best).epsilon(1e-9));
  res.best_mapping.validate(g, grid);
}

TEST_CASE("identical seeds give identical results at any worker count") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2, 0.5);
  SAParams params = fast_params();
  params.reruns = 3;

  SAParams serial = params;
  serial.workers = 1;
  SAParams parallel = params;
  parallel.workers = 3;

  SAResult a = simulated_annealing(g, grid, serial, true);
  SAResult b = simulated_annealing(g, grid, parallel, true);
  CHECK(sa_result_to_json(a) == sa_result_to_json(b));
  CHECK(trace_to_csv(a.trace) == trace_to_csv(b.trace));

  SAResult c = simulated_annealing(g, grid, serial, true);
  CHECK(sa_result_to_json(a) == sa_result_to_json(c));
}

TEST_CASE("different seeds explore differently") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2, 0.5);
  SAParams params = fast_params();
  params.iterations = 60;
  params.reruns = 1;
  SAResult a = simulated_annealing(g, grid, params, true);
  params.seed = 99;
  SAResult b = simulated_annealing(g, grid, params, true);
  CHECK(trace_to_csv(a.trace) != trace_to_csv(b.trace));
}

TEST_CASE("rerun best equals the running minimum of its trace") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2, 0.5);
  SAParams params = fast_params();
  params.reruns = 1;

  SAResult res = simulated_annealing(g, grid, params, true);
  REQUIRE(res.trace.size() == static_cast<size_t>(params.iterations));

  LayerAreaFn ev = make_area_evaluator(params.area_model, params.eta, params.solver_tol);
  double initial = sa_cost(initial_solution(g, grid), g, grid, params, res.normalizers, ev);
  double best = initial;
  for (const auto& row : res.trace) best = std::min(best, row.cost);
  CHECK(res.reruns[0].cost == doctest::Approx(best).epsilon(1e-12));

  // Temperature follows the schedule.
  CHECK(res.trace.front().temperature == doctest::Approx(params.initial_temperature));
  int periods = (params.iterations - 1) / params.cooling_period;
  double expected = params.initial_temperature;
  for (int i = 0; i < periods; ++i) expected *= params.cooling_factor;
  CHECK(res.trace.back().temperature == doctest::Approx(expected));
}

TEST_CASE("aggregates recompute under an independent summation") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2, 0.5);
  SAParams params = fast_params();
  params.reruns = 4;
  params.iterations = 300;

  SAResult res = simulated_annealing(g, grid, params);
  REQUIRE(res.reruns.size() == 4);

  long double sum = 0.0;
  for (const auto& r : res.reruns) sum += static_cast<long double>(r.cost);
  long double mean = sum / res.reruns.size();
  long double sq = 0.0;
  for (const auto& r : res.reruns) {
    long double d = static_cast<long double>(r.cost) - mean;
    sq += d * d;
  }
  long double stddev = std::sqrt(static_cast<double>(sq / res.reruns.size()));

  CHECK(res.cost_stats.mean ==
        doctest::Approx(static_cast<double>(mean)).epsilon(1e-12));
  CHECK(res.cost_stats.stddev ==
        doctest::Approx(static_cast<double>(stddev)).epsilon(1e-12));

  for (const auto& r : res.reruns) CHECK(res.best_cost <= r.cost + 1e-15);
}

TEST_CASE("single rerun has zero spread") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2, 0.5);
  SAParams params = fast_params();
  params.reruns = 1;
  params.iterations = 100;
  SAResult res = simulated_annealing(g, grid, params);
  CHECK(res.cost_stats.stddev == 0.0);
  CHECK(res.area_stats.stddev == 0.0);
  CHECK(res.cost_stats.mean == doctest::Approx(res.best_cost));
}

TEST_CASE("parameter validation") {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2);
  SAParams p = fast_params();
  p.iterations = 0;
  CHECK_THROWS_AS(simulated_annealing(g, grid, p), SchemaError);
  p = fast_params();
  p.w_area = 0.0;
  p.w_comm = 0.0;
  CHECK_THROWS_AS(simulated_annealing(g, grid, p), SchemaError);
  p = fast_params();
  p.cooling_factor = 1.5;
  CHECK_THROWS_AS(simulated_annealing(g, grid, p), SchemaError);
}
