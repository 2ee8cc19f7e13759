// Acceptance gate: one check per shipped claim, one PASS/FAIL line each.
// Run with no arguments for the whole suite or with --only N for one check.
// Exit status is the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "socfp/benchgen.hpp"
#include "socfp/json_io.hpp"
#include "socfp/lp.hpp"
#include "socfp/metrics.hpp"
#include "socfp/milp.hpp"
#include "socfp/report.hpp"
#include "socfp/sa.hpp"
#include "socfp/sdp.hpp"

using namespace socfp;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

void note(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  std::printf("    ");
  std::vprintf(fmt, ap);
  std::printf("\n");
  va_end(ap);
}

bool feasible(const FloorplanSolution& s, const AreaMatrix& F) {
  for (int i = 0; i < F.rows(); ++i)
    for (int j = 0; j < F.cols(); ++j) {
      double f = F.at(i, j);
      if (s.row_heights[i] * s.col_widths[j] < f - 1e-6 * std::max(1.0, f)) return false;
    }
  return true;
}

AreaMatrix random_matrix(std::mt19937_64& rng, int l, int k) {
  std::uniform_real_distribution<double> fdist(0.5, 16.0);
  AreaMatrix F(l, k, 0.0);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < k; ++j) F.at(i, j) = fdist(rng);
  return F;
}

// 1. Analytic optima for both solvers.
bool criterion1() {
  Timer t;
  bool ok = true;

  struct Case {
    AreaMatrix F;
    double want;
  };
  const double chord = std::sqrt(0.1) + std::sqrt(10.0);
  std::vector<Case> sdp_cases = {
      {AreaMatrix::from_rows({{4.0}}), 2.0},
      {AreaMatrix::from_rows({{1.0, 1.0}}), std::sqrt(2.0)},
      {AreaMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}), 2.0},
  };
  std::vector<Case> lp_cases = {
      {AreaMatrix::from_rows({{1.0}}), chord / 2.0},
      {AreaMatrix::from_rows({{1.0, 1.0}}), 2.0 / 3.0 * chord},
  };
  for (const auto& c : sdp_cases) {
    FloorplanProblem p{c.F, 0.1};
    double x = solve_sdp(build_sdp(p)).objective_value;
    bool hit = close(x, c.want, 1e-6);
    note("sdp %dx%d: x = %.9f, analytic %.9f%s", c.F.rows(), c.F.cols(), x, c.want,
         hit ? "" : "  <- off");
    ok = ok && hit;
  }
  for (const auto& c : lp_cases) {
    FloorplanProblem p{c.F, 0.1};
    double x = solve_lp(build_lp(p)).objective_value;
    bool hit = close(x, c.want, 1e-6);
    note("lp  %dx%d: x = %.9f, analytic %.9f%s", c.F.rows(), c.F.cols(), x, c.want,
         hit ? "" : "  <- off");
    ok = ok && hit;
  }
  double dt = t.seconds();
  note("runtime %.2f s (budget 1 s)", dt);
  return ok && dt < 1.0;
}

// 2. Model dominance and feasibility on random instances.
bool criterion2() {
  Timer t;
  std::mt19937_64 rng(20260815ull);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> which_eta(0, 2);
  const double etas[3] = {0.1, 0.3, 0.5};

  int bad = 0;
  for (int n = 0; n < 200; ++n) {
    int l = dim(rng), k = dim(rng);
    AreaMatrix F = random_matrix(rng, l, k);
    FloorplanProblem p{F, etas[which_eta(rng)]};

    FloorplanSolution lp = solve_lp(build_lp(p));
    FloorplanSolution milp = solve_milp(build_lp_multispline(p, 4));
    FloorplanSolution sdp = solve_sdp(build_sdp(p));

    bool order = sdp.objective_value <= milp.objective_value &&
                 milp.objective_value <= lp.objective_value + 1e-6;
    bool feas = feasible(lp, F) && feasible(milp, F) && feasible(sdp, F) &&
                milp.stats.complete;
    if (!(order && feas)) {
      ++bad;
      note("instance %d (%dx%d, eta %.1f): sdp %.9f milp %.9f lp %.9f order=%d feas=%d",
           n, l, k, p.eta, sdp.objective_value, milp.objective_value, lp.objective_value,
           order ? 1 : 0, feas ? 1 : 0);
    }
  }
  double dt = t.seconds();
  note("200 instances, %d violations, runtime %.1f s (budget 60 s)", bad, dt);
  return bad == 0 && dt < 60.0;
}

// 3. Exact solver agrees with the independent search bracket.
bool criterion3() {
  Timer t;
  std::mt19937_64 rng(77ull);
  const int shapes[8][2] = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {1, 4}, {4, 1}, {2, 2}};
  std::uniform_int_distribution<int> which_shape(0, 7);
  std::uniform_int_distribution<int> which_eta(0, 2);
  const double etas[3] = {0.1, 0.3, 0.5};

  int bad = 0;
  for (int n = 0; n < 50; ++n) {
    const int* s = shapes[which_shape(rng)];
    AreaMatrix F = random_matrix(rng, s[0], s[1]);
    FloorplanProblem p{F, etas[which_eta(rng)]};
    double x = solve_sdp(build_sdp(p)).objective_value;
    testing::OracleBracket br = testing::sdp_reference_oracle(p, 200);
    bool ok = br.width() <= 1e-2 && br.contains(x);
    if (!ok) {
      ++bad;
      note("instance %d (%dx%d, eta %.1f): x %.9f bracket [%.9f, %.9f] width %.2e",
           n, s[0], s[1], p.eta, x, br.lo, br.hi, br.width());
    }
  }
  double dt = t.seconds();
  note("50 instances, %d outside bracket, runtime %.1f s (budget 120 s)", bad, dt);
  return bad == 0 && dt < 120.0;
}

// 4. Reported model sizes match the published counts.
bool criterion4() {
  const int want_lp_ineq[3] = {16, 88, 168};
  const int want_lp_vars[3] = {9, 32, 40};
  const int want_sdp_ineq[3] = {31, 436, 1644};
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    Benchmark b = gen_benchmark(n);
    int li = 0, lv = 0, si = 0;
    for (const AreaMatrix& F : b.layer_areas) {
      FloorplanProblem p{F, b.spec.eta};
      LPModel lp = build_lp(p);
      SDPModel sdp = build_sdp(p);
      li += lp.reported_inequalities();
      lv += lp.reported_variables();
      si += sdp.reported_inequalities();
    }
    bool hit = li == want_lp_ineq[n - 1] && lv == want_lp_vars[n - 1] &&
               si == want_sdp_ineq[n - 1];
    note("%s: lp %d/%d (want %d/%d), sdp %d (want %d)%s", b.name.c_str(), li, lv,
         want_lp_ineq[n - 1], want_lp_vars[n - 1], si, want_sdp_ineq[n - 1],
         hit ? "" : "  <- off");
    ok = ok && hit;
  }
  return ok;
}

// 5. Published per-layer areas: dominance plus the 10-20% average-reduction
// band. Absolute values are compared against the published table as a report;
// deviations there are attributed to the benchmark reconstruction, not hidden.
bool criterion5() {
  Timer t;
  const std::vector<double> pub_lp[2] = {{211, 222, 214, 185}, {364, 379, 378, 316}};
  const std::vector<double> pub_sdp[2] = {{178, 180, 183, 154}, {301, 313, 313, 261}};

  bool dominance = true;
  bool band = true;
  for (int n = 2; n <= 3; ++n) {
    Benchmark b = gen_benchmark(n);
    double sum_red = 0.0;
    for (size_t z = 0; z < b.layer_areas.size(); ++z) {
      FloorplanProblem p{b.layer_areas[z], b.spec.eta};
      FloorplanSolution lp = solve_lp(build_lp(p));
      FloorplanSolution sdp = solve_sdp(build_sdp(p));
      double la = bounding_metrics(lp, p.areas).bounding_area;
      double sa = bounding_metrics(sdp, p.areas).bounding_area;
      if (!(sa < la)) dominance = false;
      sum_red += (sa - la) / la;

      double pl = pub_lp[n - 2][z], ps = pub_sdp[n - 2][z];
      double dl = (la - pl) / pl * 100.0, ds = (sa - ps) / ps * 100.0;
      note("%s layer %zu: lp %.1f (published %.0f, %+.1f%%%s), sdp %.1f (published %.0f, "
           "%+.1f%%%s)",
           b.name.c_str(), z + 1, la, pl, dl,
           std::fabs(dl) > 10.0 ? ", outside +-10%, reported" : "", sa, ps, ds,
           std::fabs(ds) > 10.0 ? ", outside +-10%, reported" : "");
    }
    double avg = sum_red / static_cast<double>(b.layer_areas.size()) * 100.0;
    bool in_band = avg <= -10.0 && avg >= -20.0;
    note("%s average reduction %.1f%% (band -20%%..-10%%)%s", b.name.c_str(), avg,
         in_band ? "" : "  <- outside band");
    band = band && in_band;
  }
  double dt = t.seconds();
  note("runtime %.1f s (budget 300 s)", dt);
  if (!band)
    note("average reduction outside the published band: the reconstructed per-tile "
         "contents lack the unpublished core-size data, so the linear model's "
         "conservatism is larger here than in the published table");
  return dominance && band && dt < 300.0;
}

// 6. Whitespace reduction of the exact model over the linear one.
bool criterion6() {
  bool ok = true;
  double best_red = 0.0;
  for (int n = 1; n <= 3; ++n) {
    Benchmark b = gen_benchmark(n);
    for (size_t z = 0; z < b.layer_areas.size(); ++z) {
      FloorplanProblem p{b.layer_areas[z], b.spec.eta};
      double wl = bounding_metrics(solve_lp(build_lp(p)), p.areas).whitespace;
      double ws = bounding_metrics(solve_sdp(build_sdp(p)), p.areas).whitespace;
      double red = (wl - ws) / wl;
      best_red = std::max(best_red, red);
      if (!(ws < wl)) {
        ok = false;
        note("%s layer %zu: sdp whitespace %.3f not below lp %.3f", b.name.c_str(), z + 1,
             ws, wl);
      }
    }
  }
  note("largest whitespace reduction %.1f%% (need one layer >= 50%%)", best_red * 100.0);
  ok = ok && best_red >= 0.5;

  FloorplanProblem p{AreaMatrix::from_rows({{1.0, 1.0}}), 0.1};
  double wl = bounding_metrics(solve_lp(build_lp(p)), p.areas).whitespace;
  double ws = bounding_metrics(solve_sdp(build_sdp(p)), p.areas).whitespace;
  note("1x2 instance: lp whitespace %.4f (analytic 3.3778), sdp whitespace %.2e", wl, ws);
  ok = ok && close(wl, 48.4 / 9.0 - 2.0, 1e-3) && std::fabs(ws) <= 1e-4 &&
       (wl - ws) / wl >= 0.9999;
  return ok;
}

// 7. Exact model solves the largest benchmark quickly.
bool criterion7() {
  Benchmark b = gen_benchmark(3);
  Timer t;
  for (size_t z = 0; z < b.layer_areas.size(); ++z) {
    Timer lt;
    FloorplanProblem p{b.layer_areas[z], b.spec.eta};
    FloorplanSolution s = solve_sdp(build_sdp(p));
    note("layer %zu: x = %.4f in %.2f s (%d iterations)", z + 1, s.objective_value,
         lt.seconds(), s.stats.iterations);
  }
  double dt = t.seconds();
  note("all four layers in %.2f s (budget 60 s)", dt);
  return dt < 60.0;
}

CoreGraph three_cores() {
  CoreGraph g;
  g.add_core({"a", 9.0});
  g.add_core({"b", 5.0});
  g.add_core({"c", 3.0});
  g.add_edge({"a", "b", 4.0});
  g.add_edge({"b", "c", 1.0});
  return g;
}

// 8. Annealer reaches the exhaustive optimum on a desk-size instance.
bool criterion8() {
  Timer t;
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2, 0.5);
  SAParams params;
  params.iterations = 15000;
  params.reruns = 5;
  params.seed = 42;
  params.area_model = ModelKind::SDP;
  params.solver_tol = 1e-7;
  SAResult res = simulated_annealing(g, grid, params);

  LayerAreaFn ev = area_cache(make_area_evaluator(params.area_model, params.eta,
                                                  params.solver_tol));
  std::vector<TileCoord> tiles = grid.tiles();
  const char* ids[3] = {"a", "b", "c"};
  double best = 0.0;
  bool first = true;
  for (size_t i = 0; i < tiles.size(); ++i)
    for (size_t j = 0; j < tiles.size(); ++j)
      for (size_t k = 0; k < tiles.size(); ++k) {
        if (i == j || i == k || j == k) continue;
        Mapping m;
        m.assign(ids[0], tiles[i]);
        m.assign(ids[1], tiles[j]);
        m.assign(ids[2], tiles[k]);
        double c = sa_cost(m, g, grid, params, res.normalizers, ev);
        if (first || c < best) best = c;
        first = false;
      }

  int hits = 0;
  for (const RerunOutcome& out : res.reruns)
    if (out.ok && out.cost <= best + 1e-9 * std::max(1.0, std::fabs(best))) ++hits;
  double dt = t.seconds();
  note("exhaustive optimum %.12f, %d of %d seeds reached it, runtime %.1f s (budget 120 s)",
       best, hits, params.reruns, dt);
  return hits >= 4 && dt < 120.0;
}

// 9. Annealer invariants: monotone best-so-far, seed determinism, aggregates.
bool criterion9() {
  CoreGraph g = three_cores();
  TileGrid grid = TileGrid::uniform(1, 2, 2, 0.5);
  SAParams params;
  params.iterations = 2000;
  params.reruns = 4;
  params.seed = 7;
  params.area_model = ModelKind::LP;
  params.solver_tol = 1e-9;
  SAResult a = simulated_annealing(g, grid, params, true);
  SAResult b = simulated_annealing(g, grid, params, true);

  bool identical = sa_result_to_json(a) == sa_result_to_json(b) &&
                   trace_to_csv(a.trace) == trace_to_csv(b.trace);
  note("identical seeds give byte-identical results: %s", identical ? "yes" : "NO");

  LayerAreaFn ev = area_cache(make_area_evaluator(params.area_model, params.eta,
                                                  params.solver_tol));
  double run = sa_cost(initial_solution(g, grid), g, grid, params, a.normalizers, ev);
  bool monotone = true;
  double prev = run;
  for (const TraceRow& row : a.trace) {
    run = std::min(run, row.cost);
    if (run > prev + 1e-15) monotone = false;
    prev = run;
  }
  monotone = monotone && close(run, a.reruns[0].cost, 1e-12 * std::max(1.0, run));
  note("best-so-far over the rerun-0 trace is non-increasing and ends at the reported "
       "best: %s", monotone ? "yes" : "NO");

  auto recompute = [](const std::vector<double>& v) {
    long double sum = 0.0L;
    for (double x : v) sum += x;
    long double mean = sum / static_cast<long double>(v.size());
    long double sq = 0.0L;
    for (double x : v) sq += (x - mean) * (x - mean);
    MetricStats s;
    s.mean = static_cast<double>(mean);
    s.stddev = static_cast<double>(std::sqrt(sq / static_cast<long double>(v.size())));
    return s;
  };
  std::vector<double> costs, areas, comms, loads;
  for (const RerunOutcome& out : a.reruns)
    if (out.ok) {
      costs.push_back(out.cost);
      areas.push_back(out.area);
      comms.push_back(out.comm);
      loads.push_back(out.max_link_load);
    }
  auto agree = [&](const MetricStats& got, const MetricStats& want) {
    return close(got.mean, want.mean, 1e-12 * std::max(1.0, std::fabs(want.mean))) &&
           close(got.stddev, want.stddev, 1e-12 * std::max(1.0, want.stddev));
  };
  bool stats_ok = agree(a.cost_stats, recompute(costs)) &&
                  agree(a.area_stats, recompute(areas)) &&
                  agree(a.comm_stats, recompute(comms)) &&
                  agree(a.link_stats, recompute(loads));
  note("mean/std recomputation agrees to 1e-12 relative: %s", stats_ok ? "yes" : "NO");

  return identical && monotone && stats_ok;
}

// 10. Published mapping-comparison table needs external inputs; noted only.
bool criterion10() {
  note("not applicable at desk scale: the published mapping comparison depends on "
       "core-size and traffic tables that were never released; the ratio-reporting "
       "path it would exercise is covered by criterion 11");
  return true;
}

// 11. Ratio columns against a baseline reference table.
bool criterion11() {
  ReferenceTable ref = load_reference(
      "{\"type\":\"reference\",\"name\":\"baseline\","
      "\"metrics\":{\"area\":11301,\"comm\":19858,\"bandwidth\":4060}}");
  struct Row {
    const char* metric;
    double candidate;
    const char* want;
  };
  const Row rows[] = {
      {"area", 10178.0, "-9.94%"},
      {"comm", 40000.0, "+101%"},
      {"bandwidth", 3654.0, "-10.0%"},
  };
  bool ok = true;
  for (const Row& r : rows) {
    std::string got = format_ratio(r.candidate, ref.metrics.at(r.metric));
    note("%s: %.0f vs %.0f -> %s (want %s)", r.metric, r.candidate,
         ref.metrics.at(r.metric), got.c_str(), r.want);
    ok = ok && got == r.want;
  }
  return ok;
}

struct Criterion {
  int id;
  const char* label;
  bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "analytic optima within 1e-6", criterion1},
    {2, "sdp <= milp <= lp dominance and feasibility on 200 random instances", criterion2},
    {3, "sdp agrees with the independent oracle bracket on 50 instances", criterion3},
    {4, "reported model sizes match the published counts", criterion4},
    {5, "published per-layer areas: dominance and 10-20% average reduction", criterion5},
    {6, "whitespace reduction, including the 100% analytic instance", criterion6},
    {7, "sdp solves the 80-core benchmark under 60 s", criterion7},
    {8, "annealer reaches the exhaustive optimum in >= 4 of 5 seeds", criterion8},
    {9, "annealer determinism and aggregate invariants", criterion9},
    {10, "published mapping table is out of scope; ingestion covered by 11", criterion10},
    {11, "ratio reporting reproduces hand-computed columns", criterion11},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    bool pass = false;
    try {
      pass = c.run();
    } catch (const std::exception& e) {
      note("unexpected exception: %s", e.what());
    }
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", c.id, c.label);
    if (!pass) ++failures;
  }
  return failures;
}
