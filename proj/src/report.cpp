#include "socfp/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "socfp/lp.hpp"
#include "socfp/metrics.hpp"
#include "socfp/sdp.hpp"

namespace socfp {

std::string format_ratio(double candidate, double baseline) {
  double v = (candidate - baseline) / baseline * 100.0;
  if (v == 0.0) return "0.0%";
  char buf[48];
  double a = std::fabs(v);
  const char* spec = a < 10.0 ? "%+.2f%%" : a < 100.0 ? "%+.1f%%" : "%+.0f%%";
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

namespace {

double bounding(const FloorplanSolution& sol) {
  double sr = std::accumulate(sol.row_heights.begin(), sol.row_heights.end(), 0.0);
  double sc = std::accumulate(sol.col_widths.begin(), sol.col_widths.end(), 0.0);
  return sr * sc;
}

std::string cell(double v, const char* spec = "%.1f") {
  if (std::isnan(v)) return "fail";
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

BenchEntry run_bench_entry(const Benchmark& bench, int repetitions, double lp_tol,
                           double sdp_tol) {
  BenchEntry e;
  e.name = bench.name;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double lp_time = 0.0, sdp_time = 0.0;
  int lp_solves = 0, sdp_solves = 0;

  for (const AreaMatrix& areas : bench.layer_areas) {
    FloorplanProblem p{areas, bench.spec.eta};

    LPModel lp = build_lp(p);
    e.lp_inequalities += lp.reported_inequalities();
    e.lp_variables += lp.reported_variables();
    double lp_area = nan;
    try {
      for (int rep = 0; rep < repetitions; ++rep) {
        FloorplanSolution sol = solve_lp(lp, lp_tol);
        lp_time += sol.stats.runtime_seconds;
        ++lp_solves;
        if (rep == 0) lp_area = bounding(sol);
      }
    } catch (const SolverError&) {
    }
    e.lp_areas.push_back(lp_area);

    SDPModel sdp = build_sdp(p);
    e.sdp_inequalities += sdp.reported_inequalities();
    e.sdp_block_variables += sdp.block_variables();
    e.sdp_scalar_variables += sdp.scalar_variables();
    double sdp_area = nan;
    try {
      for (int rep = 0; rep < repetitions; ++rep) {
        FloorplanSolution sol = solve_sdp(sdp, sdp_tol);
        sdp_time += sol.stats.runtime_seconds;
        ++sdp_solves;
        if (rep == 0) sdp_area = bounding(sol);
      }
    } catch (const SolverError&) {
    }
    e.sdp_areas.push_back(sdp_area);
  }

  e.lp_runtime = lp_solves ? lp_time / lp_solves : 0.0;
  e.sdp_runtime = sdp_solves ? sdp_time / sdp_solves : 0.0;

  double sum = 0.0;
  int n = 0;
  for (size_t z = 0; z < e.lp_areas.size(); ++z) {
    double lp_a = e.lp_areas[z], sdp_a = e.sdp_areas[z];
    if (std::isnan(lp_a) || std::isnan(sdp_a)) {
      e.dominance = false;
      continue;
    }
    if (sdp_a >= lp_a) e.dominance = false;
    sum += (sdp_a - lp_a) / lp_a;
    ++n;
  }
  e.avg_reduction = n ? sum / n : 0.0;
  return e;
}

std::string bench_markdown(const std::vector<BenchEntry>& entries) {
  std::string out = "## Per-layer bounding areas\n\n";
  out += "| benchmark | layer | lp area | sdp area | delta |\n";
  out += "|---|---|---|---|---|\n";
  char buf[64];
  for (const auto& e : entries) {
    for (size_t z = 0; z < e.lp_areas.size(); ++z) {
      double lp_a = e.lp_areas[z], sdp_a = e.sdp_areas[z];
      std::string delta = (std::isnan(lp_a) || std::isnan(sdp_a))
                              ? std::string("fail")
                              : format_ratio(sdp_a, lp_a);
      out += "| " + e.name + " | " + std::to_string(z + 1) + " | " + cell(lp_a) + " | " +
             cell(sdp_a) + " | " + delta + " |\n";
    }
    std::snprintf(buf, sizeof buf, "%+.1f%%", e.avg_reduction * 100.0);
    out += "| " + e.name + " | average reduction | | | " + buf + " |\n";
  }

  out += "\n## Runtimes (seconds per solve)\n\n";
  out += "| benchmark | lp | sdp |\n|---|---|---|\n";
  for (const auto& e : entries)
    out += "| " + e.name + " | " + cell(e.lp_runtime, "%.4f") + " | " +
           cell(e.sdp_runtime, "%.4f") + " |\n";

  out += "\n## Model sizes\n\n";
  out += "| benchmark | lp inequalities | lp variables | sdp inequalities | sdp block vars | "
         "sdp scalar vars |\n|---|---|---|---|---|---|\n";
  for (const auto& e : entries)
    out += "| " + e.name + " | " + std::to_string(e.lp_inequalities) + " | " +
           std::to_string(e.lp_variables) + " | " + std::to_string(e.sdp_inequalities) + " | " +
           std::to_string(e.sdp_block_variables) + " | " +
           std::to_string(e.sdp_scalar_variables) + " |\n";
  return out;
}

std::string bench_csv(const std::vector<BenchEntry>& entries) {
  std::string out =
      "benchmark,layer,lp_area,sdp_area,delta,lp_runtime,sdp_runtime,lp_inequalities,"
      "lp_variables,sdp_inequalities,sdp_block_variables,sdp_scalar_variables,avg_reduction\n";
  char buf[64];
  for (const auto& e : entries) {
    for (size_t z = 0; z < e.lp_areas.size(); ++z) {
      double lp_a = e.lp_areas[z], sdp_a = e.sdp_areas[z];
      out += e.name + "," + std::to_string(z + 1) + ",";
      std::snprintf(buf, sizeof buf, "%.10g", lp_a);
      out += std::string(buf) + ",";
      std::snprintf(buf, sizeof buf, "%.10g", sdp_a);
      out += std::string(buf) + ",";
      out += (std::isnan(lp_a) || std::isnan(sdp_a)) ? "fail" : format_ratio(sdp_a, lp_a);
      std::snprintf(buf, sizeof buf, ",%.10g,%.10g,", e.lp_runtime, e.sdp_runtime);
      out += buf;
      out += std::to_string(e.lp_inequalities) + "," + std::to_string(e.lp_variables) + "," +
             std::to_string(e.sdp_inequalities) + "," + std::to_string(e.sdp_block_variables) +
             "," + std::to_string(e.sdp_scalar_variables) + ",";
      std::snprintf(buf, sizeof buf, "%.10g", e.avg_reduction);
      out += std::string(buf) + "\n";
    }
  }
  return out;
}

}  // namespace socfp
