#pragma once

#include <string>
#include <vector>

#include "socfp/benchgen.hpp"

namespace socfp {

// (candidate - baseline)/baseline as a signed percentage, decimals adapting
// to magnitude: two below 10%, one below 100%, none above.
std::string format_ratio(double candidate, double baseline);

struct BenchEntry {
  std::string name;
  std::vector<double> lp_areas;   // bounding area per layer, NaN marks failures
  std::vector<double> sdp_areas;
  double lp_runtime = 0.0;        // seconds per solve, averaged over repetitions
  double sdp_runtime = 0.0;
  int lp_inequalities = 0;
  int lp_variables = 0;
  int sdp_inequalities = 0;
  int sdp_block_variables = 0;
  int sdp_scalar_variables = 0;
  double avg_reduction = 0.0;     // mean over layers of (sdp - lp)/lp
  bool dominance = true;          // sdp area below lp area in every layer
};

BenchEntry run_bench_entry(const Benchmark& bench, int repetitions, double lp_tol,
                           double sdp_tol);

std::string bench_markdown(const std::vector<BenchEntry>& entries);
std::string bench_csv(const std::vector<BenchEntry>& entries);

}  // namespace socfp
