#pragma once

#include <cstdint>
#include <vector>

#include "socfp/lp.hpp"

namespace socfp {

// Piecewise refinement of the single-secant model. Each tile with content
// splits its admissible height range into `segments` intervals with knots on
// the iso-area curve; exactly one interval is active per tile, selected by a
// binary variable, and only the active interval's secant binds (big-M rows).
struct MILPModel {
  struct Block {
    int row = 0;
    int col = 0;
    std::vector<double> knots;      // segments+1 heights on the iso-area curve
    std::vector<int> selectors;     // variable indices of the binaries
  };

  LPModel lp;  // continuous relaxation, selectors in [0,1]
  std::vector<Block> blocks;
  int segments = 0;
};

// segments must lie in [2, 8]; finer splits explode the search tree without
// measurably tightening the bound.
MILPModel build_lp_multispline(const FloorplanProblem& p, int segments);

std::string dump(const MILPModel& m);

// Depth-first branch and bound with LP bounds and a fix-to-nearest-interval
// rounding heuristic. Hitting node_limit returns the best incumbent with
// stats.complete = false and the remaining gap in stats.gap_bound.
FloorplanSolution solve_milp(const MILPModel& m, double tol = 1e-9,
                             std::int64_t node_limit = 1'000'000);

}  // namespace socfp
