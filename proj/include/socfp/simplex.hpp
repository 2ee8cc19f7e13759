#pragma once

#include <cstdint>
#include <vector>

#include "socfp/lp.hpp"

namespace socfp {

struct SimplexOptions {
  double tol = 1e-9;                    // reduced-cost threshold
  std::int64_t max_pivots = 2'000'000;  // hard stop, throws SolverError
};

struct SimplexResult {
  std::vector<double> x;
  double objective = 0.0;
  std::int64_t pivots = 0;
};

// Two-phase dense tableau simplex over variables >= 0. Deterministic:
// Dantzig entering rule with lowest-index ties, switching to Bland's rule
// after a run of degenerate pivots. Throws SolverError on infeasible,
// unbounded, or pivot-limit outcomes.
SimplexResult simplex_minimize(const std::vector<double>& objective,
                               const std::vector<LinearRow>& rows,
                               const SimplexOptions& opts = {});

}  // namespace socfp
