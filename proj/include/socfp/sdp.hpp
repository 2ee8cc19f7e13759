#pragma once

#include <string>

#include "socfp/types.hpp"

namespace socfp {

// Exact area model: one symbolic 2x2 block per tile,
//   X = [[r_i, sqrt(F)], [sqrt(F), c_j]]  constrained positive semidefinite,
// which with the fixed off-diagonal is equivalent to r_i*c_j >= F. Row and
// column coupling share the diagonal entries; x bounds both diagonal sums.
struct SDPModel {
  struct Block {
    int row = 0;
    int col = 0;
    double off_diag = 0.0;  // sqrt of the tile content
  };

  AreaMatrix areas;
  double eta = 0.1;
  std::vector<Block> blocks;  // row-major, one per grid position

  // Size conventions for model comparison tables. The block-count convention
  // counts matrix variables; the scalar convention counts every distinct
  // scalar unknown the blocks plus couplings induce.
  int reported_inequalities() const {
    int lk = areas.rows() * areas.cols();
    return lk * lk + areas.rows() + areas.cols() + 2;
  }
  int block_variables() const { return areas.rows() * areas.cols() + 1; }
  int scalar_variables() const {
    return 2 * areas.rows() * areas.cols() + areas.rows() + areas.cols() + 1;
  }
};

SDPModel build_sdp(const FloorplanProblem& p);

std::string dump(const SDPModel& m);

struct BarrierOptions {
  double tol = 1e-7;          // relative optimality gap
  double t0 = 1.0;            // initial centering weight
  double t_growth = 10.0;     // geometric increase per outer step
  double newton_tol = 1e-10;  // decrement threshold lambda^2/2
  int max_newton_steps = 500; // total across all centering stages
  double ls_backtrack = 0.5;
  double ls_slope = 1e-4;
};

// Log-barrier path following on the smooth equivalent program
//   minimize x  s.t.  r_i*c_j >= F_ij (F_ij > 0),
//                     r_i >= max_j sqrt(eta*F_ij), c_j >= max_i sqrt(eta*F_ij),
//                     sum r <= x, sum c <= x.
// Zero-content products are dropped (unbounded slack); the per-variable
// bounds keep those variables in the barrier domain. Non-convergence within
// the Newton step cap returns the best strictly feasible iterate with
// stats.complete = false and the certified gap in stats.gap_bound.
FloorplanSolution solve_sdp(const SDPModel& m, const BarrierOptions& opts);
FloorplanSolution solve_sdp(const SDPModel& m, double tol = 1e-7);

}  // namespace socfp
