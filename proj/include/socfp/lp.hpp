#pragma once

#include <string>
#include <vector>

#include "socfp/types.hpp"

namespace socfp {

struct LinearRow {
  enum class Rel { Ge, Le, Eq };
  std::vector<double> coeffs;  // dense, one per model variable
  Rel rel = Rel::Ge;
  double rhs = 0.0;
};

// Linear area model over per-row heights r_i, per-column widths c_j and the
// bounding side x. Tile content is enforced through one secant of the
// iso-area curve r*c = F between its intersections with the aspect cone,
// which is conservative: every point satisfying the aspect rows and the
// secant row has r*c >= F.
struct LPModel {
  int grid_rows = 0;
  int grid_cols = 0;
  std::vector<std::string> var_names;
  std::vector<LinearRow> rows;
  int objective_var = -1;  // variable to minimize

  int num_variables() const { return static_cast<int>(var_names.size()); }
  int var_r(int i) const { return i; }
  int var_c(int j) const { return grid_rows + j; }
  int var_x() const { return grid_rows + grid_cols; }

  // Size conventions for model comparison tables: the aspect row pairs plus
  // the two side bounds; per-tile content rows are not counted.
  int reported_inequalities() const { return 2 * grid_rows * grid_cols + 2; }
  int reported_variables() const { return grid_rows + grid_cols + 1; }
};

// Right-hand side of the single secant for content F at aspect bound eta:
// sqrt(F*eta) + sqrt(F/eta). Zero content gives a vacuous row.
double chord_rhs(double content, double eta);

LPModel build_lp(const FloorplanProblem& p);

std::string dump(const LPModel& m);

FloorplanSolution solve_lp(const LPModel& m, double tol = 1e-9);

}  // namespace socfp
