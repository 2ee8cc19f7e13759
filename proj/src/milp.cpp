#include "socfp/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "socfp/simplex.hpp"

namespace socfp {

MILPModel build_lp_multispline(const FloorplanProblem& p, int segments) {
  p.validate();
  if (segments < 2) throw SchemaError("multi-spline model needs at least 2 segments");
  if (segments > 8) throw SchemaError("multi-spline model supports at most 8 segments");

  const int l = p.areas.rows();
  const int k = p.areas.cols();
  const double eta = p.eta;

  MILPModel m;
  m.segments = segments;
  LPModel& lp = m.lp;
  lp.grid_rows = l;
  lp.grid_cols = k;
  for (int i = 0; i < l; ++i) lp.var_names.push_back("r" + std::to_string(i));
  for (int j = 0; j < k; ++j) lp.var_names.push_back("c" + std::to_string(j));
  lp.var_names.push_back("x");
  lp.objective_var = lp.var_x();

  double b_max = 0.0;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < k; ++j) {
      double f = p.areas.at(i, j);
      if (f > 0.0) {
        b_max = std::max(b_max, std::sqrt(f / eta));
        MILPModel::Block blk;
        blk.row = i;
        blk.col = j;
        double a = std::sqrt(f * eta);
        double b = std::sqrt(f / eta);
        for (int s = 0; s <= segments; ++s)
          blk.knots.push_back(a + (b - a) * s / segments);
        for (int s = 0; s < segments; ++s) {
          blk.selectors.push_back(static_cast<int>(lp.var_names.size()));
          lp.var_names.push_back("z" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                 std::to_string(s));
        }
        m.blocks.push_back(std::move(blk));
      }
    }

  const int n = static_cast<int>(lp.var_names.size());
  auto row = [&](LinearRow::Rel rel, double rhs) {
    LinearRow r;
    r.coeffs.assign(n, 0.0);
    r.rel = rel;
    r.rhs = rhs;
    return r;
  };

  // Deactivated interval rows must stay slack for any height another tile in
  // the grid row can force; the per-tile secant reach is not enough for that,
  // so the upper range rows use a grid-wide bound.
  const double range_m = std::max(l, k) * b_max;

  size_t blk_at = 0;
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < k; ++j) {
      LinearRow a = row(LinearRow::Rel::Ge, 0.0);
      a.coeffs[lp.var_r(i)] = 1.0;
      a.coeffs[lp.var_c(j)] = -eta;
      lp.rows.push_back(std::move(a));

      LinearRow b = row(LinearRow::Rel::Ge, 0.0);
      b.coeffs[lp.var_c(j)] = 1.0;
      b.coeffs[lp.var_r(i)] = -eta;
      lp.rows.push_back(std::move(b));

      double f = p.areas.at(i, j);
      if (f <= 0.0) {
        lp.rows.push_back(row(LinearRow::Rel::Ge, 0.0));
        lp.rows.back().coeffs[lp.var_r(i)] = 1.0;
        lp.rows.back().coeffs[lp.var_c(j)] = 1.0;
        continue;
      }

      const MILPModel::Block& blk = m.blocks[blk_at++];
      const double secant_m = chord_rhs(f, eta);
      for (int s = 1; s <= segments; ++s) {
        double lo = blk.knots[s - 1];
        double hi = blk.knots[s];
        int zs = blk.selectors[s - 1];

        // Secant between (lo, f/lo) and (hi, f/hi), active when z = 1:
        // r + (lo*hi/f) c >= lo + hi - M(1-z)
        LinearRow sec = row(LinearRow::Rel::Ge, lo + hi - secant_m);
        sec.coeffs[lp.var_r(i)] = 1.0;
        sec.coeffs[lp.var_c(j)] = lo * hi / f;
        sec.coeffs[zs] = -secant_m;
        lp.rows.push_back(std::move(sec));

        if (s >= 2) {  // r >= lo - M(1-z); vacuous for z = 0 since lo < M
          LinearRow lr = row(LinearRow::Rel::Ge, lo - secant_m);
          lr.coeffs[lp.var_r(i)] = 1.0;
          lr.coeffs[zs] = -secant_m;
          lp.rows.push_back(std::move(lr));
        }
        if (s <= segments - 1) {  // r <= hi + U(1-z)
          LinearRow ur = row(LinearRow::Rel::Le, hi + range_m);
          ur.coeffs[lp.var_r(i)] = 1.0;
          ur.coeffs[zs] = range_m;
          lp.rows.push_back(std::move(ur));
        }
      }
      for (int zs : blk.selectors) {
        LinearRow box = row(LinearRow::Rel::Le, 1.0);
        box.coeffs[zs] = 1.0;
        lp.rows.push_back(std::move(box));
      }
      LinearRow one = row(LinearRow::Rel::Eq, 1.0);
      for (int zs : blk.selectors) one.coeffs[zs] = 1.0;
      lp.rows.push_back(std::move(one));
    }
  }

  LinearRow xr = row(LinearRow::Rel::Ge, 0.0);
  xr.coeffs[lp.var_x()] = 1.0;
  for (int i = 0; i < l; ++i) xr.coeffs[lp.var_r(i)] = -1.0;
  lp.rows.push_back(std::move(xr));

  LinearRow xc = row(LinearRow::Rel::Ge, 0.0);
  xc.coeffs[lp.var_x()] = 1.0;
  for (int j = 0; j < k; ++j) xc.coeffs[lp.var_c(j)] = -1.0;
  lp.rows.push_back(std::move(xc));

  return m;
}

std::string dump(const MILPModel& m) {
  std::string out = dump(m.lp);
  out += "binary:";
  for (const auto& blk : m.blocks)
    for (int zs : blk.selectors) out += " " + m.lp.var_names[zs];
  out += "\n";
  return out;
}

namespace {

constexpr double kIntTol = 1e-6;

struct Node {
  std::vector<int> fixed;  // per block, -1 when free
  double bound = -std::numeric_limits<double>::infinity();
};

// Secants of a convex arc lie below it outside their own interval, so every
// admissible (height, width) pair satisfies all segment secants at once,
// whichever segment is selected. Imposing them in each relaxation tightens
// node bounds without cutting off any integral solution.
std::vector<LinearRow> envelope_cuts(const MILPModel& m) {
  std::vector<LinearRow> cuts;
  const int n = m.lp.num_variables();
  for (const auto& blk : m.blocks) {
    const double f = blk.knots.front() * blk.knots.back();
    for (size_t s = 0; s + 1 < blk.knots.size(); ++s) {
      LinearRow row;
      row.coeffs.assign(n, 0.0);
      row.rel = LinearRow::Rel::Ge;
      row.coeffs[m.lp.var_r(blk.row)] = 1.0;
      row.coeffs[m.lp.var_c(blk.col)] = blk.knots[s] * blk.knots[s + 1] / f;
      row.rhs = blk.knots[s] + blk.knots[s + 1];
      cuts.push_back(std::move(row));
    }
  }
  return cuts;
}

std::vector<LinearRow> with_fixings(const MILPModel& m, const std::vector<LinearRow>& cuts,
                                    const std::vector<int>& fixed) {
  std::vector<LinearRow> rows = m.lp.rows;
  rows.insert(rows.end(), cuts.begin(), cuts.end());
  const int n = m.lp.num_variables();
  for (size_t t = 0; t < fixed.size(); ++t) {
    if (fixed[t] < 0) continue;
    LinearRow r;
    r.coeffs.assign(n, 0.0);
    r.rel = LinearRow::Rel::Ge;
    r.rhs = 1.0;  // with the box row and the one-active row this pins z
    r.coeffs[m.blocks[t].selectors[fixed[t]]] = 1.0;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

FloorplanSolution solve_milp(const MILPModel& m, double tol, std::int64_t node_limit) {
  auto t0 = std::chrono::steady_clock::now();
  const int nb = static_cast<int>(m.blocks.size());
  std::vector<double> obj(m.lp.num_variables(), 0.0);
  obj[m.lp.objective_var] = 1.0;
  SimplexOptions sopts;
  sopts.tol = tol;
  const std::vector<LinearRow> cuts = envelope_cuts(m);

  auto lp_solve = [&](const std::vector<int>& fixed, std::vector<double>& x_out,
                      double& val) -> bool {
    try {
      SimplexResult res = simplex_minimize(obj, with_fixings(m, cuts, fixed), sopts);
      x_out = std::move(res.x);
      val = res.objective;
      return true;
    } catch (const SolverError&) {
      return false;  // infeasible subtree
    }
  };

  std::int64_t nodes = 0;
  double incumbent = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  double open_low = std::numeric_limits<double>::infinity();

  auto try_incumbent = [&](const std::vector<double>& x, double val) {
    if (!std::isfinite(incumbent) ||
        val < incumbent - 1e-12 * std::max(1.0, std::fabs(incumbent))) {
      incumbent = val;
      best_x = x;
    }
  };
  // prune threshold; +inf until the first incumbent lands
  auto cutoff = [&] {
    return std::isfinite(incumbent)
               ? incumbent - tol * std::max(1.0, std::fabs(incumbent))
               : std::numeric_limits<double>::infinity();
  };

  // Rounding heuristic: pin every free block to the interval holding its
  // relaxed height, then solve the resulting LP.
  auto round_and_solve = [&](const std::vector<int>& fixed, const std::vector<double>& x) {
    std::vector<int> all = fixed;
    for (int t = 0; t < nb; ++t) {
      if (all[t] >= 0) continue;
      const auto& blk = m.blocks[t];
      double r = x[m.lp.var_r(blk.row)];
      int seg = 0;
      while (seg + 1 < m.segments && r > blk.knots[seg + 1]) ++seg;
      all[t] = seg;
    }
    std::vector<double> hx;
    double hv = 0.0;
    ++nodes;
    if (lp_solve(all, hx, hv)) try_incumbent(hx, hv);
  };

  std::vector<Node> stack;
  stack.push_back({std::vector<int>(nb, -1), -std::numeric_limits<double>::infinity()});

  bool complete = true;
  while (!stack.empty()) {
    if (nodes >= node_limit) {
      complete = false;
      for (const auto& nd : stack) open_low = std::min(open_low, nd.bound);
      break;
    }
    Node nd = std::move(stack.back());
    stack.pop_back();
    if (nd.bound >= cutoff()) continue;

    std::vector<double> x;
    double val = 0.0;
    ++nodes;
    if (!lp_solve(nd.fixed, x, val)) continue;
    if (val >= cutoff()) continue;

    // Integrality check; remember the most ambiguous block for branching.
    int branch_blk = -1;
    double worst = 1.0;
    for (int t = 0; t < nb; ++t) {
      if (nd.fixed[t] >= 0) continue;
      double zmax = 0.0;
      for (int zs : m.blocks[t].selectors) zmax = std::max(zmax, x[zs]);
      if (zmax < worst) {
        worst = zmax;
        branch_blk = t;
      }
    }
    if (branch_blk < 0 || worst >= 1.0 - kIntTol) {
      try_incumbent(x, val);
      continue;
    }

    round_and_solve(nd.fixed, x);
    if (val >= cutoff()) continue;

    // Children ordered by descending selector weight, explored LIFO so the
    // heaviest segment is expanded first.
    std::vector<int> order(m.segments);
    std::iota(order.begin(), order.end(), 0);
    const auto& sel = m.blocks[branch_blk].selectors;
    std::stable_sort(order.begin(), order.end(),
                     [&](int sa, int sb) { return x[sel[sa]] < x[sel[sb]]; });
    for (int s : order) {
      Node child;
      child.fixed = nd.fixed;
      child.fixed[branch_blk] = s;
      child.bound = val;
      stack.push_back(std::move(child));
    }
  }

  if (!std::isfinite(incumbent))
    throw SolverError("branch and bound exhausted the node limit without an incumbent");

  FloorplanSolution sol;
  sol.row_heights.resize(m.lp.grid_rows);
  sol.col_widths.resize(m.lp.grid_cols);
  for (int i = 0; i < m.lp.grid_rows; ++i) sol.row_heights[i] = best_x[m.lp.var_r(i)];
  for (int j = 0; j < m.lp.grid_cols; ++j) sol.col_widths[j] = best_x[m.lp.var_c(j)];
  sol.side = best_x[m.lp.var_x()];
  sol.objective_value = incumbent;
  sol.stats.iterations = nodes;
  sol.stats.model_kind = ModelKind::MILP;
  sol.stats.complete = complete;
  sol.stats.gap_bound = complete ? 0.0
                                 : std::max(0.0, incumbent - std::min(open_low, incumbent));
  sol.stats.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

}  // namespace socfp
