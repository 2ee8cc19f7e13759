#include "socfp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace socfp {

namespace {

constexpr double kPivotEps = 1e-11;

struct Tableau {
  int m = 0;           // rows
  int cols = 0;        // columns excluding rhs
  int art_start = 0;   // first artificial column
  std::vector<std::vector<double>> t;  // m rows of cols+1 (rhs last)
  std::vector<double> d;               // reduced costs, cols+1 (last = -objective)
  std::vector<int> basis;              // basic column per row

  double rhs(int i) const { return t[i][cols]; }
  double obj() const { return -d[cols]; }

  void pivot(int p, int q) {
    double piv = t[p][q];
    for (double& v : t[p]) v /= piv;
    t[p][q] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == p) continue;
      double f = t[i][q];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[p][j];
      t[i][q] = 0.0;
    }
    double f = d[q];
    if (f != 0.0) {
      for (int j = 0; j <= cols; ++j) d[j] -= f * t[p][j];
      d[q] = 0.0;
    }
    basis[p] = q;
  }
};

// Returns pivots performed. limit: columns >= limit never enter.
std::int64_t optimize(Tableau& tb, int enter_limit, double tol, std::int64_t max_pivots,
                      bool allow_unbounded) {
  std::int64_t pivots = 0;
  bool bland = false;
  int stalled = 0;
  double last_obj = tb.obj();
  while (true) {
    int q = -1;
    if (bland) {
      for (int j = 0; j < enter_limit; ++j) {
        if (tb.d[j] < -tol) {
          q = j;
          break;
        }
      }
    } else {
      double best = -tol;
      for (int j = 0; j < enter_limit; ++j) {
        if (tb.d[j] < best) {
          best = tb.d[j];
          q = j;
        }
      }
    }
    if (q < 0) return pivots;

    int p = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tb.m; ++i) {
      double a = tb.t[i][q];
      if (a <= kPivotEps) continue;
      double ratio = tb.rhs(i) / a;
      if (ratio < best_ratio - kPivotEps ||
          (ratio < best_ratio + kPivotEps && (p < 0 || tb.basis[i] < tb.basis[p]))) {
        best_ratio = ratio;
        p = i;
      }
    }
    if (p < 0) {
      if (allow_unbounded) throw SolverError("lp is unbounded");
      throw SolverError("simplex lost feasibility (no ratio-test row)");
    }

    tb.pivot(p, q);
    ++pivots;
    if (pivots > max_pivots) throw SolverError("simplex pivot limit exceeded");

    double cur = tb.obj();
    if (cur > last_obj - tol * std::max(1.0, std::fabs(last_obj))) {
      if (++stalled >= 64) bland = true;
    } else {
      stalled = 0;
      last_obj = cur;
    }
  }
}

}  // namespace

SimplexResult simplex_minimize(const std::vector<double>& objective,
                               const std::vector<LinearRow>& rows, const SimplexOptions& opts) {
  const int n = static_cast<int>(objective.size());
  const int m = static_cast<int>(rows.size());

  // Normalize to rhs >= 0 and count slack/artificial columns.
  std::vector<std::vector<double>> a(m);
  std::vector<double> b(m);
  std::vector<LinearRow::Rel> rel(m);
  int n_slack = 0;
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].coeffs.size()) != n)
      throw SolverError("row width does not match variable count");
    a[i] = rows[i].coeffs;
    b[i] = rows[i].rhs;
    rel[i] = rows[i].rel;
    if (b[i] < 0.0) {
      for (double& v : a[i]) v = -v;
      b[i] = -b[i];
      if (rel[i] == LinearRow::Rel::Ge)
        rel[i] = LinearRow::Rel::Le;
      else if (rel[i] == LinearRow::Rel::Le)
        rel[i] = LinearRow::Rel::Ge;
    }
    if (rel[i] != LinearRow::Rel::Eq) ++n_slack;
    if (rel[i] != LinearRow::Rel::Le) ++n_art;
  }

  Tableau tb;
  tb.m = m;
  tb.art_start = n + n_slack;
  tb.cols = n + n_slack + n_art;
  tb.t.assign(m, std::vector<double>(tb.cols + 1, 0.0));
  tb.basis.assign(m, -1);

  int slack_at = n;
  int art_at = tb.art_start;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tb.t[i][j] = a[i][j];
    tb.t[i][tb.cols] = b[i];
    switch (rel[i]) {
      case LinearRow::Rel::Le:
        tb.t[i][slack_at] = 1.0;
        tb.basis[i] = slack_at++;
        break;
      case LinearRow::Rel::Ge:
        tb.t[i][slack_at++] = -1.0;
        tb.t[i][art_at] = 1.0;
        tb.basis[i] = art_at++;
        break;
      case LinearRow::Rel::Eq:
        tb.t[i][art_at] = 1.0;
        tb.basis[i] = art_at++;
        break;
    }
  }

  std::int64_t pivots = 0;
  double rhs_scale = 1.0;
  for (int i = 0; i < m; ++i) rhs_scale = std::max(rhs_scale, b[i]);

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials.
    tb.d.assign(tb.cols + 1, 0.0);
    for (int j = tb.art_start; j < tb.cols; ++j) tb.d[j] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (tb.basis[i] >= tb.art_start) {
        for (int j = 0; j <= tb.cols; ++j) tb.d[j] -= tb.t[i][j];
      }
    }
    pivots += optimize(tb, tb.cols, opts.tol, opts.max_pivots, false);
    if (tb.obj() > opts.tol * rhs_scale * 1e3) throw SolverError("lp is infeasible");

    // Drive remaining artificials out of the basis; drop redundant rows.
    for (int i = tb.m - 1; i >= 0; --i) {
      if (tb.basis[i] < tb.art_start) continue;
      int q = -1;
      for (int j = 0; j < tb.art_start; ++j) {
        if (std::fabs(tb.t[i][j]) > 1e-9) {
          q = j;
          break;
        }
      }
      if (q >= 0) {
        tb.pivot(i, q);
      } else {
        tb.t.erase(tb.t.begin() + i);
        tb.basis.erase(tb.basis.begin() + i);
        --tb.m;
      }
    }
  }

  // Phase 2 objective over structural and slack columns.
  std::vector<double> cost(tb.cols, 0.0);
  for (int j = 0; j < n; ++j) cost[j] = objective[j];
  tb.d.assign(tb.cols + 1, 0.0);
  for (int j = 0; j < tb.cols; ++j) tb.d[j] = cost[j];
  for (int i = 0; i < tb.m; ++i) {
    double cb = cost[tb.basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j <= tb.cols; ++j) tb.d[j] -= cb * tb.t[i][j];
  }
  pivots += optimize(tb, tb.art_start, opts.tol, opts.max_pivots, true);

  SimplexResult res;
  res.x.assign(n, 0.0);
  for (int i = 0; i < tb.m; ++i) {
    if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.rhs(i);
  }
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += objective[j] * res.x[j];
  res.pivots = pivots;
  return res;
}

}  // namespace socfp
