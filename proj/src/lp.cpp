#include "socfp/lp.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "socfp/simplex.hpp"

namespace socfp {

double chord_rhs(double content, double eta) {
  if (content <= 0.0) return 0.0;
  return std::sqrt(content * eta) + std::sqrt(content / eta);
}

LPModel build_lp(const FloorplanProblem& p) {
  p.validate();
  const int l = p.areas.rows();
  const int k = p.areas.cols();
  LPModel m;
  m.grid_rows = l;
  m.grid_cols = k;
  for (int i = 0; i < l; ++i) m.var_names.push_back("r" + std::to_string(i));
  for (int j = 0; j < k; ++j) m.var_names.push_back("c" + std::to_string(j));
  m.var_names.push_back("x");
  m.objective_var = m.var_x();

  const int n = m.num_variables();
  auto row = [&](LinearRow::Rel rel, double rhs) {
    LinearRow r;
    r.coeffs.assign(n, 0.0);
    r.rel = rel;
    r.rhs = rhs;
    return r;
  };

  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < k; ++j) {
      LinearRow a = row(LinearRow::Rel::Ge, 0.0);  // r_i >= eta * c_j
      a.coeffs[m.var_r(i)] = 1.0;
      a.coeffs[m.var_c(j)] = -p.eta;
      m.rows.push_back(std::move(a));

      LinearRow b = row(LinearRow::Rel::Ge, 0.0);  // c_j >= eta * r_i
      b.coeffs[m.var_c(j)] = 1.0;
      b.coeffs[m.var_r(i)] = -p.eta;
      m.rows.push_back(std::move(b));

      LinearRow s = row(LinearRow::Rel::Ge, chord_rhs(p.areas.at(i, j), p.eta));
      s.coeffs[m.var_r(i)] = 1.0;
      s.coeffs[m.var_c(j)] = 1.0;
      m.rows.push_back(std::move(s));
    }
  }

  LinearRow xr = row(LinearRow::Rel::Ge, 0.0);  // x >= sum of row heights
  xr.coeffs[m.var_x()] = 1.0;
  for (int i = 0; i < l; ++i) xr.coeffs[m.var_r(i)] = -1.0;
  m.rows.push_back(std::move(xr));

  LinearRow xc = row(LinearRow::Rel::Ge, 0.0);  // x >= sum of column widths
  xc.coeffs[m.var_x()] = 1.0;
  for (int j = 0; j < k; ++j) xc.coeffs[m.var_c(j)] = -1.0;
  m.rows.push_back(std::move(xc));

  return m;
}

static void append_term(std::string& out, bool& first, double coef, const std::string& name) {
  if (coef == 0.0) return;
  char buf[64];
  if (first) {
    if (coef == 1.0)
      out += name;
    else if (coef == -1.0)
      out += "-" + name;
    else {
      std::snprintf(buf, sizeof buf, "%.12g ", coef);
      out += buf;
      out += name;
    }
    first = false;
    return;
  }
  double a = std::fabs(coef);
  out += coef < 0.0 ? " - " : " + ";
  if (a != 1.0) {
    std::snprintf(buf, sizeof buf, "%.12g ", a);
    out += buf;
  }
  out += name;
}

std::string dump(const LPModel& m) {
  std::string out = "minimize " + m.var_names[m.objective_var] + "\nsubject to\n";
  char buf[64];
  for (const auto& r : m.rows) {
    out += "  ";
    bool first = true;
    for (int v = 0; v < m.num_variables(); ++v) append_term(out, first, r.coeffs[v], m.var_names[v]);
    if (first) out += "0";
    switch (r.rel) {
      case LinearRow::Rel::Ge: out += " >= "; break;
      case LinearRow::Rel::Le: out += " <= "; break;
      case LinearRow::Rel::Eq: out += " = "; break;
    }
    std::snprintf(buf, sizeof buf, "%.12g", r.rhs);
    out += buf;
    out += "\n";
  }
  out += "all variables >= 0\n";
  return out;
}

FloorplanSolution solve_lp(const LPModel& m, double tol) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> obj(m.num_variables(), 0.0);
  obj[m.objective_var] = 1.0;
  SimplexOptions opts;
  opts.tol = tol;
  SimplexResult res = simplex_minimize(obj, m.rows, opts);

  FloorplanSolution sol;
  sol.row_heights.resize(m.grid_rows);
  sol.col_widths.resize(m.grid_cols);
  for (int i = 0; i < m.grid_rows; ++i) sol.row_heights[i] = res.x[m.var_r(i)];
  for (int j = 0; j < m.grid_cols; ++j) sol.col_widths[j] = res.x[m.var_c(j)];
  sol.side = res.x[m.var_x()];
  sol.objective_value = res.objective;
  sol.stats.iterations = res.pivots;
  sol.stats.model_kind = ModelKind::LP;
  sol.stats.complete = true;
  sol.stats.gap_bound = 0.0;
  sol.stats.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

}  // namespace socfp
