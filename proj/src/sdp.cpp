#include "socfp/sdp.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

namespace socfp {

SDPModel build_sdp(const FloorplanProblem& p) {
  p.validate();
  SDPModel m;
  m.areas = p.areas;
  m.eta = p.eta;
  for (int i = 0; i < p.areas.rows(); ++i)
    for (int j = 0; j < p.areas.cols(); ++j)
      m.blocks.push_back({i, j, std::sqrt(p.areas.at(i, j))});
  return m;
}

std::string dump(const SDPModel& m) {
  char buf[128];
  std::string out = "minimize x\nsubject to\n";
  int idx = 1;
  for (const auto& b : m.blocks) {
    std::snprintf(buf, sizeof buf, "  X%d = [[r%d, %.12g], [%.12g, c%d]] psd\n", idx, b.row,
                  b.off_diag, b.off_diag, b.col);
    out += buf;
    ++idx;
  }
  for (int i = 0; i < m.areas.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.areas.cols(); ++j)
      s = std::max(s, std::sqrt(m.eta * m.areas.at(i, j)));
    std::snprintf(buf, sizeof buf, "  r%d >= %.12g\n", i, s);
    out += buf;
  }
  for (int j = 0; j < m.areas.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < m.areas.rows(); ++i)
      s = std::max(s, std::sqrt(m.eta * m.areas.at(i, j)));
    std::snprintf(buf, sizeof buf, "  c%d >= %.12g\n", j, s);
    out += buf;
  }
  out += "  ";
  for (int i = 0; i < m.areas.rows(); ++i) out += (i ? " + r" : "r") + std::to_string(i);
  out += " <= x\n  ";
  for (int j = 0; j < m.areas.cols(); ++j) out += (j ? " + c" : "c") + std::to_string(j);
  out += " <= x\n";
  std::snprintf(buf, sizeof buf,
                "counts: inequalities %d, block variables %d, scalar variables %d\n",
                m.reported_inequalities(), m.block_variables(), m.scalar_variables());
  out += buf;
  return out;
}

namespace {

struct Smooth {
  int l = 0, k = 0, n = 0;
  const AreaMatrix* areas = nullptr;
  std::vector<double> r_floor, c_floor;
  std::vector<std::pair<int, int>> products;  // tiles with positive content
  int terms = 0;                              // barrier term count

  int vr(int i) const { return i; }
  int vc(int j) const { return l + j; }
  int vx() const { return l + k; }

  // Active slacks shrink like 1/t while their operands stay O(x), so plain
  // double evaluation cancels away the digits Newton needs near the end.
  // fma makes the product slack single-rounding exact; the sum slacks get
  // extended-precision accumulation.
  double prod_slack(const Eigen::VectorXd& v, int i, int j) const {
    return std::fma(v[vr(i)], v[vc(j)], -areas->at(i, j));
  }
  double row_sum_slack(const Eigen::VectorXd& v) const {
    long double s = v[vx()];
    for (int i = 0; i < l; ++i) s -= v[vr(i)];
    return static_cast<double>(s);
  }
  double col_sum_slack(const Eigen::VectorXd& v) const {
    long double s = v[vx()];
    for (int j = 0; j < k; ++j) s -= v[vc(j)];
    return static_cast<double>(s);
  }

  bool feasible(const Eigen::VectorXd& v) const {
    for (int i = 0; i < l; ++i)
      if (v[vr(i)] <= r_floor[i]) return false;
    for (int j = 0; j < k; ++j)
      if (v[vc(j)] <= c_floor[j]) return false;
    for (auto [i, j] : products)
      if (prod_slack(v, i, j) <= 0.0) return false;
    return row_sum_slack(v) > 0.0 && col_sum_slack(v) > 0.0;
  }

  // f(b) - f(a). The t*x term dwarfs the barrier sum once t is large, so the
  // difference is formed per term (log of slack ratios) to keep the line
  // search resolving decreases far below the absolute value's precision.
  double value_diff(double t, const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    double d = t * (b[vx()] - a[vx()]);
    for (int i = 0; i < l; ++i)
      d -= std::log((b[vr(i)] - r_floor[i]) / (a[vr(i)] - r_floor[i]));
    for (int j = 0; j < k; ++j)
      d -= std::log((b[vc(j)] - c_floor[j]) / (a[vc(j)] - c_floor[j]));
    for (auto [i, j] : products) d -= std::log(prod_slack(b, i, j) / prod_slack(a, i, j));
    d -= std::log(row_sum_slack(b) / row_sum_slack(a));
    d -= std::log(col_sum_slack(b) / col_sum_slack(a));
    return d;
  }

  void derivatives(double t, const Eigen::VectorXd& v, Eigen::VectorXd& g,
                   Eigen::MatrixXd& h) const {
    g.setZero(n);
    h.setZero(n, n);
    g[vx()] += t;
    for (int i = 0; i < l; ++i) {
      double s = v[vr(i)] - r_floor[i];
      g[vr(i)] -= 1.0 / s;
      h(vr(i), vr(i)) += 1.0 / (s * s);
    }
    for (int j = 0; j < k; ++j) {
      double s = v[vc(j)] - c_floor[j];
      g[vc(j)] -= 1.0 / s;
      h(vc(j), vc(j)) += 1.0 / (s * s);
    }
    for (auto [i, j] : products) {
      double r = v[vr(i)], c = v[vc(j)], f = areas->at(i, j);
      double s = prod_slack(v, i, j);
      g[vr(i)] -= c / s;
      g[vc(j)] -= r / s;
      h(vr(i), vr(i)) += c * c / (s * s);
      h(vc(j), vc(j)) += r * r / (s * s);
      h(vr(i), vc(j)) += f / (s * s);
      h(vc(j), vr(i)) += f / (s * s);
    }
    double ur = row_sum_slack(v), uc = col_sum_slack(v);
    g[vx()] -= 1.0 / ur + 1.0 / uc;
    for (int i = 0; i < l; ++i) g[vr(i)] += 1.0 / ur;
    for (int j = 0; j < k; ++j) g[vc(j)] += 1.0 / uc;
    double wr = 1.0 / (ur * ur), wc = 1.0 / (uc * uc);
    for (int i = 0; i < l; ++i) {
      for (int i2 = 0; i2 < l; ++i2) h(vr(i), vr(i2)) += wr;
      h(vr(i), vx()) -= wr;
      h(vx(), vr(i)) -= wr;
    }
    for (int j = 0; j < k; ++j) {
      for (int j2 = 0; j2 < k; ++j2) h(vc(j), vc(j2)) += wc;
      h(vc(j), vx()) -= wc;
      h(vx(), vc(j)) -= wc;
    }
    h(vx(), vx()) += wr + wc;
  }
};

}  // namespace

FloorplanSolution solve_sdp(const SDPModel& m, const BarrierOptions& opts) {
  auto t_start = std::chrono::steady_clock::now();
  const int l = m.areas.rows();
  const int k = m.areas.cols();

  Smooth sm;
  sm.l = l;
  sm.k = k;
  sm.n = l + k + 1;
  sm.areas = &m.areas;
  sm.r_floor.assign(l, 0.0);
  sm.c_floor.assign(k, 0.0);
  double reach = 0.0;
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < k; ++j) {
      double f = m.areas.at(i, j);
      if (f > 0.0) {
        sm.products.push_back({i, j});
        reach = std::max(reach, std::sqrt(f / m.eta));
        double a = std::sqrt(m.eta * f);
        sm.r_floor[i] = std::max(sm.r_floor[i], a);
        sm.c_floor[j] = std::max(sm.c_floor[j], a);
      }
    }
  }
  sm.terms = static_cast<int>(sm.products.size()) + l + k + 2;

  Eigen::VectorXd v(sm.n);
  for (int i = 0; i < l; ++i) v[sm.vr(i)] = reach + 1.0;
  for (int j = 0; j < k; ++j) v[sm.vc(j)] = reach + 1.0;
  v[sm.vx()] = std::max(l, k) * (reach + 1.0) + reach + 1.0;

  Eigen::VectorXd grad(sm.n), step(sm.n);
  Eigen::MatrixXd hess(sm.n, sm.n);

  double t = opts.t0;
  std::int64_t newton_steps = 0;
  bool complete = false;
  double certified_gap = std::numeric_limits<double>::infinity();

  while (true) {
    bool centered = false;
    while (newton_steps < opts.max_newton_steps) {
      sm.derivatives(t, v, grad, hess);
      Eigen::LLT<Eigen::MatrixXd> llt(hess);
      if (llt.info() != Eigen::Success) {
        hess.diagonal().array() += 1e-12 * (1.0 + hess.diagonal().maxCoeff());
        llt.compute(hess);
        if (llt.info() != Eigen::Success) throw SolverError("barrier Hessian factorization failed");
      }
      step = llt.solve(-grad);
      double decrement = -grad.dot(step);  // lambda^2
      if (decrement / 2.0 <= opts.newton_tol) {
        centered = true;
        break;
      }
      double slope = grad.dot(step);
      double alpha = 1.0;
      while (alpha > 1e-18) {
        Eigen::VectorXd cand = v + alpha * step;
        if (sm.feasible(cand) && sm.value_diff(t, v, cand) <= opts.ls_slope * alpha * slope) {
          v = cand;
          break;
        }
        alpha *= opts.ls_backtrack;
      }
      ++newton_steps;
      if (alpha <= 1e-18) break;  // numerically stalled at this stage
    }
    if (!centered) break;
    certified_gap = sm.terms / t;
    if (certified_gap <= opts.tol * std::max(1.0, std::fabs(v[sm.vx()]))) {
      complete = true;
      break;
    }
    t *= opts.t_growth;
  }

  FloorplanSolution sol;
  sol.row_heights.resize(l);
  sol.col_widths.resize(k);
  for (int i = 0; i < l; ++i) sol.row_heights[i] = v[sm.vr(i)];
  for (int j = 0; j < k; ++j) sol.col_widths[j] = v[sm.vc(j)];
  sol.side = v[sm.vx()];
  sol.objective_value = sol.side;
  sol.stats.iterations = newton_steps;
  sol.stats.model_kind = ModelKind::SDP;
  sol.stats.complete = complete;
  sol.stats.gap_bound = certified_gap;
  sol.stats.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return sol;
}

FloorplanSolution solve_sdp(const SDPModel& m, double tol) {
  BarrierOptions opts;
  opts.tol = tol;
  return solve_sdp(m, opts);
}

}  // namespace socfp
