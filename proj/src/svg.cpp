#include "socfp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace socfp {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_floorplan_svg(const FloorplanSolution& sol, const AreaMatrix& areas,
                                 double eta) {
  const int l = areas.rows();
  const int k = areas.cols();
  if (static_cast<int>(sol.row_heights.size()) != l ||
      static_cast<int>(sol.col_widths.size()) != k)
    throw SchemaError("solution dimensions do not match the area matrix");

  double width = std::accumulate(sol.col_widths.begin(), sol.col_widths.end(), 0.0);
  double height = std::accumulate(sol.row_heights.begin(), sol.row_heights.end(), 0.0);
  double pad = 0.02 * std::max({width, height, 1.0});
  double stroke = 0.15 * pad;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
         fmt(-pad) + " " + fmt(-pad) + " " + fmt(width + 2 * pad) + " " +
         fmt(height + 2 * pad) + "\">\n";

  double y = 0.0;
  for (int i = 0; i < l; ++i) {
    double x = 0.0;
    double r = sol.row_heights[i];
    for (int j = 0; j < k; ++j) {
      double c = sol.col_widths[j];
      out += "  <rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(c) +
             "\" height=\"" + fmt(r) + "\" fill=\"#d8d8d8\" stroke=\"#707070\" stroke-width=\"" +
             fmt(stroke) + "\"/>\n";
      double f = areas.at(i, j);
      if (f > 0.0 && r > 0.0 && c > 0.0) {
        // squarest content rectangle that fits the tile and keeps area f
        double lo = f / c;
        double h = lo <= r ? std::clamp(std::sqrt(f), lo, r) : r;
        double w = std::min(f / h, c);
        (void)eta;  // feasible tiles keep h*h/f within [eta, 1/eta] by the model bounds
        out += "  <rect x=\"" + fmt(x + (c - w) / 2) + "\" y=\"" + fmt(y + (r - h) / 2) +
               "\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
               "\" fill=\"#f08c28\" stroke=\"none\"/>\n";
      }
      x += c;
    }
    y += r;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace socfp
