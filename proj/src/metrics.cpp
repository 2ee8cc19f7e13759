#include "socfp/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <utility>

namespace socfp {

AreaMatrix area_matrix_from_mapping(const CoreGraph& graph, const TileGrid& grid,
                                    const Mapping& mapping, int layer) {
  if (layer < 0 || layer >= grid.layers()) throw SchemaError("layer index out of range");
  AreaMatrix m(grid.rows(), grid.cols(), 0.0);
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      TileCoord t{layer, r, c};
      if (grid.occupied(t)) m.at(r, c) = grid.overhead(t);
    }
  for (const auto& c : graph.cores()) {
    TileCoord t = mapping.tile_of(c.id);
    if (t.layer != layer) continue;
    m.at(t.row, t.col) += c.area;
  }
  return m;
}

BoundingMetrics bounding_metrics(const FloorplanSolution& sol, const AreaMatrix& areas) {
  BoundingMetrics bm;
  double sr = std::accumulate(sol.row_heights.begin(), sol.row_heights.end(), 0.0);
  double sc = std::accumulate(sol.col_widths.begin(), sol.col_widths.end(), 0.0);
  bm.side = std::max(sr, sc);
  bm.bounding_area = sr * sc;
  bm.content = areas.total();
  bm.whitespace = bm.bounding_area - bm.content;
  bm.whitespace_ratio = bm.bounding_area > 0.0 ? bm.whitespace / bm.bounding_area : 0.0;
  return bm;
}

int hop_distance(TileCoord a, TileCoord b) {
  return std::abs(a.layer - b.layer) + std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

double comm_cost(const CoreGraph& graph, const Mapping& mapping) {
  double total = 0.0;
  for (const auto& e : graph.edges()) {
    total += e.bandwidth * hop_distance(mapping.tile_of(e.src), mapping.tile_of(e.dst));
  }
  return total;
}

double max_link_load(const CoreGraph& graph, const Mapping& mapping) {
  std::map<std::pair<TileCoord, TileCoord>, double> load;  // directed links
  auto add = [&](TileCoord a, TileCoord b, double bw) { load[{a, b}] += bw; };
  for (const auto& e : graph.edges()) {
    if (e.bandwidth == 0.0) continue;
    TileCoord at = mapping.tile_of(e.src);
    TileCoord bt = mapping.tile_of(e.dst);
    TileCoord cur = at;
    while (cur.col != bt.col) {
      TileCoord next = cur;
      next.col += bt.col > cur.col ? 1 : -1;
      add(cur, next, e.bandwidth);
      cur = next;
    }
    while (cur.row != bt.row) {
      TileCoord next = cur;
      next.row += bt.row > cur.row ? 1 : -1;
      add(cur, next, e.bandwidth);
      cur = next;
    }
    while (cur.layer != bt.layer) {
      TileCoord next = cur;
      next.layer += bt.layer > cur.layer ? 1 : -1;
      add(cur, next, e.bandwidth);
      cur = next;
    }
  }
  double best = 0.0;
  for (const auto& [k, v] : load) best = std::max(best, v);
  return best;
}

}  // namespace socfp
