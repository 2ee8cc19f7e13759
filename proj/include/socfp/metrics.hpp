#pragma once

#include "socfp/types.hpp"

namespace socfp {

// Per-tile content for one layer of a mapping: mapped core area plus the
// tile's router/TSV overhead, 0 for empty positions.
AreaMatrix area_matrix_from_mapping(const CoreGraph& graph, const TileGrid& grid,
                                    const Mapping& mapping, int layer);

struct BoundingMetrics {
  double side = 0.0;           // max(sum of row heights, sum of column widths)
  double bounding_area = 0.0;  // (sum of row heights) * (sum of column widths)
  double content = 0.0;
  double whitespace = 0.0;
  double whitespace_ratio = 0.0;  // whitespace / bounding_area, 0 when degenerate
};

BoundingMetrics bounding_metrics(const FloorplanSolution& sol, const AreaMatrix& areas);

// Manhattan distance in (layer, row, col).
int hop_distance(TileCoord a, TileCoord b);

// Sum over edges of bandwidth * hop distance between the mapped tiles.
double comm_cost(const CoreGraph& graph, const Mapping& mapping);

// Busiest directed mesh link under deterministic dimension-order routing
// (columns, then rows, then layers).
double max_link_load(const CoreGraph& graph, const Mapping& mapping);

}  // namespace socfp
