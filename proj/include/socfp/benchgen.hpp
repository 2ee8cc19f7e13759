#pragma once

#include "socfp/types.hpp"

namespace socfp {

// Stacked-mesh SoC description used to derive per-tile content areas.
// Routers grow linearly with port count; tiles carrying a vertical link pay
// a TSV pad except in the TSV-free boundary layer.
struct SoCSpec {
  struct LayerShape {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> occupied;  // row-major, 1 = tile present

    bool at(int r, int c) const {
      return r >= 0 && r < rows && c >= 0 && c < cols &&
             occupied[static_cast<size_t>(r) * cols + c] != 0;
    }
  };

  enum class LowestLayer { First, Last };

  std::vector<LayerShape> layers;
  double core_area = 10.0;
  double router_area_per_port = 0.2;
  double tsv_area = 2.0;
  double eta = 0.1;
  LowestLayer lowest_layer = LowestLayer::Last;
  std::set<TileCoord> vertical_links;  // upper endpoint (layer >= 1), joins layer-1

  int tsv_free_layer() const {
    return lowest_layer == LowestLayer::First ? 0 : static_cast<int>(layers.size()) - 1;
  }
  bool occupied(TileCoord t) const {
    return t.layer >= 0 && t.layer < static_cast<int>(layers.size()) &&
           layers[t.layer].at(t.row, t.col);
  }

  void validate() const;
};

// 1 local port + occupied in-layer mesh neighbors + incident vertical links.
int port_count(const SoCSpec& spec, TileCoord t);

// router_area_per_port * ports, plus tsv_area when the tile carries a
// vertical link outside the TSV-free layer.
double tile_overhead(const SoCSpec& spec, TileCoord t);

struct Benchmark {
  std::string name;
  SoCSpec spec;
  std::vector<AreaMatrix> layer_areas;  // occupied tiles: core + overhead
};

// 1: two layers, 3 tiles on a 2x2 grid plus a 1x2 layer, two vertical links.
// 2: four 2x5 full-mesh layers, vertical links at every tile.
// 3: four 4x5 full-mesh layers, vertical links at every tile.
Benchmark gen_benchmark(int n);

TileGrid to_tile_grid(const SoCSpec& spec);

}  // namespace socfp
