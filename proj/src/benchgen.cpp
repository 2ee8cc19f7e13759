#include "socfp/benchgen.hpp"

#include <cmath>

namespace socfp {

void SoCSpec::validate() const {
  if (layers.empty()) throw SchemaError("soc spec has no layers");
  for (const auto& ls : layers) {
    if (ls.rows <= 0 || ls.cols <= 0 ||
        ls.occupied.size() != static_cast<size_t>(ls.rows) * ls.cols)
      throw SchemaError("soc layer shape is malformed");
  }
  if (core_area < 0.0 || router_area_per_port < 0.0 || tsv_area < 0.0)
    throw SchemaError("soc areas must be non-negative");
  if (eta <= 0.0 || eta >= 1.0) throw SchemaError("eta must lie in (0,1)");
  for (const auto& v : vertical_links) {
    if (v.layer < 1 || !occupied(v) || !occupied({v.layer - 1, v.row, v.col}))
      throw SchemaError("vertical link " + to_string(v) + " must join two occupied tiles");
  }
}

int port_count(const SoCSpec& spec, TileCoord t) {
  if (!spec.occupied(t)) throw SchemaError("tile " + to_string(t) + " is not part of the soc");
  int ports = 1;  // local
  const auto& ls = spec.layers[t.layer];
  ports += ls.at(t.row - 1, t.col);
  ports += ls.at(t.row + 1, t.col);
  ports += ls.at(t.row, t.col - 1);
  ports += ls.at(t.row, t.col + 1);
  ports += spec.vertical_links.count(t) != 0;                                // down
  ports += spec.vertical_links.count({t.layer + 1, t.row, t.col}) != 0;      // up
  return ports;
}

double tile_overhead(const SoCSpec& spec, TileCoord t) {
  double area = spec.router_area_per_port * port_count(spec, t);
  bool linked = spec.vertical_links.count(t) != 0 ||
                spec.vertical_links.count({t.layer + 1, t.row, t.col}) != 0;
  if (linked && t.layer != spec.tsv_free_layer()) area += spec.tsv_area;
  return area;
}

namespace {

SoCSpec::LayerShape full_mesh(int rows, int cols) {
  SoCSpec::LayerShape ls;
  ls.rows = rows;
  ls.cols = cols;
  ls.occupied.assign(static_cast<size_t>(rows) * cols, 1);
  return ls;
}

Benchmark stacked_mesh(const std::string& name, int layers, int rows, int cols) {
  Benchmark b;
  b.name = name;
  for (int z = 0; z < layers; ++z) b.spec.layers.push_back(full_mesh(rows, cols));
  for (int z = 1; z < layers; ++z)
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) b.spec.vertical_links.insert({z, r, c});
  return b;
}

void fill_areas(Benchmark& b) {
  for (int z = 0; z < static_cast<int>(b.spec.layers.size()); ++z) {
    const auto& ls = b.spec.layers[z];
    AreaMatrix m(ls.rows, ls.cols, 0.0);
    for (int r = 0; r < ls.rows; ++r)
      for (int c = 0; c < ls.cols; ++c) {
        TileCoord t{z, r, c};
        if (b.spec.occupied(t)) m.at(r, c) = b.spec.core_area + tile_overhead(b.spec, t);
      }
    b.layer_areas.push_back(std::move(m));
  }
}

}  // namespace

Benchmark gen_benchmark(int n) {
  Benchmark b;
  switch (n) {
    case 1: {
      b.name = "5pe";
      SoCSpec::LayerShape a;
      a.rows = 2;
      a.cols = 2;
      a.occupied = {1, 1, 1, 0};
      b.spec.layers.push_back(a);
      b.spec.layers.push_back(full_mesh(1, 2));
      b.spec.vertical_links.insert({1, 0, 0});
      b.spec.vertical_links.insert({1, 0, 1});
      break;
    }
    case 2:
      b = stacked_mesh("40pe", 4, 2, 5);
      break;
    case 3:
      b = stacked_mesh("80pe", 4, 4, 5);
      break;
    default:
      throw SchemaError("benchmark index must be 1, 2, or 3");
  }
  b.spec.validate();
  fill_areas(b);
  return b;
}

TileGrid to_tile_grid(const SoCSpec& spec) {
  spec.validate();
  int rows = 0, cols = 0;
  for (const auto& ls : spec.layers) {
    rows = std::max(rows, ls.rows);
    cols = std::max(cols, ls.cols);
  }
  TileGrid g(static_cast<int>(spec.layers.size()), rows, cols);
  for (int z = 0; z < g.layers(); ++z)
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        TileCoord t{z, r, c};
        if (spec.occupied(t)) {
          g.set_occupied(t, true);
          g.set_overhead(t, tile_overhead(spec, t));
        }
      }
  for (const auto& v : spec.vertical_links) g.add_vertical_link(v);
  g.validate();
  return g;
}

}  // namespace socfp
