#include "socfp/types.hpp"

#include <algorithm>
#include <cmath>

namespace socfp {

AreaMatrix::AreaMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), f_(static_cast<size_t>(rows) * cols, fill) {
  if (rows <= 0 || cols <= 0) throw SchemaError("area matrix dimensions must be positive");
}

AreaMatrix AreaMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows[0].empty()) throw SchemaError("area matrix must be non-empty");
  AreaMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw SchemaError("area matrix rows must have equal length");
    for (size_t j = 0; j < rows[i].size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

double AreaMatrix::total() const {
  double s = 0.0;
  for (double v : f_) s += v;
  return s;
}

double AreaMatrix::max_value() const {
  double m = 0.0;
  for (double v : f_) m = std::max(m, v);
  return m;
}

bool AreaMatrix::all_zero() const {
  return std::all_of(f_.begin(), f_.end(), [](double v) { return v == 0.0; });
}

AreaMatrix AreaMatrix::transposed() const {
  AreaMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

void FloorplanProblem::validate() const {
  if (areas.rows() <= 0 || areas.cols() <= 0) throw SchemaError("empty area matrix");
  for (double v : areas.data()) {
    if (!std::isfinite(v) || v < 0.0) throw SchemaError("area entries must be finite and non-negative");
  }
  if (!std::isfinite(eta) || eta <= 0.0 || eta >= 1.0) throw SchemaError("eta must lie in (0,1)");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::LP: return "lp";
    case ModelKind::MILP: return "milp";
    case ModelKind::SDP: return "sdp";
  }
  return "lp";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "lp") return ModelKind::LP;
  if (s == "milp") return ModelKind::MILP;
  if (s == "sdp") return ModelKind::SDP;
  throw SchemaError("unknown model kind '" + s + "' (expected lp, milp, or sdp)");
}

std::string to_string(TileCoord t) {
  return "(" + std::to_string(t.layer) + "," + std::to_string(t.row) + "," + std::to_string(t.col) + ")";
}

TileGrid::TileGrid(int layers, int rows, int cols)
    : layers_(layers),
      rows_(rows),
      cols_(cols),
      occupied_(static_cast<size_t>(layers) * rows * cols, 0),
      overhead_(static_cast<size_t>(layers) * rows * cols, 0.0) {
  if (layers <= 0 || rows <= 0 || cols <= 0) throw SchemaError("grid dimensions must be positive");
}

TileGrid TileGrid::uniform(int layers, int rows, int cols, double overhead) {
  TileGrid g(layers, rows, cols);
  std::fill(g.occupied_.begin(), g.occupied_.end(), 1);
  std::fill(g.overhead_.begin(), g.overhead_.end(), overhead);
  return g;
}

bool TileGrid::in_bounds(TileCoord t) const {
  return t.layer >= 0 && t.layer < layers_ && t.row >= 0 && t.row < rows_ && t.col >= 0 && t.col < cols_;
}

bool TileGrid::occupied(TileCoord t) const { return in_bounds(t) && occupied_[flat(t)] != 0; }

void TileGrid::set_occupied(TileCoord t, bool on) {
  if (!in_bounds(t)) throw SchemaError("tile " + to_string(t) + " out of bounds");
  occupied_[flat(t)] = on ? 1 : 0;
}

double TileGrid::overhead(TileCoord t) const {
  if (!in_bounds(t)) throw SchemaError("tile " + to_string(t) + " out of bounds");
  return overhead_[flat(t)];
}

void TileGrid::set_overhead(TileCoord t, double v) {
  if (!in_bounds(t)) throw SchemaError("tile " + to_string(t) + " out of bounds");
  overhead_[flat(t)] = v;
}

int TileGrid::tile_count() const {
  int n = 0;
  for (auto b : occupied_) n += b != 0;
  return n;
}

std::vector<TileCoord> TileGrid::tiles() const {
  std::vector<TileCoord> out;
  out.reserve(occupied_.size());
  for (int z = 0; z < layers_; ++z)
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) {
        TileCoord t{z, r, c};
        if (occupied(t)) out.push_back(t);
      }
  return out;
}

void TileGrid::add_vertical_link(TileCoord upper) {
  if (upper.layer < 1) throw SchemaError("vertical link " + to_string(upper) + " has no layer below");
  links_.insert(upper);
}

bool TileGrid::has_vertical_link(TileCoord upper) const { return links_.count(upper) != 0; }

void TileGrid::validate() const {
  for (double v : overhead_) {
    if (!std::isfinite(v) || v < 0.0) throw SchemaError("tile overhead must be finite and non-negative");
  }
  for (const auto& l : links_) {
    TileCoord below{l.layer - 1, l.row, l.col};
    if (!occupied(l) || !occupied(below))
      throw SchemaError("vertical link " + to_string(l) + " must join two occupied tiles");
  }
}

void CoreGraph::add_core(Core c) {
  if (index_.count(c.id)) throw SchemaError("duplicate core id '" + c.id + "'");
  index_[c.id] = static_cast<int>(cores_.size());
  cores_.push_back(std::move(c));
}

void CoreGraph::add_edge(Edge e) { edges_.push_back(std::move(e)); }

bool CoreGraph::has_core(const std::string& id) const { return index_.count(id) != 0; }

const Core& CoreGraph::core(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw SchemaError("unknown core id '" + id + "'");
  return cores_[it->second];
}

void CoreGraph::validate() const {
  if (cores_.empty()) throw SchemaError("core graph has no cores");
  for (const auto& c : cores_) {
    if (c.id.empty()) throw SchemaError("core id must be non-empty");
    if (!std::isfinite(c.area) || c.area < 0.0)
      throw SchemaError("core '" + c.id + "' area must be finite and non-negative");
  }
  for (const auto& e : edges_) {
    if (!has_core(e.src)) throw SchemaError("edge references unknown core '" + e.src + "'");
    if (!has_core(e.dst)) throw SchemaError("edge references unknown core '" + e.dst + "'");
    if (e.src == e.dst) throw SchemaError("edge from core '" + e.src + "' to itself");
    if (!std::isfinite(e.bandwidth) || e.bandwidth < 0.0)
      throw SchemaError("edge " + e.src + "->" + e.dst + " bandwidth must be finite and non-negative");
  }
}

void Mapping::assign(const std::string& core_id, TileCoord t) { at_[core_id] = t; }

bool Mapping::contains(const std::string& core_id) const { return at_.count(core_id) != 0; }

TileCoord Mapping::tile_of(const std::string& core_id) const {
  auto it = at_.find(core_id);
  if (it == at_.end()) throw SchemaError("mapping has no entry for core '" + core_id + "'");
  return it->second;
}

void Mapping::validate(const CoreGraph& graph, const TileGrid& grid) const {
  std::set<TileCoord> used;
  for (const auto& [id, t] : at_) {
    if (!graph.has_core(id)) throw SchemaError("mapping references unknown core '" + id + "'");
    if (!grid.occupied(t)) throw SchemaError("core '" + id + "' mapped to unusable tile " + to_string(t));
    if (!used.insert(t).second) throw SchemaError("tile " + to_string(t) + " hosts more than one core");
  }
  for (const auto& c : graph.cores()) {
    if (!at_.count(c.id)) throw SchemaError("core '" + c.id + "' is unmapped");
  }
}

}  // namespace socfp
