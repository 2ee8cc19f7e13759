#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace socfp {

// Input documents that fail structural validation.
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Solver-level failures: infeasible, unbounded, numerical breakdown.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Required content area per tile position, row-major. 0 means the position
// holds nothing and only its aspect/coupling rows apply.
class AreaMatrix {
public:
  AreaMatrix() = default;
  AreaMatrix(int rows, int cols, double fill = 0.0);
  static AreaMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int i, int j) const { return f_[static_cast<size_t>(i) * cols_ + j]; }
  double& at(int i, int j) { return f_[static_cast<size_t>(i) * cols_ + j]; }

  double total() const;
  double max_value() const;
  bool all_zero() const;
  AreaMatrix transposed() const;

  const std::vector<double>& data() const { return f_; }

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> f_;
};

struct FloorplanProblem {
  AreaMatrix areas;
  double eta = 0.1;  // lower bound on tile aspect ratio, in (0,1)

  void validate() const;  // throws SchemaError
};

enum class ModelKind { LP, MILP, SDP };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

struct SolverStats {
  std::int64_t iterations = 0;   // pivots, nodes, or Newton steps
  double runtime_seconds = 0.0;
  ModelKind model_kind = ModelKind::LP;
  bool complete = true;          // false: iteration/node cap hit, best iterate returned
  double gap_bound = 0.0;        // certified bound on remaining optimality gap
};

struct FloorplanSolution {
  std::vector<double> row_heights;  // one per grid row
  std::vector<double> col_widths;   // one per grid column
  double side = 0.0;                // max(sum rows, sum cols), the minimized square side
  double objective_value = 0.0;
  SolverStats stats;
};

struct TileCoord {
  int layer = 0;
  int row = 0;
  int col = 0;
  auto operator<=>(const TileCoord&) const = default;
};

std::string to_string(TileCoord t);

// Stacked tile grid. Tiles may be absent (unoccupied positions in a layer's
// bounding rectangle); a vertical link at (z,r,c) with z >= 1 connects down
// to (z-1,r,c).
class TileGrid {
public:
  TileGrid() = default;
  // dimensioned but empty; uniform() marks every position occupied
  TileGrid(int layers, int rows, int cols);
  static TileGrid uniform(int layers, int rows, int cols, double overhead = 0.0);

  int layers() const { return layers_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool in_bounds(TileCoord t) const;
  bool occupied(TileCoord t) const;
  void set_occupied(TileCoord t, bool on);
  double overhead(TileCoord t) const;
  void set_overhead(TileCoord t, double v);

  int tile_count() const;                // occupied positions
  std::vector<TileCoord> tiles() const;  // occupied, layer-major then row-major

  void add_vertical_link(TileCoord upper);
  bool has_vertical_link(TileCoord upper) const;
  const std::set<TileCoord>& vertical_links() const { return links_; }

  void validate() const;  // throws SchemaError

private:
  size_t flat(TileCoord t) const {
    return (static_cast<size_t>(t.layer) * rows_ + t.row) * cols_ + t.col;
  }

  int layers_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> occupied_;
  std::vector<double> overhead_;
  std::set<TileCoord> links_;
};

struct Core {
  std::string id;
  double area = 0.0;
};

struct Edge {
  std::string src;
  std::string dst;
  double bandwidth = 0.0;
};

class CoreGraph {
public:
  void add_core(Core c);
  void add_edge(Edge e);

  int size() const { return static_cast<int>(cores_.size()); }
  const std::vector<Core>& cores() const { return cores_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_core(const std::string& id) const;
  const Core& core(const std::string& id) const;

  void validate() const;  // throws SchemaError

private:
  std::vector<Core> cores_;
  std::vector<Edge> edges_;
  std::map<std::string, int> index_;
};

// Assignment of every core to a distinct occupied tile.
class Mapping {
public:
  void assign(const std::string& core_id, TileCoord t);
  bool contains(const std::string& core_id) const;
  TileCoord tile_of(const std::string& core_id) const;
  int size() const { return static_cast<int>(at_.size()); }
  const std::map<std::string, TileCoord>& entries() const { return at_; }

  void validate(const CoreGraph& graph, const TileGrid& grid) const;

private:
  std::map<std::string, TileCoord> at_;
};

}  // namespace socfp
