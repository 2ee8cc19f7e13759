#include "socfp/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"

namespace socfp {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key + ": missing");
  return *it;
}

const json* opt_member(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double num(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path + ": expected a finite number");
  return v;
}

double nonneg(const json& j, const std::string& path) {
  double v = num(j, path);
  if (v < 0.0) throw SchemaError(path + ": expected a non-negative number");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path + ": expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path + ": expected a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  return j;
}

void check_type(const json& j, const char* expected) {
  if (const json* t = opt_member(j, "type")) {
    if (!t->is_string() || t->get<std::string>() != expected)
      throw SchemaError(std::string("$.type: expected \"") + expected + "\"");
  }
}

// 17 significant digits round-trip any double exactly.
std::string fnum(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += "\"";
  return out;
}

}  // namespace

FloorplanProblem load_problem(const std::string& content) {
  json j = parse(content);
  check_type(j, "fmatrix");
  const json& rows = array(member(j, "areas", "$"), "$.areas");
  if (rows.empty()) throw SchemaError("$.areas: must be non-empty");
  std::vector<std::vector<double>> values;
  size_t width = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    std::string rpath = "$.areas[" + std::to_string(i) + "]";
    const json& row = array(rows[i], rpath);
    if (i == 0) {
      width = row.size();
      if (width == 0) throw SchemaError(rpath + ": must be non-empty");
    } else if (row.size() != width) {
      throw SchemaError(rpath + ": rows must have equal length");
    }
    std::vector<double> out;
    for (size_t c = 0; c < row.size(); ++c)
      out.push_back(nonneg(row[c], rpath + "[" + std::to_string(c) + "]"));
    values.push_back(std::move(out));
  }
  FloorplanProblem p;
  p.areas = AreaMatrix::from_rows(values);
  if (const json* eta = opt_member(j, "eta")) {
    p.eta = num(*eta, "$.eta");
    if (p.eta <= 0.0 || p.eta >= 1.0) throw SchemaError("$.eta: must lie in (0,1)");
  }
  return p;
}

CoreGraph load_coregraph(const std::string& content) {
  json j = parse(content);
  check_type(j, "coregraph");
  CoreGraph g;
  const json& cores = array(member(j, "cores", "$"), "$.cores");
  if (cores.empty()) throw SchemaError("$.cores: must be non-empty");
  for (size_t i = 0; i < cores.size(); ++i) {
    std::string path = "$.cores[" + std::to_string(i) + "]";
    Core c;
    c.id = text(member(cores[i], "id", path), path + ".id");
    if (c.id.empty()) throw SchemaError(path + ".id: must be non-empty");
    c.area = nonneg(member(cores[i], "area", path), path + ".area");
    if (g.has_core(c.id)) throw SchemaError(path + ".id: duplicate core id '" + c.id + "'");
    g.add_core(std::move(c));
  }
  if (const json* edges = opt_member(j, "edges")) {
    const json& es = array(*edges, "$.edges");
    for (size_t i = 0; i < es.size(); ++i) {
      std::string path = "$.edges[" + std::to_string(i) + "]";
      Edge e;
      e.src = text(member(es[i], "src", path), path + ".src");
      e.dst = text(member(es[i], "dst", path), path + ".dst");
      e.bandwidth = nonneg(member(es[i], "bandwidth", path), path + ".bandwidth");
      if (!g.has_core(e.src)) throw SchemaError(path + ".src: unknown core '" + e.src + "'");
      if (!g.has_core(e.dst)) throw SchemaError(path + ".dst: unknown core '" + e.dst + "'");
      if (e.src == e.dst) throw SchemaError(path + ": edge endpoints must differ");
      g.add_edge(std::move(e));
    }
  }
  g.validate();
  return g;
}

TileGrid load_grid(const std::string& content) {
  json j = parse(content);
  check_type(j, "grid");
  int layers = integer(member(j, "layers", "$"), "$.layers");
  int rows = integer(member(j, "rows", "$"), "$.rows");
  int cols = integer(member(j, "cols", "$"), "$.cols");
  if (layers <= 0 || rows <= 0 || cols <= 0)
    throw SchemaError("$: layers, rows, and cols must be positive");
  TileGrid g(layers, rows, cols);
  const json& tiles = array(member(j, "tiles", "$"), "$.tiles");
  if (tiles.empty()) throw SchemaError("$.tiles: must be non-empty");
  for (size_t i = 0; i < tiles.size(); ++i) {
    std::string path = "$.tiles[" + std::to_string(i) + "]";
    TileCoord t;
    t.layer = integer(member(tiles[i], "layer", path), path + ".layer");
    t.row = integer(member(tiles[i], "row", path), path + ".row");
    t.col = integer(member(tiles[i], "col", path), path + ".col");
    if (!g.in_bounds(t)) throw SchemaError(path + ": tile " + to_string(t) + " out of bounds");
    if (g.occupied(t)) throw SchemaError(path + ": duplicate tile " + to_string(t));
    g.set_occupied(t, true);
    if (const json* ov = opt_member(tiles[i], "overhead"))
      g.set_overhead(t, nonneg(*ov, path + ".overhead"));
  }
  if (const json* links = opt_member(j, "vertical_links")) {
    const json& ls = array(*links, "$.vertical_links");
    for (size_t i = 0; i < ls.size(); ++i) {
      std::string path = "$.vertical_links[" + std::to_string(i) + "]";
      TileCoord t;
      t.layer = integer(member(ls[i], "layer", path), path + ".layer");
      t.row = integer(member(ls[i], "row", path), path + ".row");
      t.col = integer(member(ls[i], "col", path), path + ".col");
      if (t.layer < 1 || !g.in_bounds(t))
        throw SchemaError(path + ": link " + to_string(t) + " has no layer below");
      g.add_vertical_link(t);
    }
  }
  try {
    g.validate();
  } catch (const SchemaError& e) {
    throw SchemaError(std::string("$: ") + e.what());
  }
  return g;
}

Mapping load_mapping(const std::string& content) {
  json j = parse(content);
  check_type(j, "mapping");
  Mapping m;
  const json& as = array(member(j, "assignments", "$"), "$.assignments");
  for (size_t i = 0; i < as.size(); ++i) {
    std::string path = "$.assignments[" + std::to_string(i) + "]";
    std::string core = text(member(as[i], "core", path), path + ".core");
    if (core.empty()) throw SchemaError(path + ".core: must be non-empty");
    if (m.contains(core)) throw SchemaError(path + ".core: duplicate entry for '" + core + "'");
    TileCoord t;
    t.layer = integer(member(as[i], "layer", path), path + ".layer");
    t.row = integer(member(as[i], "row", path), path + ".row");
    t.col = integer(member(as[i], "col", path), path + ".col");
    m.assign(core, t);
  }
  return m;
}

ReferenceTable load_reference(const std::string& content) {
  json j = parse(content);
  check_type(j, "reference");
  ReferenceTable r;
  if (const json* name = opt_member(j, "name")) r.name = text(*name, "$.name");
  const json& metrics = member(j, "metrics", "$");
  if (!metrics.is_object()) throw SchemaError("$.metrics: expected an object");
  for (auto it = metrics.begin(); it != metrics.end(); ++it)
    r.metrics[it.key()] = num(it.value(), "$.metrics." + it.key());
  if (r.metrics.empty()) throw SchemaError("$.metrics: must be non-empty");
  return r;
}

std::string save_problem(const FloorplanProblem& p) {
  std::string out = "{\n  \"type\": \"fmatrix\",\n  \"eta\": " + fnum(p.eta) +
                    ",\n  \"areas\": [\n";
  for (int i = 0; i < p.areas.rows(); ++i) {
    out += "    [";
    for (int j = 0; j < p.areas.cols(); ++j) {
      if (j) out += ", ";
      out += fnum(p.areas.at(i, j));
    }
    out += i + 1 < p.areas.rows() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string save_coregraph(const CoreGraph& g) {
  std::string out = "{\n  \"type\": \"coregraph\",\n  \"cores\": [\n";
  const auto& cores = g.cores();
  for (size_t i = 0; i < cores.size(); ++i) {
    out += "    {\"id\": " + escape(cores[i].id) + ", \"area\": " + fnum(cores[i].area) + "}";
    out += i + 1 < cores.size() ? ",\n" : "\n";
  }
  out += "  ],\n  \"edges\": [\n";
  const auto& edges = g.edges();
  for (size_t i = 0; i < edges.size(); ++i) {
    out += "    {\"src\": " + escape(edges[i].src) + ", \"dst\": " + escape(edges[i].dst) +
           ", \"bandwidth\": " + fnum(edges[i].bandwidth) + "}";
    out += i + 1 < edges.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string save_grid(const TileGrid& g) {
  std::string out = "{\n  \"type\": \"grid\",\n  \"layers\": " + std::to_string(g.layers()) +
                    ",\n  \"rows\": " + std::to_string(g.rows()) +
                    ",\n  \"cols\": " + std::to_string(g.cols()) + ",\n  \"tiles\": [\n";
  std::vector<TileCoord> tiles = g.tiles();
  for (size_t i = 0; i < tiles.size(); ++i) {
    const TileCoord& t = tiles[i];
    out += "    {\"layer\": " + std::to_string(t.layer) + ", \"row\": " + std::to_string(t.row) +
           ", \"col\": " + std::to_string(t.col) + ", \"overhead\": " + fnum(g.overhead(t)) + "}";
    out += i + 1 < tiles.size() ? ",\n" : "\n";
  }
  out += "  ],\n  \"vertical_links\": [\n";
  const auto& links = g.vertical_links();
  size_t i = 0;
  for (const auto& t : links) {
    out += "    {\"layer\": " + std::to_string(t.layer) + ", \"row\": " + std::to_string(t.row) +
           ", \"col\": " + std::to_string(t.col) + "}";
    out += ++i < links.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string save_mapping(const Mapping& m) {
  std::string out = "{\n  \"type\": \"mapping\",\n  \"assignments\": [\n";
  const auto& entries = m.entries();
  size_t i = 0;
  for (const auto& [core, t] : entries) {
    out += "    {\"core\": " + escape(core) + ", \"layer\": " + std::to_string(t.layer) +
           ", \"row\": " + std::to_string(t.row) + ", \"col\": " + std::to_string(t.col) + "}";
    out += ++i < entries.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string save_reference(const ReferenceTable& r) {
  std::string out = "{\n  \"type\": \"reference\",\n";
  if (!r.name.empty()) out += "  \"name\": " + escape(r.name) + ",\n";
  out += "  \"metrics\": {\n";
  size_t i = 0;
  for (const auto& [k, v] : r.metrics) {
    out += "    " + escape(k) + ": " + fnum(v);
    out += ++i < r.metrics.size() ? ",\n" : "\n";
  }
  out += "  }\n}\n";
  return out;
}

std::string detect_document_type(const std::string& content) {
  json j = parse(content);
  if (const json* t = opt_member(j, "type")) {
    if (t->is_string()) return t->get<std::string>();
  }
  if (opt_member(j, "areas")) return "fmatrix";
  if (opt_member(j, "cores")) return "coregraph";
  if (opt_member(j, "tiles")) return "grid";
  if (opt_member(j, "assignments")) return "mapping";
  if (opt_member(j, "metrics")) return "reference";
  throw SchemaError("$: unrecognized document (no type field and no known structure)");
}

std::string solution_to_json(const FloorplanSolution& sol, const BoundingMetrics& bm) {
  std::string out = "{\n  \"type\": \"floorplan_solution\",\n";
  out += "  \"model\": " + escape(to_string(sol.stats.model_kind)) + ",\n";
  out += "  \"row_heights\": [";
  for (size_t i = 0; i < sol.row_heights.size(); ++i)
    out += (i ? ", " : "") + fnum(sol.row_heights[i]);
  out += "],\n  \"col_widths\": [";
  for (size_t i = 0; i < sol.col_widths.size(); ++i)
    out += (i ? ", " : "") + fnum(sol.col_widths[i]);
  out += "],\n  \"side\": " + fnum(sol.side);
  out += ",\n  \"objective\": " + fnum(sol.objective_value);
  out += ",\n  \"metrics\": {\"side\": " + fnum(bm.side) +
         ", \"bounding_area\": " + fnum(bm.bounding_area) + ", \"content\": " + fnum(bm.content) +
         ", \"whitespace\": " + fnum(bm.whitespace) +
         ", \"whitespace_ratio\": " + fnum(bm.whitespace_ratio) + "}";
  out += ",\n  \"stats\": {\"iterations\": " + std::to_string(sol.stats.iterations) +
         ", \"runtime_seconds\": " + fnum(sol.stats.runtime_seconds) +
         ", \"complete\": " + (sol.stats.complete ? "true" : "false") +
         ", \"gap_bound\": " + fnum(sol.stats.gap_bound) + "}\n}\n";
  return out;
}

std::string sa_result_to_json(const SAResult& res) {
  auto stats = [](const MetricStats& s) {
    return "{\"mean\": " + fnum(s.mean) + ", \"std\": " + fnum(s.stddev) + "}";
  };
  std::string out = "{\n  \"type\": \"sa_result\",\n";
  out += "  \"best_cost\": " + fnum(res.best_cost) + ",\n";
  out += "  \"best_area\": " + fnum(res.best_area) + ",\n";
  out += "  \"best_comm\": " + fnum(res.best_comm) + ",\n";
  out += "  \"best_max_link_load\": " + fnum(res.best_max_link_load) + ",\n";
  out += "  \"normalizers\": {\"area0\": " + fnum(res.normalizers.area0) +
         ", \"comm0\": " + fnum(res.normalizers.comm0) + "},\n";
  out += "  \"aggregate\": {\"cost\": " + stats(res.cost_stats) +
         ", \"area\": " + stats(res.area_stats) + ", \"comm\": " + stats(res.comm_stats) +
         ", \"max_link_load\": " + stats(res.link_stats) + "},\n";
  out += "  \"reruns\": [\n";
  for (size_t i = 0; i < res.reruns.size(); ++i) {
    const RerunOutcome& r = res.reruns[i];
    if (r.ok) {
      out += "    {\"ok\": true, \"cost\": " + fnum(r.cost) + ", \"area\": " + fnum(r.area) +
             ", \"comm\": " + fnum(r.comm) + ", \"max_link_load\": " + fnum(r.max_link_load) +
             "}";
    } else {
      out += "    {\"ok\": false, \"error\": " + escape(r.error) + "}";
    }
    out += i + 1 < res.reruns.size() ? ",\n" : "\n";
  }
  out += "  ],\n  \"best_mapping\": {\"assignments\": [\n";
  const auto& entries = res.best_mapping.entries();
  size_t i = 0;
  for (const auto& [core, t] : entries) {
    out += "    {\"core\": " + escape(core) + ", \"layer\": " + std::to_string(t.layer) +
           ", \"row\": " + std::to_string(t.row) + ", \"col\": " + std::to_string(t.col) + "}";
    out += ++i < entries.size() ? ",\n" : "\n";
  }
  out += "  ]}\n}\n";
  return out;
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::string out = "iteration,temperature,cost,accepted,area,comm\n";
  for (const auto& row : trace) {
    out += std::to_string(row.iteration) + "," + fnum(row.temperature) + "," + fnum(row.cost) +
           "," + (row.accepted ? "1" : "0") + "," + fnum(row.area) + "," + fnum(row.comm) + "\n";
  }
  return out;
}

}  // namespace socfp
