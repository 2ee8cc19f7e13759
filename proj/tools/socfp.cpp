#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "socfp/benchgen.hpp"
#include "socfp/json_io.hpp"
#include "socfp/lp.hpp"
#include "socfp/metrics.hpp"
#include "socfp/milp.hpp"
#include "socfp/report.hpp"
#include "socfp/sa.hpp"
#include "socfp/sdp.hpp"
#include "socfp/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitSolver = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw socfp::SchemaError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw socfp::SchemaError("cannot write '" + path + "'");
  out << content;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

struct FloorplanArgs {
  std::string input;
  std::string model = "sdp";
  double eta = -1.0;  // <0: keep the document's value
  double tol = -1.0;
  int segments = 4;
  std::int64_t node_limit = 1'000'000;
  std::string json_out;
  std::string svg_out;
  bool dump_model = false;
};

int cmd_floorplan(const FloorplanArgs& args) {
  socfp::FloorplanProblem p = socfp::load_problem(read_file(args.input));
  if (args.eta > 0.0) p.eta = args.eta;
  p.validate();

  socfp::ModelKind kind = socfp::model_kind_from_string(args.model);
  socfp::FloorplanSolution sol;
  switch (kind) {
    case socfp::ModelKind::LP: {
      socfp::LPModel m = socfp::build_lp(p);
      if (args.dump_model) std::cout << socfp::dump(m);
      sol = socfp::solve_lp(m, args.tol > 0.0 ? args.tol : 1e-9);
      break;
    }
    case socfp::ModelKind::MILP: {
      socfp::MILPModel m = socfp::build_lp_multispline(p, args.segments);
      if (args.dump_model) std::cout << socfp::dump(m);
      sol = socfp::solve_milp(m, args.tol > 0.0 ? args.tol : 1e-9, args.node_limit);
      break;
    }
    case socfp::ModelKind::SDP: {
      socfp::SDPModel m = socfp::build_sdp(p);
      if (args.dump_model) std::cout << socfp::dump(m);
      sol = socfp::solve_sdp(m, args.tol > 0.0 ? args.tol : 1e-7);
      break;
    }
  }

  socfp::BoundingMetrics bm = socfp::bounding_metrics(sol, p.areas);
  emit(args.json_out, socfp::solution_to_json(sol, bm));
  if (!args.svg_out.empty())
    write_file(args.svg_out, socfp::render_floorplan_svg(sol, p.areas, p.eta));
  if (!sol.stats.complete) {
    std::cerr << "solver stopped at its iteration cap; best iterate written (gap bound "
              << sol.stats.gap_bound << ")\n";
    return kExitSolver;
  }
  return kExitOk;
}

struct MapArgs {
  std::string graph;
  std::string grid;
  std::string reference;
  socfp::SAParams params;
  std::string out;
  std::string trace_out;
};

int cmd_map(const MapArgs& args) {
  socfp::CoreGraph graph = socfp::load_coregraph(read_file(args.graph));
  socfp::TileGrid grid = socfp::load_grid(read_file(args.grid));
  socfp::SAResult res =
      socfp::simulated_annealing(graph, grid, args.params, !args.trace_out.empty());

  std::string json = socfp::sa_result_to_json(res);
  if (!args.reference.empty()) {
    socfp::ReferenceTable ref = socfp::load_reference(read_file(args.reference));
    std::string ratios = "  \"ratios\": {";
    bool first = true;
    auto add = [&](const char* key, double value) {
      auto it = ref.metrics.find(key);
      if (it == ref.metrics.end()) return;
      if (!first) ratios += ", ";
      first = false;
      ratios += std::string("\"") + key + "\": \"" + socfp::format_ratio(value, it->second) +
                "\"";
    };
    add("area", res.best_area);
    add("comm", res.best_comm);
    add("bandwidth", res.best_max_link_load);
    ratios += "},\n";
    json.insert(json.find("  \"best_cost\""), ratios);
  }
  emit(args.out, json);
  if (!args.trace_out.empty()) write_file(args.trace_out, socfp::trace_to_csv(res.trace));
  return kExitOk;
}

struct BenchArgs {
  std::string suite = "table1";
  int repetitions = 50;
  std::string out;
  std::string csv_out;
  double lp_tol = 1e-9;
  double sdp_tol = 1e-7;
};

int cmd_bench(const BenchArgs& args) {
  if (args.suite != "table1") throw socfp::SchemaError("unknown suite '" + args.suite + "'");
  std::vector<socfp::BenchEntry> entries;
  bool dominance = true;
  for (int n = 1; n <= 3; ++n) {
    socfp::Benchmark b = socfp::gen_benchmark(n);
    entries.push_back(socfp::run_bench_entry(b, args.repetitions, args.lp_tol, args.sdp_tol));
    dominance = dominance && entries.back().dominance;
  }
  emit(args.out, socfp::bench_markdown(entries));
  if (!args.csv_out.empty()) write_file(args.csv_out, socfp::bench_csv(entries));
  if (!dominance) {
    std::cerr << "expected the exact model to beat the linear model in every layer\n";
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_validate(const std::string& input) {
  std::string content = read_file(input);
  std::string kind = socfp::detect_document_type(content);
  if (kind == "fmatrix") {
    socfp::load_problem(content).validate();
  } else if (kind == "coregraph") {
    socfp::load_coregraph(content);
  } else if (kind == "grid") {
    socfp::load_grid(content);
  } else if (kind == "mapping") {
    socfp::load_mapping(content);
  } else if (kind == "reference") {
    socfp::load_reference(content);
  } else {
    throw socfp::SchemaError("unsupported document type '" + kind + "'");
  }
  std::cout << kind << ": ok\n";
  return kExitOk;
}

int cmd_gen(int benchmark, const std::string& dir) {
  socfp::Benchmark b = socfp::gen_benchmark(benchmark);
  std::string base = dir.empty() ? b.name : dir + "/" + b.name;
  write_file(base + "_grid.json", socfp::save_grid(socfp::to_tile_grid(b.spec)));
  for (size_t z = 0; z < b.layer_areas.size(); ++z) {
    socfp::FloorplanProblem p{b.layer_areas[z], b.spec.eta};
    write_file(base + "_layer" + std::to_string(z + 1) + ".json", socfp::save_problem(p));
  }
  std::cout << b.name << ": " << b.layer_areas.size() << " layer files + grid written\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"floorplan models and core mapping for tile-based stacked SoCs"};
  app.require_subcommand(1);

  FloorplanArgs fp;
  CLI::App* c_fp = app.add_subcommand("floorplan", "solve the per-layer area model");
  c_fp->add_option("-i,--input", fp.input, "area matrix document")->required();
  c_fp->add_option("-m,--model", fp.model, "lp, milp, or sdp")
      ->check(CLI::IsMember({"lp", "milp", "sdp"}));
  c_fp->add_option("--eta", fp.eta, "aspect ratio bound, overrides the document");
  c_fp->add_option("--tol", fp.tol, "solver tolerance");
  c_fp->add_option("--segments", fp.segments, "spline segments for milp")
      ->check(CLI::Range(2, 8));
  c_fp->add_option("--node-limit", fp.node_limit, "branch and bound node cap");
  c_fp->add_option("-o,--json", fp.json_out, "solution JSON path ('-' for stdout)");
  c_fp->add_option("--svg", fp.svg_out, "render the floorplan to this SVG file");
  c_fp->add_flag("--dump-model", fp.dump_model, "print the model constraints");

  MapArgs mp;
  CLI::App* c_map = app.add_subcommand("map", "anneal a core-to-tile mapping");
  c_map->add_option("-g,--graph", mp.graph, "core graph document")->required();
  c_map->add_option("-t,--grid", mp.grid, "tile grid document")->required();
  c_map->add_option("-r,--reference", mp.reference, "baseline metrics for ratio columns");
  c_map->add_option("--seed", mp.params.seed, "rng seed");
  c_map->add_option("--iterations", mp.params.iterations)->check(CLI::PositiveNumber);
  c_map->add_option("--reruns", mp.params.reruns)->check(CLI::PositiveNumber);
  c_map->add_option("--t0", mp.params.initial_temperature, "initial temperature");
  c_map->add_option("--cooling", mp.params.cooling_factor, "cooling factor per period");
  c_map->add_option("--cooling-period", mp.params.cooling_period)->check(CLI::PositiveNumber);
  c_map->add_option("--w-area", mp.params.w_area);
  c_map->add_option("--w-comm", mp.params.w_comm);
  c_map->add_option("--eta", mp.params.eta);
  c_map->add_option("--tol", mp.params.solver_tol, "area solver tolerance");
  std::string area_model = "sdp";
  c_map->add_option("--area-model", area_model, "lp or sdp")
      ->check(CLI::IsMember({"lp", "sdp"}));
  c_map->add_option("--workers", mp.params.workers, "parallel reruns (0: SOCFP_WORKERS)");
  c_map->add_option("-o,--out", mp.out, "result JSON path ('-' for stdout)");
  c_map->add_option("--trace", mp.trace_out, "per-iteration CSV of rerun 0");

  BenchArgs bn;
  CLI::App* c_bench = app.add_subcommand("bench", "compare both models on the built-in suite");
  c_bench->add_option("--suite", bn.suite)->check(CLI::IsMember({"table1"}));
  c_bench->add_option("--reps", bn.repetitions, "solves per runtime average")
      ->check(CLI::PositiveNumber);
  c_bench->add_option("-o,--out", bn.out, "markdown report path ('-' for stdout)");
  c_bench->add_option("--csv", bn.csv_out, "csv report path");
  c_bench->add_option("--lp-tol", bn.lp_tol);
  c_bench->add_option("--sdp-tol", bn.sdp_tol);

  std::string validate_input;
  CLI::App* c_val = app.add_subcommand("validate", "check a document against its schema");
  c_val->add_option("input", validate_input, "document path")->required();

  int gen_n = 1;
  std::string gen_dir;
  CLI::App* c_gen = app.add_subcommand("gen", "write a built-in benchmark as documents");
  c_gen->add_option("-b,--benchmark", gen_n, "benchmark index")->check(CLI::Range(1, 3));
  c_gen->add_option("-d,--dir", gen_dir, "output directory (default: cwd)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_fp->parsed()) return cmd_floorplan(fp);
    if (c_map->parsed()) {
      mp.params.area_model = socfp::model_kind_from_string(area_model);
      return cmd_map(mp);
    }
    if (c_bench->parsed()) return cmd_bench(bn);
    if (c_val->parsed()) return cmd_validate(validate_input);
    if (c_gen->parsed()) return cmd_gen(gen_n, gen_dir);
  } catch (const socfp::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const socfp::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
