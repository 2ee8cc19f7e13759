#pragma once

#include <map>
#include <string>

#include "socfp/metrics.hpp"
#include "socfp/sa.hpp"
#include "socfp/types.hpp"

namespace socfp {

// Published baseline numbers used for ratio reporting.
struct ReferenceTable {
  std::string name;
  std::map<std::string, double> metrics;
};

// Loaders parse JSON text and validate structure; violations raise
// SchemaError with a JSONPath-style location in the message.
FloorplanProblem load_problem(const std::string& text);
CoreGraph load_coregraph(const std::string& text);
TileGrid load_grid(const std::string& text);
Mapping load_mapping(const std::string& text);
ReferenceTable load_reference(const std::string& text);

// Writers emit numbers with 17 significant digits so values round-trip.
std::string save_problem(const FloorplanProblem& p);
std::string save_coregraph(const CoreGraph& g);
std::string save_grid(const TileGrid& g);
std::string save_mapping(const Mapping& m);
std::string save_reference(const ReferenceTable& r);

// Document kind from the "type" field, or inferred from structure.
std::string detect_document_type(const std::string& text);

std::string solution_to_json(const FloorplanSolution& sol, const BoundingMetrics& bm);
std::string sa_result_to_json(const SAResult& res);
std::string trace_to_csv(const std::vector<TraceRow>& trace);

}  // namespace socfp
