#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "taco/compressed_graph.hpp"

namespace taco {

/// {"edges","vertices","rawEdges","rawVertices","edgeRatio","vertexRatio"}
nlohmann::json stats_json(const GraphStats& s);
/// {"RR": n, ...} for every compressed pattern present in `reduced`.
nlohmann::json reduced_json(const ReducedEdges& reduced);
/// Sorted A1 strings.
std::vector<std::string> range_strings(std::vector<Range> ranges);

}  // namespace taco
