#pragma once

#include <string>
#include <string_view>

#include "taco/compressed_graph.hpp"

namespace taco {

/// Serializes every edge plus the raw counters as JSON. Edge order is
/// deterministic (dep head, then prec head).
std::string export_graph(const CompressedGraph& g);

/// Rebuilds a graph from export_graph output. Throws ImportError naming the
/// offending field (e.g. "edges[3].pattern") on any schema violation,
/// including raw counters that disagree with the edges.
CompressedGraph import_graph(std::string_view json, PatternSet patterns = PatternSet::all());

}  // namespace taco
