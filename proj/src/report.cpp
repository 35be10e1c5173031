#include "taco/report.hpp"

#include "taco/range_set.hpp"

namespace taco {

nlohmann::json stats_json(const GraphStats& s) {
  return {{"edges", s.edges},           {"vertices", s.vertices},     {"rawEdges", s.raw_edges},
          {"rawVertices", s.raw_vertices}, {"edgeRatio", s.edge_ratio}, {"vertexRatio", s.vertex_ratio}};
}

nlohmann::json reduced_json(const ReducedEdges& reduced) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [kind, n] : reduced)
    if (kind != PatternKind::Single) out[std::string(pattern_name(kind))] = n;
  return out;
}

std::vector<std::string> range_strings(std::vector<Range> ranges) {
  sort_ranges(ranges);
  std::vector<std::string> out;
  out.reserve(ranges.size());
  for (const Range& r : ranges) out.push_back(to_a1(r));
  return out;
}

}  // namespace taco
