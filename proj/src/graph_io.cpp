#include "taco/graph_io.hpp"

#include "json.hpp"

#include "taco/errors.hpp"

namespace taco {
namespace {

using nlohmann::json;

using ordered = nlohmann::ordered_json;

ordered offset_json(Offset o) { return ordered::array({o.dcol, o.drow}); }

ordered edge_json(const CompressedEdge& e) {
  ordered meta = ordered::object();
  if (e.meta.h_rel) meta["hRel"] = offset_json(*e.meta.h_rel);
  if (e.meta.t_rel) meta["tRel"] = offset_json(*e.meta.t_rel);
  if (e.meta.h_fix) meta["hFix"] = to_a1(*e.meta.h_fix);
  if (e.meta.t_fix) meta["tFix"] = to_a1(*e.meta.t_fix);
  if (e.meta.chain_dir) meta["chainDir"] = std::string(chain_dir_name(*e.meta.chain_dir));
  ordered out = {{"prec", to_a1(e.prec)}, {"dep", to_a1(e.dep)}, {"pattern", std::string(pattern_name(e.kind))}};
  if (!meta.empty()) out["meta"] = std::move(meta);
  out["count"] = e.count;
  return out;
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ImportError(path + "." + key, "missing");
  return *it;
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw ImportError(path, "expected a string");
  return v.get<std::string>();
}

std::int64_t integer_at(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ImportError(path, "expected an integer");
  return v.get<std::int64_t>();
}

Range range_at(const json& v, const std::string& path) {
  std::string text = string_at(v, path);
  try {
    return parse_a1(text);
  } catch (const Error& err) {
    throw ImportError(path, "bad range '" + text + "'");
  }
}

Cell cell_at(const json& v, const std::string& path) {
  std::string text = string_at(v, path);
  try {
    return parse_cell(text);
  } catch (const Error& err) {
    throw ImportError(path, "bad cell '" + text + "'");
  }
}

Offset offset_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ImportError(path, "expected [dcol, drow]");
  return {static_cast<std::int32_t>(integer_at(v[0], path + "[0]")),
          static_cast<std::int32_t>(integer_at(v[1], path + "[1]"))};
}

// Every raw dependency the edge claims must reproduce the edge when
// recompressed, so a hand-edited file cannot smuggle in an inconsistent edge.
void check_edge(const CompressedEdge& e, const std::string& path) {
  const bool column_run = e.dep.width() == 1;
  const bool row_run = e.dep.height() == 1;
  if (!column_run && !row_run) throw ImportError(path + ".dep", "must be a single column or row");
  if (e.count != e.dep.area()) throw ImportError(path + ".count", "does not match the dep run length");

  auto need = [&](bool present, const char* key) {
    if (!present) throw ImportError(path + ".meta." + key, "missing");
  };
  auto forbid = [&](bool present, const char* key) {
    if (present) throw ImportError(path + ".meta." + key, "not allowed for " + std::string(pattern_name(e.kind)));
  };
  const PatternMeta& m = e.meta;
  switch (e.kind) {
    case PatternKind::Single:
      if (e.count != 1) throw ImportError(path + ".count", "Single edges have count 1");
      break;
    case PatternKind::RR:
      need(m.h_rel.has_value(), "hRel");
      need(m.t_rel.has_value(), "tRel");
      forbid(m.h_fix.has_value(), "hFix");
      forbid(m.t_fix.has_value(), "tFix");
      forbid(m.chain_dir.has_value(), "chainDir");
      break;
    case PatternKind::RF:
      need(m.h_rel.has_value(), "hRel");
      need(m.t_fix.has_value(), "tFix");
      forbid(m.t_rel.has_value(), "tRel");
      forbid(m.h_fix.has_value(), "hFix");
      forbid(m.chain_dir.has_value(), "chainDir");
      break;
    case PatternKind::FR:
      need(m.h_fix.has_value(), "hFix");
      need(m.t_rel.has_value(), "tRel");
      forbid(m.h_rel.has_value(), "hRel");
      forbid(m.t_fix.has_value(), "tFix");
      forbid(m.chain_dir.has_value(), "chainDir");
      break;
    case PatternKind::FF:
      need(m.h_fix.has_value(), "hFix");
      need(m.t_fix.has_value(), "tFix");
      forbid(m.h_rel.has_value(), "hRel");
      forbid(m.t_rel.has_value(), "tRel");
      forbid(m.chain_dir.has_value(), "chainDir");
      break;
    case PatternKind::RRChain:
      need(m.h_rel.has_value(), "hRel");
      need(m.t_rel.has_value(), "tRel");
      need(m.chain_dir.has_value(), "chainDir");
      forbid(m.h_fix.has_value(), "hFix");
      forbid(m.t_fix.has_value(), "tFix");
      break;
  }

  Range bound = window(e, e.dep.head);
  for (std::int32_t c = e.dep.head.col; c <= e.dep.tail.col; ++c) {
    for (std::int32_t r = e.dep.head.row; r <= e.dep.tail.row; ++r) {
      Range w = window(e, Cell{c, r});
      if (!w.valid() || !in_grid(w.head) || !in_grid(w.tail))
        throw ImportError(path + ".meta", "window of " + to_a1(Cell{c, r}) + " leaves the grid");
      if (w.contains(Cell{c, r})) throw ImportError(path + ".meta", to_a1(Cell{c, r}) + " references itself");
      bound = bounding(bound, w);
    }
  }
  if (bound != e.prec) throw ImportError(path + ".prec", "does not match the windows implied by meta");
}

CompressedEdge edge_at(const json& v, const std::string& path) {
  if (!v.is_object()) throw ImportError(path, "expected an object");
  CompressedEdge e;
  e.prec = range_at(field(v, "prec", path), path + ".prec");
  e.dep = range_at(field(v, "dep", path), path + ".dep");
  std::string name = string_at(field(v, "pattern", path), path + ".pattern");
  auto kind = parse_pattern_name(name);
  if (!kind) throw ImportError(path + ".pattern", "unknown pattern '" + name + "'");
  e.kind = *kind;
  e.count = integer_at(field(v, "count", path), path + ".count");

  PatternMeta& m = e.meta;
  m.axis = e.dep.width() == 1 && e.dep.height() > 1 ? Axis::Column
           : e.dep.height() == 1 && e.dep.width() > 1 ? Axis::Row
                                                      : Axis::Column;
  if (auto it = v.find("meta"); it != v.end()) {
    const std::string mp = path + ".meta";
    if (!it->is_object()) throw ImportError(mp, "expected an object");
    for (const auto& [key, value] : it->items()) {
      const std::string kp = mp + "." + key;
      if (key == "hRel") m.h_rel = offset_at(value, kp);
      else if (key == "tRel") m.t_rel = offset_at(value, kp);
      else if (key == "hFix") m.h_fix = cell_at(value, kp);
      else if (key == "tFix") m.t_fix = cell_at(value, kp);
      else if (key == "chainDir") {
        std::string dir = string_at(value, kp);
        m.chain_dir = parse_chain_dir(dir);
        if (!m.chain_dir) throw ImportError(kp, "unknown chain direction '" + dir + "'");
      } else {
        throw ImportError(kp, "unknown key");
      }
    }
  }
  if (e.kind == PatternKind::RRChain && m.chain_dir) {
    bool vertical = *m.chain_dir == ChainDir::Above || *m.chain_dir == ChainDir::Below;
    m.axis = vertical ? Axis::Column : Axis::Row;
  }
  if (e.kind == PatternKind::Single) m = PatternMeta{};
  check_edge(e, path);
  if (e.kind == PatternKind::Single) e = single_edge(e.prec, e.dep.head);
  return e;
}

}  // namespace

std::string export_graph(const CompressedGraph& g) {
  ordered edges = ordered::array();
  for (const CompressedEdge& e : g.edges()) edges.push_back(edge_json(e));
  ordered doc = {{"edges", std::move(edges)}, {"rawEdges", g.raw_edge_count()}, {"rawVertices", g.raw_vertex_count()}};
  return doc.dump(2) + "\n";
}

CompressedGraph import_graph(std::string_view text, PatternSet patterns) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ImportError("$", std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw ImportError("$", "expected an object");
  const json& list = field(doc, "edges", "$");
  if (!list.is_array()) throw ImportError("$.edges", "expected an array");

  std::vector<CompressedEdge> edges;
  edges.reserve(list.size());
  for (std::size_t k = 0; k < list.size(); ++k) edges.push_back(edge_at(list[k], "edges[" + std::to_string(k) + "]"));

  CompressedGraph g = CompressedGraph::from_edges(edges, patterns);
  if (auto it = doc.find("rawEdges"); it != doc.end()) {
    if (integer_at(*it, "rawEdges") != g.raw_edge_count())
      throw ImportError("rawEdges", "does not match the sum of edge counts");
  }
  if (auto it = doc.find("rawVertices"); it != doc.end()) {
    if (integer_at(*it, "rawVertices") != g.raw_vertex_count())
      throw ImportError("rawVertices", "does not match the vertices implied by the edges");
  }
  return g;
}

}  // namespace taco
