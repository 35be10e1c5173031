#include "taco/engine.hpp"

#include <cctype>
#include <string>

namespace taco {

std::string_view engine_name(EngineKind k) {
  switch (k) {
    case EngineKind::Taco: return "taco";
    case EngineKind::NoComp: return "nocomp";
    case EngineKind::Calc: return "calc";
  }
  return "?";
}

std::optional<EngineKind> parse_engine_kind(std::string_view name) {
  std::string lower(name);
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (EngineKind k : {EngineKind::Taco, EngineKind::NoComp, EngineKind::Calc})
    if (engine_name(k) == lower) return k;
  return std::nullopt;
}

namespace {

decltype(auto) visit_graph(auto& variant, auto&& fn) { return std::visit(fn, variant); }

}  // namespace

Engine::Engine(EngineKind kind, PatternSet patterns) : kind_(kind) {
  switch (kind) {
    case EngineKind::Taco: graph_.emplace<CompressedGraph>(patterns); break;
    case EngineKind::NoComp: graph_.emplace<NoCompGraph>(); break;
    case EngineKind::Calc: graph_.emplace<CalcGraph>(); break;
  }
}

void Engine::insert(const Dependency& d) {
  visit_graph(graph_, [&](auto& g) { g.insert(d); });
}

void Engine::clear(const Range& s) {
  visit_graph(graph_, [&](auto& g) { g.clear(s); });
}

void Engine::update(Cell cell, std::span<const Dependency> deps) {
  visit_graph(graph_, [&](auto& g) { g.update(cell, deps); });
}

std::vector<Range> Engine::find_dependents(const Range& r) const {
  return visit_graph(graph_, [&](const auto& g) { return g.find_dependents(r); });
}

std::vector<Range> Engine::find_precedents(const Range& s) const {
  return visit_graph(graph_, [&](const auto& g) { return g.find_precedents(s); });
}

std::vector<Range> Engine::direct_dependents(const Range& r) const {
  return visit_graph(graph_, [&](const auto& g) { return g.direct_dependents(r); });
}

std::vector<Range> Engine::direct_precedents(const Range& s) const {
  return visit_graph(graph_, [&](const auto& g) { return g.direct_precedents(s); });
}

GraphStats Engine::stats() const {
  return visit_graph(graph_, [](const auto& g) { return g.stats(); });
}

ReducedEdges Engine::reduced_edges_by_pattern() const {
  if (const auto* g = compressed()) return g->reduced_edges_by_pattern();
  return {};
}

Engine build_engine(EngineKind kind, const SheetDump& dump, PatternSet patterns) {
  Engine engine(kind, patterns);
  for (const Dependency& d : sheet_dependencies(dump)) engine.insert(d);
  return engine;
}

}  // namespace taco
