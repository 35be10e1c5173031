#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "taco/baselines.hpp"
#include "taco/compressed_graph.hpp"
#include "taco/sheet_dump.hpp"

namespace taco {

enum class EngineKind : std::uint8_t { Taco, NoComp, Calc };

std::string_view engine_name(EngineKind k);
std::optional<EngineKind> parse_engine_kind(std::string_view name);

/// One of the three graph engines behind a common interface.
class Engine {
 public:
  explicit Engine(EngineKind kind = EngineKind::Taco, PatternSet patterns = PatternSet::all());

  EngineKind kind() const { return kind_; }

  void insert(const Dependency& d);
  void clear(const Range& s);
  void update(Cell cell, std::span<const Dependency> deps);

  std::vector<Range> find_dependents(const Range& r) const;
  std::vector<Range> find_precedents(const Range& s) const;
  std::vector<Range> direct_dependents(const Range& r) const;
  std::vector<Range> direct_precedents(const Range& s) const;

  GraphStats stats() const;
  /// Per-pattern reductions; empty for the uncompressed engines.
  ReducedEdges reduced_edges_by_pattern() const;
  /// The compressed graph, or nullptr for the uncompressed engines.
  const CompressedGraph* compressed() const { return std::get_if<CompressedGraph>(&graph_); }

 private:
  EngineKind kind_;
  std::variant<CompressedGraph, NoCompGraph, CalcGraph> graph_;
};

/// Inserts every dependency of `dump` in column-major order.
Engine build_engine(EngineKind kind, const SheetDump& dump, PatternSet patterns = PatternSet::all());

}  // namespace taco
