#pragma once

#include <map>
#include <string>
#include <vector>

#include "taco/engine.hpp"
#include "taco/sheet_dump.hpp"

namespace taco {

/// Cell contents kept in step with a formula graph. Every mutation updates
/// both or, when it throws, neither.
class Sheet {
 public:
  /// Throws Error on duplicate addresses or unparseable formulas.
  explicit Sheet(const SheetDump& dump, EngineKind kind = EngineKind::Taco,
                 PatternSet patterns = PatternSet::all());

  /// References of `content` placed at `cell` (empty for literals). Throws
  /// ParseError for bad formulas and GraphError for self-references, so
  /// callers can validate a batch of edits before applying any.
  static std::vector<Dependency> dependencies_of(Cell cell, const std::string& content);

  /// Replaces the content of `cell`; an empty string clears it.
  void set(Cell cell, const std::string& content);
  /// Removes every cell in `r`.
  void clear(const Range& r);

  std::vector<CellRecord> cells_in(const Range& window) const;
  SheetDump dump() const;
  std::size_t cell_count() const { return cells_.size(); }

  const Engine& engine() const { return engine_; }

 private:
  std::map<Cell, std::string> cells_;
  Engine engine_;
};

}  // namespace taco
