#include "taco/sheet.hpp"

#include "taco/errors.hpp"

namespace taco {

Sheet::Sheet(const SheetDump& dump, EngineKind kind, PatternSet patterns) : engine_(kind, patterns) {
  for (const CellRecord& rec : dump)
    if (!cells_.emplace(rec.cell, rec.content).second) throw Error("duplicate address " + to_a1(rec.cell));
  engine_ = build_engine(kind, dump, patterns);
}

std::vector<Dependency> Sheet::dependencies_of(Cell cell, const std::string& content) {
  if (content.empty() || content.front() != '=') return {};
  std::vector<Dependency> deps = extract_refs(content, cell);
  for (const Dependency& d : deps)
    if (d.prec.contains(d.dep)) throw GraphError("formula at " + to_a1(cell) + " references its own cell");
  return deps;
}

void Sheet::set(Cell cell, const std::string& content) {
  if (!in_grid(cell)) throw BoundsError("cell outside the grid");
  std::vector<Dependency> deps = dependencies_of(cell, content);
  engine_.update(cell, deps);
  if (content.empty())
    cells_.erase(cell);
  else
    cells_[cell] = content;
}

void Sheet::clear(const Range& r) {
  engine_.clear(r);
  auto it = cells_.lower_bound(r.head);
  while (it != cells_.end() && it->first <= r.tail) {
    if (r.contains(it->first))
      it = cells_.erase(it);
    else
      ++it;
  }
}

std::vector<CellRecord> Sheet::cells_in(const Range& window) const {
  std::vector<CellRecord> out;
  for (auto it = cells_.lower_bound(window.head); it != cells_.end() && it->first <= window.tail; ++it)
    if (window.contains(it->first)) out.push_back({it->first, it->second});
  return out;
}

SheetDump Sheet::dump() const {
  SheetDump out;
  out.reserve(cells_.size());
  for (const auto& [cell, content] : cells_) out.push_back({cell, content});
  return out;
}

}  // namespace taco
