#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "taco/cellspace.hpp"
#include "taco/formula.hpp"

namespace taco {

/// One cell of a sheet: a formula when the content starts with '=', else a
/// literal value.
struct CellRecord {
  Cell cell;
  std::string content;

  bool is_formula() const { return !content.empty() && content.front() == '='; }
  friend bool operator==(const CellRecord&, const CellRecord&) = default;
};

using SheetDump = std::vector<CellRecord>;

/// Text form: one "address<TAB>content" record per LF-terminated line. Lines
/// starting with '#' and blank lines are ignored. Throws DumpError citing the
/// line for malformed records and duplicate addresses.
SheetDump parse_dump(std::string_view text);
SheetDump read_dump(const std::filesystem::path& path);
std::string format_dump(const SheetDump& dump);
void write_dump(const std::filesystem::path& path, const SheetDump& dump);

/// Column-major order: column ascending, then row.
void sort_column_major(SheetDump& dump);

/// Dependencies of every formula in column-major cell order, each formula's
/// references in parser order. Formula parse failures are rethrown as Error
/// naming the cell.
std::vector<Dependency> sheet_dependencies(SheetDump dump);

}  // namespace taco
