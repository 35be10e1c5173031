#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "taco/cellspace.hpp"

namespace taco {

/// Which corners of a reference carried `$` markers.
struct FixednessHints {
  bool head_col = false;
  bool head_row = false;
  bool tail_col = false;
  bool tail_row = false;

  bool head_fixed() const { return head_col && head_row; }
  bool tail_fixed() const { return tail_col && tail_row; }

  friend bool operator==(const FixednessHints&, const FixednessHints&) = default;
};

/// One uncompressed edge: the formula at `dep` references `prec`.
struct Dependency {
  Range prec;
  Cell dep;
  FixednessHints hints;
};

/// A dependency without hints, the unit produced by decompressing edges.
struct RawDependency {
  Range prec;
  Cell dep;

  friend auto operator<=>(const RawDependency&, const RawDependency&) = default;
};

/// Extracts the references of `formula` (which must start with '=') as
/// dependencies of the cell `at`, in order of first occurrence. A range that
/// appears more than once is reported once with the hints of its first
/// occurrence.
///
/// Rejected with ParseError: unbalanced parentheses, unterminated strings,
/// cross-sheet references, structured/table references, bare names that are
/// neither references nor TRUE/FALSE, and INDIRECT.
std::vector<Dependency> extract_refs(std::string_view formula, Cell at);

/// Prints a reference with its `$` markers, e.g. "$B$1:B4".
std::string format_reference(const Range& r, const FixednessHints& hints);

}  // namespace taco
