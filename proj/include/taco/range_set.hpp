#pragma once

#include <cstdint>
#include <vector>

#include "taco/cellspace.hpp"
#include "taco/spatial_index.hpp"

namespace taco {

/// Pairwise-disjoint ranges with an overlap index. Used as the visited set of
/// the graph traversals.
class RangeSet {
 public:
  /// Adds the part of `probe` not already covered and returns those pieces.
  std::vector<Range> add_uncovered(const Range& probe);

  const std::vector<Range>& ranges() const { return ranges_; }
  std::size_t size() const { return ranges_.size(); }
  bool empty() const { return ranges_.empty(); }
  std::int64_t cell_count() const;
  bool covers(Cell c) const;

 private:
  std::vector<Range> ranges_;
  SpatialIndex index_;
  std::vector<IndexEntry> scratch_;
};

/// Sorts by head (column-major), then tail.
void sort_ranges(std::vector<Range>& ranges);

/// Merges ranges that together form a larger rectangle (same column span and
/// vertically touching, or same row span and horizontally touching). Display
/// helper; the result covers exactly the same cells and is sorted.
std::vector<Range> coalesce(std::vector<Range> ranges);

/// Every cell covered by `ranges`, sorted and deduplicated.
std::vector<Cell> cells_of(const std::vector<Range>& ranges);

}  // namespace taco
