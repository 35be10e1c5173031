#include "taco/range_set.hpp"

#include <algorithm>

namespace taco {

std::vector<Range> RangeSet::add_uncovered(const Range& probe) {
  scratch_.clear();
  index_.query(probe, scratch_);
  std::vector<Range> pieces{probe};
  for (const IndexEntry& hit : scratch_) {
    std::vector<Range> next;
    for (const Range& p : pieces) {
      auto cut = subtract(p, hit.range);
      next.insert(next.end(), cut.begin(), cut.end());
    }
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  for (const Range& p : pieces) {
    index_.insert(p, ranges_.size());
    ranges_.push_back(p);
  }
  return pieces;
}

std::int64_t RangeSet::cell_count() const {
  std::int64_t n = 0;
  for (const Range& r : ranges_) n += r.area();
  return n;
}

bool RangeSet::covers(Cell c) const { return !index_.query(Range(c)).empty(); }

void sort_ranges(std::vector<Range>& ranges) { std::sort(ranges.begin(), ranges.end()); }

namespace {

// One merge pass along the column axis (same columns, touching rows).
bool merge_vertical(std::vector<Range>& rs) {
  std::sort(rs.begin(), rs.end(), [](const Range& a, const Range& b) {
    if (a.head.col != b.head.col) return a.head.col < b.head.col;
    if (a.tail.col != b.tail.col) return a.tail.col < b.tail.col;
    return a.head.row < b.head.row;
  });
  bool merged = false;
  std::vector<Range> out;
  for (const Range& r : rs) {
    if (!out.empty() && adjacent(out.back(), r, Axis::Column) && out.back().tail.row + 1 == r.head.row) {
      out.back().tail.row = r.tail.row;
      merged = true;
    } else {
      out.push_back(r);
    }
  }
  rs = std::move(out);
  return merged;
}

bool merge_horizontal(std::vector<Range>& rs) {
  for (Range& r : rs) r = transpose(r);
  bool merged = merge_vertical(rs);
  for (Range& r : rs) r = transpose(r);
  return merged;
}

}  // namespace

std::vector<Range> coalesce(std::vector<Range> ranges) {
  bool changed = true;
  while (changed) {
    changed = merge_vertical(ranges);
    changed = merge_horizontal(ranges) || changed;
  }
  sort_ranges(ranges);
  return ranges;
}

std::vector<Cell> cells_of(const std::vector<Range>& ranges) {
  std::vector<Cell> out;
  for (const Range& r : ranges)
    for (std::int32_t c = r.head.col; c <= r.tail.col; ++c)
      for (std::int32_t w = r.head.row; w <= r.tail.row; ++w) out.push_back({c, w});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace taco
