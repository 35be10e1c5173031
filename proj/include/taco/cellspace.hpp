#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace taco {

inline constexpr std::int32_t kMaxCol = 16384;
inline constexpr std::int32_t kMaxRow = 1048576;

/// Column/row delta between two cells.
struct Offset {
  std::int32_t dcol = 0;
  std::int32_t drow = 0;

  constexpr Offset operator-() const { return {-dcol, -drow}; }
  friend constexpr bool operator==(const Offset&, const Offset&) = default;
};

/// 1-based grid coordinate. Default ordering is column-major.
struct Cell {
  std::int32_t col = 1;
  std::int32_t row = 1;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

  constexpr Cell operator+(Offset o) const { return {col + o.dcol, row + o.drow}; }
  constexpr Cell operator-(Offset o) const { return {col - o.dcol, row - o.drow}; }
  constexpr Offset operator-(Cell o) const { return {col - o.col, row - o.row}; }
};

constexpr bool in_grid(Cell c) {
  return c.col >= 1 && c.col <= kMaxCol && c.row >= 1 && c.row <= kMaxRow;
}

/// Direction of a 1-wide run. A column-axis run is vertical (one column,
/// consecutive rows); a row-axis run is horizontal.
enum class Axis : std::uint8_t { Column, Row };

/// Rectangle with inclusive corners; head is top-left, tail bottom-right.
struct Range {
  Cell head;
  Cell tail;

  constexpr Range() = default;
  constexpr Range(Cell h, Cell t) : head(h), tail(t) {}
  constexpr explicit Range(Cell c) : head(c), tail(c) {}

  friend constexpr auto operator<=>(const Range&, const Range&) = default;

  constexpr bool valid() const { return head.col <= tail.col && head.row <= tail.row; }
  constexpr bool is_cell() const { return head == tail; }
  constexpr std::int64_t width() const { return std::int64_t{tail.col} - head.col + 1; }
  constexpr std::int64_t height() const { return std::int64_t{tail.row} - head.row + 1; }
  constexpr std::int64_t area() const { return width() * height(); }

  constexpr bool contains(Cell c) const {
    return c.col >= head.col && c.col <= tail.col && c.row >= head.row && c.row <= tail.row;
  }
  constexpr bool contains(const Range& r) const { return contains(r.head) && contains(r.tail); }
  constexpr bool overlaps(const Range& r) const {
    return head.col <= r.tail.col && r.head.col <= tail.col && head.row <= r.tail.row &&
           r.head.row <= tail.row;
  }
};

/// Smallest range containing both inputs.
constexpr Range bounding(const Range& a, const Range& b) {
  return {{a.head.col < b.head.col ? a.head.col : b.head.col,
           a.head.row < b.head.row ? a.head.row : b.head.row},
          {a.tail.col > b.tail.col ? a.tail.col : b.tail.col,
           a.tail.row > b.tail.row ? a.tail.row : b.tail.row}};
}

std::optional<Range> intersect(const Range& a, const Range& b);

/// Cells of `a` not in `b`, as disjoint pieces in the fixed order
/// top strip, bottom strip, left strip, right strip.
std::vector<Range> subtract(const Range& a, const Range& b);

/// Throws BoundsError if the result leaves the grid.
Range shift(const Range& r, Offset o);

/// True when `a` and `b` share a full edge along `axis`: for Axis::Column they
/// span the same columns and are vertically touching; Axis::Row is the transpose.
bool adjacent(const Range& a, const Range& b, Axis axis);

// Axis transposition (col <-> row). Used to derive row-axis behaviour from
// column-axis code.
constexpr Cell transpose(Cell c) { return {c.row, c.col}; }
constexpr Offset transpose(Offset o) { return {o.drow, o.dcol}; }
constexpr Range transpose(const Range& r) { return {transpose(r.head), transpose(r.tail)}; }

// --- A1 notation -----------------------------------------------------------

/// "A" -> 1, "Z" -> 26, "AA" -> 27. Throws ParseError / BoundsError.
std::int32_t column_index(std::string_view letters);
std::string column_label(std::int32_t col);

/// Parses "B7" or "$B$7". Dollar markers are accepted and ignored.
Cell parse_cell(std::string_view text);

/// Parses "A1" or "A1:C3" (dollar markers ignored). Corners are normalised so
/// head is top-left.
Range parse_a1(std::string_view text);

std::string to_a1(Cell c);
/// Single-cell ranges print as a bare cell ("C4"), others as "A1:B6".
std::string to_a1(const Range& r);

}  // namespace taco

template <>
struct std::hash<taco::Range> {
  std::size_t operator()(const taco::Range& r) const noexcept {
    std::uint64_t a = (std::uint64_t(std::uint32_t(r.head.col)) << 32) | std::uint32_t(r.head.row);
    std::uint64_t b = (std::uint64_t(std::uint32_t(r.tail.col)) << 32) | std::uint32_t(r.tail.row);
    a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
    a ^= a >> 31;
    a *= 0xbf58476d1ce4e5b9ULL;
    a ^= a >> 29;
    return static_cast<std::size_t>(a);
  }
};

template <>
struct std::hash<taco::Cell> {
  std::size_t operator()(const taco::Cell& c) const noexcept {
    return std::hash<taco::Range>{}(taco::Range(c));
  }
};
