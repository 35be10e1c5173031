#include "taco/cellspace.hpp"

#include <algorithm>

#include "taco/errors.hpp"

namespace taco {

std::optional<Range> intersect(const Range& a, const Range& b) {
  Range r{{std::max(a.head.col, b.head.col), std::max(a.head.row, b.head.row)},
          {std::min(a.tail.col, b.tail.col), std::min(a.tail.row, b.tail.row)}};
  if (!r.valid()) return std::nullopt;
  return r;
}

std::vector<Range> subtract(const Range& a, const Range& b) {
  auto common = intersect(a, b);
  if (!common) return {a};
  std::vector<Range> pieces;
  if (a.head.row < common->head.row)
    pieces.push_back({a.head, {a.tail.col, common->head.row - 1}});
  if (common->tail.row < a.tail.row)
    pieces.push_back({{a.head.col, common->tail.row + 1}, a.tail});
  if (a.head.col < common->head.col)
    pieces.push_back({{a.head.col, common->head.row}, {common->head.col - 1, common->tail.row}});
  if (common->tail.col < a.tail.col)
    pieces.push_back({{common->tail.col + 1, common->head.row}, {a.tail.col, common->tail.row}});
  return pieces;
}

Range shift(const Range& r, Offset o) {
  Range out{r.head + o, r.tail + o};
  if (!in_grid(out.head) || !in_grid(out.tail))
    throw BoundsError("shift of " + to_a1(r) + " leaves the grid");
  return out;
}

bool adjacent(const Range& a, const Range& b, Axis axis) {
  if (axis == Axis::Column) {
    return a.head.col == b.head.col && a.tail.col == b.tail.col &&
           (a.tail.row + 1 == b.head.row || b.tail.row + 1 == a.head.row);
  }
  return a.head.row == b.head.row && a.tail.row == b.tail.row &&
         (a.tail.col + 1 == b.head.col || b.tail.col + 1 == a.head.col);
}

std::int32_t column_index(std::string_view letters) {
  if (letters.empty()) throw ParseError("missing column letters", 0);
  std::int64_t value = 0;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    char ch = letters[k];
    if (ch < 'A' || ch > 'Z') throw ParseError("invalid column letter", k);
    value = value * 26 + (ch - 'A' + 1);
    if (value > kMaxCol) throw BoundsError("column " + std::string(letters) + " beyond grid");
  }
  return static_cast<std::int32_t>(value);
}

std::string column_label(std::int32_t col) {
  if (col < 1 || col > kMaxCol) throw BoundsError("column index out of grid");
  std::string out;
  while (col > 0) {
    int rem = (col - 1) % 26;
    out.push_back(static_cast<char>('A' + rem));
    col = (col - 1) / 26;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

// Parses one cell starting at `base` within the enclosing text so error
// offsets point into the caller's string.
Cell parse_cell_at(std::string_view text, std::size_t base) {
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '$') ++pos;
  std::size_t letters_begin = pos;
  while (pos < text.size() && text[pos] >= 'A' && text[pos] <= 'Z') ++pos;
  if (pos == letters_begin) throw ParseError("expected column letters", base + pos);
  std::string_view letters = text.substr(letters_begin, pos - letters_begin);
  if (pos < text.size() && text[pos] == '$') ++pos;
  std::size_t digits_begin = pos;
  std::int64_t row = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    row = row * 10 + (text[pos] - '0');
    if (row > kMaxRow) throw BoundsError("row beyond grid in " + std::string(text));
    ++pos;
  }
  if (pos == digits_begin) throw ParseError("expected row digits", base + pos);
  if (pos != text.size()) throw ParseError("unexpected character", base + pos);
  if (row < 1) throw BoundsError("row 0 is outside the grid");
  if (letters.size() > 3) throw BoundsError("column " + std::string(letters) + " beyond grid");
  return {column_index(letters), static_cast<std::int32_t>(row)};
}

}  // namespace

Cell parse_cell(std::string_view text) { return parse_cell_at(text, 0); }

Range parse_a1(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return Range(parse_cell_at(text, 0));
  Cell a = parse_cell_at(text.substr(0, colon), 0);
  Cell b = parse_cell_at(text.substr(colon + 1), colon + 1);
  return {{std::min(a.col, b.col), std::min(a.row, b.row)},
          {std::max(a.col, b.col), std::max(a.row, b.row)}};
}

std::string to_a1(Cell c) { return column_label(c.col) + std::to_string(c.row); }

std::string to_a1(const Range& r) {
  if (r.is_cell()) return to_a1(r.head);
  return to_a1(r.head) + ":" + to_a1(r.tail);
}

}  // namespace taco
