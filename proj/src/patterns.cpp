#include "taco/patterns.hpp"

#include <algorithm>
#include <cctype>

#include "taco/errors.hpp"

namespace taco {
namespace {

ChainDir transpose(ChainDir d) {
  switch (d) {
    case ChainDir::Above: return ChainDir::Left;
    case ChainDir::Left: return ChainDir::Above;
    case ChainDir::Below: return ChainDir::Right;
    case ChainDir::Right: return ChainDir::Below;
  }
  return d;
}

PatternMeta transpose(const PatternMeta& m) {
  PatternMeta t;
  if (m.h_rel) t.h_rel = taco::transpose(*m.h_rel);
  if (m.t_rel) t.t_rel = taco::transpose(*m.t_rel);
  if (m.h_fix) t.h_fix = taco::transpose(*m.h_fix);
  if (m.t_fix) t.t_fix = taco::transpose(*m.t_fix);
  if (m.chain_dir) t.chain_dir = transpose(*m.chain_dir);
  t.axis = m.axis == Axis::Column ? Axis::Row : Axis::Column;
  return t;
}

CompressedEdge transpose(const CompressedEdge& e) {
  return {taco::transpose(e.prec), taco::transpose(e.dep), e.kind, transpose(e.meta), e.count};
}

bool chain_looks_back(ChainDir d) { return d == ChainDir::Above || d == ChainDir::Left; }

// Window of `c` given only the meta of a pattern edge.
Range window_of(PatternKind kind, const PatternMeta& m, Cell c) {
  switch (kind) {
    case PatternKind::RR:
    case PatternKind::RRChain: return {c + *m.h_rel, c + *m.t_rel};
    case PatternKind::RF: return {c + *m.h_rel, *m.t_fix};
    case PatternKind::FR: return {*m.h_fix, c + *m.t_rel};
    case PatternKind::FF: return {*m.h_fix, *m.t_fix};
    case PatternKind::Single: break;
  }
  throw Error("window_of called on a Single edge");
}

// One-hop dependents for a column-axis pattern edge. Each member's window
// spans the same columns, so only rows need back-calculating.
std::optional<Range> column_direct_dep(const CompressedEdge& e, const Range& r) {
  const PatternMeta& m = e.meta;
  Cell head, tail;
  switch (e.kind) {
    case PatternKind::RR:
    case PatternKind::RRChain:
      head = Cell{e.prec.tail.col, r.head.row} - *m.t_rel;
      tail = Cell{e.prec.head.col, r.tail.row} - *m.h_rel;
      break;
    case PatternKind::RF:
      head = e.dep.head;
      tail = Cell{e.prec.head.col, r.tail.row} - *m.h_rel;
      break;
    case PatternKind::FR:
      head = Cell{e.prec.tail.col, r.head.row} - *m.t_rel;
      tail = e.dep.tail;
      break;
    case PatternKind::FF: return e.dep;
    case PatternKind::Single: return e.dep;
  }
  Range span{head, tail};
  if (!span.valid()) return std::nullopt;
  return intersect(span, e.dep);
}

std::optional<Range> direct_dep(const CompressedEdge& e, const Range& r) {
  if (e.kind == PatternKind::Single) return e.prec.overlaps(r) ? std::optional<Range>(e.dep) : std::nullopt;
  auto clipped = intersect(r, e.prec);
  if (!clipped) return std::nullopt;
  if (e.meta.axis == Axis::Column) return column_direct_dep(e, *clipped);
  auto out = column_direct_dep(transpose(e), taco::transpose(*clipped));
  if (!out) return std::nullopt;
  return taco::transpose(*out);
}

std::optional<Axis> single_step_axis(Cell from, Cell to) {
  Offset o = to - from;
  if (o.dcol == 0 && (o.drow == 1 || o.drow == -1)) return Axis::Column;
  if (o.drow == 0 && (o.dcol == 1 || o.dcol == -1)) return Axis::Row;
  return std::nullopt;
}

bool extends_run(const Range& run, Axis axis, Cell c) {
  if (axis == Axis::Column)
    return c.col == run.head.col && (c.row + 1 == run.head.row || c.row == run.tail.row + 1);
  return c.row == run.head.row && (c.col + 1 == run.head.col || c.col == run.tail.col + 1);
}

std::optional<ChainDir> chain_dir_for(Offset o, Axis axis) {
  if (axis == Axis::Column) {
    if (o == Offset{0, -1}) return ChainDir::Above;
    if (o == Offset{0, 1}) return ChainDir::Below;
  } else {
    if (o == Offset{-1, 0}) return ChainDir::Left;
    if (o == Offset{1, 0}) return ChainDir::Right;
  }
  return std::nullopt;
}

// Meta a Single edge would carry if it became the first member of `kind`.
std::optional<PatternMeta> meta_from_single(PatternKind kind, const CompressedEdge& e, Axis axis) {
  Cell c = e.dep.head;
  RelativePosition r = rel(e.prec, c);
  PatternMeta m;
  m.axis = axis;
  switch (kind) {
    case PatternKind::RR:
      m.h_rel = r.head;
      m.t_rel = r.tail;
      return m;
    case PatternKind::RRChain: {
      if (r.head != r.tail) return std::nullopt;
      auto dir = chain_dir_for(r.head, axis);
      if (!dir) return std::nullopt;
      m.h_rel = r.head;
      m.t_rel = r.tail;
      m.chain_dir = dir;
      return m;
    }
    case PatternKind::RF:
      m.h_rel = r.head;
      m.t_fix = e.prec.tail;
      return m;
    case PatternKind::FR:
      m.h_fix = e.prec.head;
      m.t_rel = r.tail;
      return m;
    case PatternKind::FF:
      m.h_fix = e.prec.head;
      m.t_fix = e.prec.tail;
      return m;
    case PatternKind::Single: break;
  }
  return std::nullopt;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); });
  return out;
}

}  // namespace

std::string_view pattern_name(PatternKind p) {
  switch (p) {
    case PatternKind::Single: return "Single";
    case PatternKind::RR: return "RR";
    case PatternKind::RF: return "RF";
    case PatternKind::FR: return "FR";
    case PatternKind::FF: return "FF";
    case PatternKind::RRChain: return "RRChain";
  }
  return "?";
}

std::optional<PatternKind> parse_pattern_name(std::string_view name) {
  for (PatternKind p : kAllPatterns)
    if (pattern_name(p) == name) return p;
  return std::nullopt;
}

std::string_view chain_dir_name(ChainDir d) {
  switch (d) {
    case ChainDir::Above: return "ABOVE";
    case ChainDir::Below: return "BELOW";
    case ChainDir::Left: return "LEFT";
    case ChainDir::Right: return "RIGHT";
  }
  return "?";
}

std::optional<ChainDir> parse_chain_dir(std::string_view name) {
  for (ChainDir d : {ChainDir::Above, ChainDir::Below, ChainDir::Left, ChainDir::Right})
    if (chain_dir_name(d) == name) return d;
  return std::nullopt;
}

PatternSet PatternSet::all() {
  PatternSet s;
  for (PatternKind p : kAllPatterns) s.enable(p);
  return s;
}

PatternSet PatternSet::parse(std::string_view list) {
  PatternSet s;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    std::string item = lower(list.substr(pos, comma - pos));
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item == "rrchain") s.enable(PatternKind::RRChain);
    else if (item == "rr") s.enable(PatternKind::RR);
    else if (item == "rf") s.enable(PatternKind::RF);
    else if (item == "fr") s.enable(PatternKind::FR);
    else if (item == "ff") s.enable(PatternKind::FF);
    else if (!item.empty() && item != "single") throw Error("unknown pattern '" + item + "'");
    pos = comma + 1;
  }
  return s;
}

CompressedEdge single_edge(const Range& prec, Cell dep) {
  CompressedEdge e;
  e.prec = prec;
  e.dep = Range(dep);
  e.kind = PatternKind::Single;
  e.count = 1;
  return e;
}

std::optional<CompressedEdge> add_dep(PatternKind kind, const CompressedEdge& e, const Dependency& d) {
  if (kind == PatternKind::Single) return std::nullopt;
  PatternMeta meta;
  if (e.kind == PatternKind::Single) {
    auto axis = single_step_axis(e.dep.head, d.dep);
    if (!axis) return std::nullopt;
    auto m = meta_from_single(kind, e, *axis);
    if (!m) return std::nullopt;
    meta = *m;
  } else {
    if (kind != e.kind || !extends_run(e.dep, e.meta.axis, d.dep)) return std::nullopt;
    meta = e.meta;
  }
  if (window_of(kind, meta, d.dep) != d.prec) return std::nullopt;
  return CompressedEdge{bounding(e.prec, d.prec), bounding(e.dep, Range(d.dep)), kind, meta, e.count + 1};
}

std::optional<Range> find_direct_dep(const CompressedEdge& e, const Range& r) { return direct_dep(e, r); }

std::optional<Range> find_dep(const CompressedEdge& e, const Range& r) {
  auto direct = direct_dep(e, r);
  if (!direct || e.kind != PatternKind::RRChain) return direct;
  // Members reached through the chain: everything from the first direct
  // dependent to the far end of the run.
  if (chain_looks_back(*e.meta.chain_dir)) return Range{direct->head, e.dep.tail};
  return Range{e.dep.head, direct->tail};
}

Range find_direct_prec(const CompressedEdge& e, const Range& s) {
  if (e.kind == PatternKind::Single) return e.prec;
  const PatternMeta& m = e.meta;
  switch (e.kind) {
    case PatternKind::RR:
    case PatternKind::RRChain: return {s.head + *m.h_rel, s.tail + *m.t_rel};
    case PatternKind::RF: return {s.head + *m.h_rel, *m.t_fix};
    case PatternKind::FR: return {*m.h_fix, s.tail + *m.t_rel};
    case PatternKind::FF: return {*m.h_fix, *m.t_fix};
    case PatternKind::Single: break;
  }
  return e.prec;
}

Range find_prec(const CompressedEdge& e, const Range& s) {
  if (e.kind != PatternKind::RRChain) return find_direct_prec(e, s);
  if (chain_looks_back(*e.meta.chain_dir)) return {e.prec.head, s.tail + *e.meta.t_rel};
  return {s.head + *e.meta.h_rel, e.prec.tail};
}

std::vector<CompressedEdge> remove_dep(const CompressedEdge& e, const Range& s) {
  auto clipped = intersect(s, e.dep);
  if (!clipped) return {e};
  std::vector<CompressedEdge> out;
  for (const Range& piece : subtract(e.dep, *clipped)) {
    CompressedEdge n;
    n.prec = find_direct_prec(e, piece);
    n.dep = piece;
    n.count = piece.area();
    if (piece.is_cell()) {
      n.kind = PatternKind::Single;
    } else {
      n.kind = e.kind;
      n.meta = e.meta;
    }
    out.push_back(n);
  }
  return out;
}

Range window(const CompressedEdge& e, Cell c) {
  if (e.kind == PatternKind::Single) return e.prec;
  return window_of(e.kind, e.meta, c);
}

std::vector<RawDependency> decompress(const CompressedEdge& e) {
  std::vector<RawDependency> out;
  out.reserve(static_cast<std::size_t>(e.dep.area()));
  for (std::int32_t col = e.dep.head.col; col <= e.dep.tail.col; ++col)
    for (std::int32_t row = e.dep.head.row; row <= e.dep.tail.row; ++row)
      out.push_back({window(e, Cell{col, row}), Cell{col, row}});
  return out;
}

PatternKind hinted_pattern(const FixednessHints& h) {
  bool head = h.head_fixed();
  bool tail = h.tail_fixed();
  if (head && tail) return PatternKind::FF;
  if (tail) return PatternKind::RF;
  if (head) return PatternKind::FR;
  return PatternKind::RR;
}

}  // namespace taco
