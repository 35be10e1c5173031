#include "oracle.hpp"

#include <algorithm>
#include <deque>

namespace taco::testing {

CellSet cells_in(const Range& r) {
  CellSet out;
  for (std::int32_t c = r.head.col; c <= r.tail.col; ++c)
    for (std::int32_t w = r.head.row; w <= r.tail.row; ++w) out.insert({c, w});
  return out;
}

CellSet cells_in(const std::vector<Range>& ranges) {
  CellSet out;
  for (const Range& r : ranges) {
    CellSet part = cells_in(r);
    out.insert(part.begin(), part.end());
  }
  return out;
}

bool pairwise_disjoint(const std::vector<Range>& ranges) {
  for (std::size_t a = 0; a < ranges.size(); ++a)
    for (std::size_t b = a + 1; b < ranges.size(); ++b)
      if (ranges[a].overlaps(ranges[b])) return false;
  return true;
}

CellOracle::CellOracle(std::span<const RawDependency> deps) {
  for (const RawDependency& d : deps) {
    refs_[d.dep].push_back(d.prec);
    for (Cell c : cells_in(d.prec)) readers_[c].push_back(d.dep);
  }
}

CellSet CellOracle::dependents(const Range& r, bool transitive) const {
  CellSet found;
  std::deque<Cell> queue;
  for (auto it = readers_.lower_bound(r.head); it != readers_.end() && it->first <= r.tail; ++it)
    if (r.contains(it->first)) queue.push_back(it->first);
  CellSet start(queue.begin(), queue.end());
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    auto it = readers_.find(c);
    if (it == readers_.end()) continue;
    for (Cell dep : it->second)
      if (found.insert(dep).second && transitive) queue.push_back(dep);
  }
  return found;
}

CellSet CellOracle::precedents(const Range& s, bool transitive) const {
  CellSet found;
  std::deque<Cell> queue;
  for (auto it = refs_.lower_bound(s.head); it != refs_.end() && it->first <= s.tail; ++it)
    if (s.contains(it->first)) queue.push_back(it->first);
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    auto it = refs_.find(c);
    if (it == refs_.end()) continue;
    for (const Range& prec : it->second)
      for (Cell p : cells_in(prec))
        if (found.insert(p).second && transitive) queue.push_back(p);
  }
  return found;
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Range normalized(Cell a, Cell b) {
  return {{std::min(a.col, b.col), std::min(a.row, b.row)}, {std::max(a.col, b.col), std::max(a.row, b.row)}};
}

}  // namespace

RunCase random_run(PatternKind kind, std::mt19937_64& rng, bool row_axis, int max_len) {
  for (;;) {
    const int n = uniform(rng, 2, max_len);
    const std::int32_t col = uniform(rng, 4, 40);
    const std::int32_t top = uniform(rng, 1, 60);
    const std::int32_t bottom = top + n - 1;

    // Window of member i as (head, tail); offsets/fixed cells drawn once.
    const int hc = uniform(rng, -3, 3), hr = uniform(rng, -3, 3);
    const int tc = hc + uniform(rng, 0, 2), tr = hr + uniform(rng, 0, 3);
    const Cell fh{uniform(rng, 1, 45), uniform(rng, 1, 40)};
    const Cell ft{fh.col + uniform(rng, 0, 2), uniform(rng, 1, 120)};
    const bool chain_below = uniform(rng, 0, 1) == 1;

    RunCase out{kind, {}};
    bool ok = true;
    for (std::int32_t row = top; row <= bottom && ok; ++row) {
      Cell dep{col, row};
      Cell head, tail;
      FixednessHints hints;
      switch (kind) {
        case PatternKind::RR: head = dep + Offset{hc, hr}; tail = dep + Offset{tc, tr}; break;
        case PatternKind::RF:
          head = dep + Offset{hc, hr};
          tail = ft;
          hints.tail_col = hints.tail_row = true;
          break;
        case PatternKind::FR:
          head = fh;
          tail = dep + Offset{tc, tr};
          hints.head_col = hints.head_row = true;
          break;
        case PatternKind::FF:
          head = fh;
          tail = ft;
          hints = {true, true, true, true};
          break;
        case PatternKind::RRChain: head = tail = dep + Offset{0, chain_below ? 1 : -1}; break;
        case PatternKind::Single: head = tail = dep + Offset{-1, 0}; break;
      }
      if (head.col > tail.col || head.row > tail.row) {
        ok = false;
        break;
      }
      Range prec{head, tail};
      if (!in_grid(head) || !in_grid(tail) || prec.contains(dep)) {
        ok = false;
        break;
      }
      if (row_axis) {
        prec = normalized(transpose(prec.head), transpose(prec.tail));
        dep = transpose(dep);
        hints = {hints.head_row, hints.head_col, hints.tail_row, hints.tail_col};
      }
      out.deps.push_back({prec, dep, hints});
    }
    if (!ok) continue;

    // Grow outward from a random seed member so both ends get exercised.
    const int seed = uniform(rng, 0, n - 1);
    std::vector<Dependency> order{out.deps[static_cast<std::size_t>(seed)]};
    int lo = seed, hi = seed;
    while (lo > 0 || hi < n - 1) {
      bool down = hi < n - 1 && (lo == 0 || uniform(rng, 0, 1) == 1);
      order.push_back(down ? out.deps[static_cast<std::size_t>(++hi)] : out.deps[static_cast<std::size_t>(--lo)]);
    }
    out.deps = std::move(order);
    return out;
  }
}

CellSet run_dependents(std::span<const Dependency> members, const Range& r, bool transitive) {
  CellSet found;
  for (const Dependency& d : members)
    if (d.prec.overlaps(r)) found.insert(d.dep);
  bool grew = transitive;
  while (grew) {
    grew = false;
    for (const Dependency& d : members) {
      if (found.count(d.dep)) continue;
      for (Cell c : found)
        if (d.prec.contains(c)) {
          found.insert(d.dep);
          grew = true;
          break;
        }
    }
  }
  return found;
}

CellSet run_precedents(std::span<const Dependency> members, const Range& s, bool transitive) {
  std::map<Cell, Range> window;
  for (const Dependency& d : members) window.emplace(d.dep, d.prec);
  CellSet found;
  std::deque<Cell> queue;
  for (const auto& [cell, prec] : window)
    if (s.contains(cell)) queue.push_back(cell);
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    for (Cell p : cells_in(window.at(c)))
      if (found.insert(p).second && transitive && window.count(p)) queue.push_back(p);
  }
  return found;
}

std::vector<RawDependency> raw(std::span<const Dependency> deps) {
  std::vector<RawDependency> out;
  out.reserve(deps.size());
  for (const Dependency& d : deps) out.push_back({d.prec, d.dep});
  std::sort(out.begin(), out.end());
  return out;
}

Range random_range(std::mt19937_64& rng, const Range& bounds, int max_extent) {
  Cell head{uniform(rng, bounds.head.col, bounds.tail.col), uniform(rng, bounds.head.row, bounds.tail.row)};
  Cell tail{std::min(bounds.tail.col, head.col + uniform(rng, 0, max_extent - 1)),
            std::min(bounds.tail.row, head.row + uniform(rng, 0, max_extent - 1))};
  return {head, tail};
}

}  // namespace taco::testing
