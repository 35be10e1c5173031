#include "taco/compressed_graph.hpp"

#include <algorithm>
#include <deque>
#include <tuple>
#include <unordered_set>

#include "taco/errors.hpp"

namespace taco {
namespace {

// Candidate order for a Single neighbour; select_winner makes the final call.
constexpr PatternKind kTryOrder[] = {PatternKind::RRChain, PatternKind::RR, PatternKind::FR,
                                     PatternKind::RF, PatternKind::FF};

int pattern_rank(PatternKind p) {
  switch (p) {
    case PatternKind::RRChain: return 0;
    case PatternKind::RR: return 1;
    case PatternKind::FR: return 2;
    case PatternKind::RF: return 3;
    case PatternKind::FF: return 4;
    case PatternKind::Single: return 5;
  }
  return 6;
}

void check_in_grid(const Dependency& d) {
  if (!d.prec.valid() || !in_grid(d.prec.head) || !in_grid(d.prec.tail) || !in_grid(d.dep))
    throw BoundsError("dependency outside the grid");
}

void check_not_self(const Dependency& d) {
  if (d.prec.contains(d.dep))
    throw GraphError("formula at " + to_a1(d.dep) + " references its own cell via " + to_a1(d.prec));
}

}  // namespace

void VertexCounter::remove(const Range& r) {
  auto it = counts_.find(r);
  if (it == counts_.end()) return;
  if (--it->second == 0) counts_.erase(it);
}

std::size_t select_winner(std::span<const MergeCandidate> candidates, const FixednessHints& hints) {
  const PatternKind cue = hinted_pattern(hints);
  auto key = [&](const MergeCandidate& c) {
    const PatternKind p = c.merged.kind;
    int axis = c.merged.meta.axis == Axis::Column ? 0 : 1;
    int special = p == PatternKind::RRChain ? 0 : 1;
    bool agrees = p == cue || (p == PatternKind::RRChain && cue == PatternKind::RR);
    return std::make_tuple(axis, special, agrees ? 0 : 1, pattern_rank(p), c.old.dep.head.col,
                           c.old.dep.head.row);
  };
  std::size_t best = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k)
    if (key(candidates[k]) < key(candidates[best])) best = k;
  return best;
}

CompressedGraph::CompressedGraph(PatternSet patterns) : patterns_(patterns) {}

EdgeId CompressedGraph::add_edge(const CompressedEdge& e) {
  EdgeId id = next_id_++;
  edges_.emplace(id, e);
  prec_index_.insert(e.prec, id);
  dep_index_.insert(e.dep, id);
  return id;
}

void CompressedGraph::drop_edge(EdgeId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) return;
  prec_index_.remove(it->second.prec, id);
  dep_index_.remove(it->second.dep, id);
  edges_.erase(it);
}

void CompressedGraph::insert(const Dependency& d) {
  check_in_grid(d);
  check_not_self(d);

  static constexpr Offset kNeighbours[] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};
  std::vector<MergeCandidate> candidates;
  std::vector<EdgeId> seen;
  std::vector<IndexEntry> hits;
  for (Offset o : kNeighbours) {
    Cell n = d.dep + o;
    if (!in_grid(n)) continue;
    hits.clear();
    dep_index_.query(Range(n), hits);
    for (const IndexEntry& hit : hits) {
      if (std::find(seen.begin(), seen.end(), hit.handle) != seen.end()) continue;
      seen.push_back(hit.handle);
      const CompressedEdge& cand = edges_.at(hit.handle);
      if (cand.kind == PatternKind::Single) {
        for (PatternKind p : kTryOrder) {
          if (!patterns_.contains(p)) continue;
          if (auto merged = add_dep(p, cand, d)) candidates.push_back({*merged, cand, hit.handle});
        }
      } else if (auto merged = add_dep(cand.kind, cand, d)) {
        candidates.push_back({*merged, cand, hit.handle});
      }
    }
  }

  if (candidates.empty()) {
    add_edge(single_edge(d));
  } else {
    const MergeCandidate& win = candidates[select_winner(candidates, d.hints)];
    drop_edge(win.old_id);
    add_edge(win.merged);
  }
  ++raw_edges_;
  raw_vertices_.add(d.prec);
  raw_vertices_.add(Range(d.dep));
}

void CompressedGraph::clear(const Range& s) {
  std::vector<IndexEntry> hits = dep_index_.query(s);
  for (const IndexEntry& hit : hits) {
    CompressedEdge e = edges_.at(hit.handle);
    auto clip = intersect(s, e.dep);
    if (!clip) continue;
    for (std::int32_t col = clip->head.col; col <= clip->tail.col; ++col) {
      for (std::int32_t row = clip->head.row; row <= clip->tail.row; ++row) {
        Cell c{col, row};
        raw_vertices_.remove(window(e, c));
        raw_vertices_.remove(Range(c));
        --raw_edges_;
      }
    }
    drop_edge(hit.handle);
    for (const CompressedEdge& rest : remove_dep(e, *clip)) add_edge(rest);
  }
}

void CompressedGraph::update(Cell cell, std::span<const Dependency> deps) {
  for (const Dependency& d : deps) {
    if (d.dep != cell) throw GraphError("update dependency does not belong to " + to_a1(cell));
    check_in_grid(d);
    check_not_self(d);
  }
  clear(Range(cell));
  for (const Dependency& d : deps) insert(d);
}

template <class Step>
std::vector<Range> CompressedGraph::traverse(const Range& start, bool transitive, const SpatialIndex& index,
                                             Step&& step) const {
  RangeSet visited;
  std::deque<Range> queue{start};
  std::vector<IndexEntry> hits;
  while (!queue.empty()) {
    Range current = queue.front();
    queue.pop_front();
    hits.clear();
    index.query(current, hits);
    for (const IndexEntry& hit : hits) {
      std::optional<Range> found = step(edges_.at(hit.handle), current);
      if (!found) continue;
      for (const Range& piece : visited.add_uncovered(*found))
        if (transitive) queue.push_back(piece);
    }
  }
  return visited.ranges();
}

std::vector<Range> CompressedGraph::find_dependents(const Range& r) const {
  return traverse(r, true, prec_index_, [](const CompressedEdge& e, const Range& cur) { return find_dep(e, cur); });
}

std::vector<Range> CompressedGraph::direct_dependents(const Range& r) const {
  return traverse(r, false, prec_index_,
                  [](const CompressedEdge& e, const Range& cur) { return find_direct_dep(e, cur); });
}

std::vector<Range> CompressedGraph::find_precedents(const Range& s) const {
  return traverse(s, true, dep_index_, [](const CompressedEdge& e, const Range& cur) -> std::optional<Range> {
    auto clip = intersect(cur, e.dep);
    if (!clip) return std::nullopt;
    return find_prec(e, *clip);
  });
}

std::vector<Range> CompressedGraph::direct_precedents(const Range& s) const {
  return traverse(s, false, dep_index_, [](const CompressedEdge& e, const Range& cur) -> std::optional<Range> {
    auto clip = intersect(cur, e.dep);
    if (!clip) return std::nullopt;
    return find_direct_prec(e, *clip);
  });
}

GraphStats CompressedGraph::stats() const {
  GraphStats s;
  std::unordered_set<Range> vertices;
  for (const auto& [id, e] : edges_) {
    vertices.insert(e.prec);
    vertices.insert(e.dep);
  }
  s.edges = static_cast<std::int64_t>(edges_.size());
  s.vertices = static_cast<std::int64_t>(vertices.size());
  s.raw_edges = raw_edges_;
  s.raw_vertices = raw_vertices_.size();
  s.edge_ratio = s.edges ? double(s.raw_edges) / double(s.edges) : 0.0;
  s.vertex_ratio = s.vertices ? double(s.raw_vertices) / double(s.vertices) : 0.0;
  return s;
}

ReducedEdges CompressedGraph::reduced_edges_by_pattern() const {
  ReducedEdges out;
  for (PatternKind p : kAllPatterns) out[p] = 0;
  for (const auto& [id, e] : edges_) out[e.kind] += e.count - 1;
  return out;
}

std::vector<CompressedEdge> CompressedGraph::edges() const {
  std::vector<CompressedEdge> out;
  out.reserve(edges_.size());
  for (const auto& [id, e] : edges_) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const CompressedEdge& a, const CompressedEdge& b) {
    return std::tie(a.dep.head, a.prec.head, a.prec.tail, a.dep.tail, a.kind) <
           std::tie(b.dep.head, b.prec.head, b.prec.tail, b.dep.tail, b.kind);
  });
  return out;
}

std::vector<RawDependency> CompressedGraph::decompress_all() const {
  std::vector<RawDependency> out;
  out.reserve(static_cast<std::size_t>(raw_edges_));
  for (const auto& [id, e] : edges_) {
    auto part = decompress(e);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CompressedGraph CompressedGraph::from_edges(std::span<const CompressedEdge> edges, PatternSet patterns) {
  CompressedGraph g(patterns);
  for (const CompressedEdge& e : edges) {
    g.add_edge(e);
    g.raw_edges_ += e.count;
    for (const RawDependency& d : decompress(e)) {
      g.raw_vertices_.add(d.prec);
      g.raw_vertices_.add(Range(d.dep));
    }
  }
  return g;
}

}  // namespace taco
