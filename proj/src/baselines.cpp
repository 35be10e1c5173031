#include "taco/baselines.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "taco/errors.hpp"
#include "taco/range_set.hpp"

namespace taco {

namespace {

constexpr std::int32_t kColsPerBucket = 256;
constexpr std::int32_t kDenseRows = 1 << 15;
constexpr std::int32_t kRowsPerDenseBucket = 256;
constexpr std::int32_t kRowsPerSparseBucket = 128;

}  // namespace

std::int32_t ContainerGrid::col_bucket(std::int32_t col) { return (col - 1) / kColsPerBucket; }

std::int32_t ContainerGrid::row_bucket(std::int32_t row) {
  if (row <= kDenseRows) return (row - 1) / kRowsPerDenseBucket;
  return kDenseRows / kRowsPerDenseBucket + (row - 1 - kDenseRows) / kRowsPerSparseBucket;
}

template <class Fn>
void ContainerGrid::for_each_bucket(const Range& r, Fn&& fn) const {
  const Bucket lo = bucket_of(r.head);
  const Bucket hi = bucket_of(r.tail);
  for (std::int32_t cb = lo.col; cb <= hi.col; ++cb)
    for (std::int32_t rb = lo.row; rb <= hi.row; ++rb) fn(key(cb, rb));
}

void ContainerGrid::insert(const Range& r, Handle h) {
  for_each_bucket(r, [&](std::uint64_t k) { containers_[k].push_back({r, h}); });
  ++size_;
}

bool ContainerGrid::remove(const Range& r, Handle h) {
  bool found = false;
  const IndexEntry target{r, h};
  for_each_bucket(r, [&](std::uint64_t k) {
    auto it = containers_.find(k);
    if (it == containers_.end()) return;
    auto& list = it->second;
    auto pos = std::find(list.begin(), list.end(), target);
    if (pos == list.end()) return;
    *pos = list.back();
    list.pop_back();
    if (list.empty()) containers_.erase(it);
    found = true;
  });
  if (found) --size_;
  return found;
}

void ContainerGrid::query(const Range& probe, std::vector<IndexEntry>& out) const {
  std::unordered_set<Handle> seen;
  auto scan = [&](const std::vector<IndexEntry>& list) {
    for (const IndexEntry& entry : list)
      if (entry.range.overlaps(probe) && seen.insert(entry.handle).second) out.push_back(entry);
  };
  const Bucket lo = bucket_of(probe.head);
  const Bucket hi = bucket_of(probe.tail);
  const std::int64_t span = std::int64_t(hi.col - lo.col + 1) * (hi.row - lo.row + 1);
  if (span > static_cast<std::int64_t>(containers_.size())) {
    for (const auto& [k, list] : containers_) {
      auto cb = std::int32_t(k >> 32);
      auto rb = std::int32_t(k & 0xffffffffu);
      if (cb >= lo.col && cb <= hi.col && rb >= lo.row && rb <= hi.row) scan(list);
    }
    return;
  }
  for_each_bucket(probe, [&](std::uint64_t k) {
    if (auto it = containers_.find(k); it != containers_.end()) scan(it->second);
  });
}

std::vector<IndexEntry> ContainerGrid::query(const Range& probe) const {
  std::vector<IndexEntry> out;
  query(probe, out);
  return out;
}

void ContainerGrid::clear() {
  containers_.clear();
  size_ = 0;
}

template <class Index>
void UncompressedGraph<Index>::insert(const Dependency& d) {
  if (!d.prec.valid() || !in_grid(d.prec.head) || !in_grid(d.prec.tail) || !in_grid(d.dep))
    throw BoundsError("dependency outside the grid");
  if (d.prec.contains(d.dep))
    throw GraphError("formula at " + to_a1(d.dep) + " references its own cell via " + to_a1(d.prec));

  auto [pit, new_prec] = precs_.try_emplace(d.prec);
  if (new_prec) {
    pit->second.handle = next_handle_++;
    prec_by_handle_.emplace(pit->second.handle, d.prec);
    prec_index_.insert(d.prec, pit->second.handle);
  }
  pit->second.dependents.push_back(d.dep);

  auto [dit, new_dep] = deps_.try_emplace(d.dep);
  if (new_dep) {
    dit->second.handle = next_handle_++;
    dep_by_handle_.emplace(dit->second.handle, d.dep);
    dep_index_.insert(Range(d.dep), dit->second.handle);
  }
  dit->second.precedents.push_back(d.prec);
  ++edge_count_;
}

template <class Index>
void UncompressedGraph<Index>::clear(const Range& s) {
  for (const IndexEntry& hit : dep_index_.query(s)) {
    const Cell cell = dep_by_handle_.at(hit.handle);
    DepVertex vertex = std::move(deps_.at(cell));
    deps_.erase(cell);
    dep_by_handle_.erase(hit.handle);
    dep_index_.remove(Range(cell), hit.handle);

    for (const Range& prec : vertex.precedents) {
      PrecVertex& pv = precs_.at(prec);
      auto pos = std::find(pv.dependents.begin(), pv.dependents.end(), cell);
      pv.dependents.erase(pos);
      --edge_count_;
      if (pv.dependents.empty()) {
        prec_index_.remove(prec, pv.handle);
        prec_by_handle_.erase(pv.handle);
        precs_.erase(prec);
      }
    }
  }
}

template <class Index>
void UncompressedGraph<Index>::update(Cell cell, std::span<const Dependency> deps) {
  for (const Dependency& d : deps) {
    if (d.dep != cell) throw GraphError("update dependency does not belong to " + to_a1(cell));
    if (d.prec.contains(d.dep))
      throw GraphError("formula at " + to_a1(d.dep) + " references its own cell via " + to_a1(d.prec));
  }
  clear(Range(cell));
  for (const Dependency& d : deps) insert(d);
}

template <class Index>
std::vector<Range> UncompressedGraph<Index>::dependents_bfs(const Range& r, bool transitive) const {
  RangeSet visited;
  std::unordered_set<Handle> expanded;
  std::deque<Range> queue{r};
  std::vector<IndexEntry> hits;
  while (!queue.empty()) {
    Range current = queue.front();
    queue.pop_front();
    hits.clear();
    prec_index_.query(current, hits);
    for (const IndexEntry& hit : hits) {
      if (!expanded.insert(hit.handle).second) continue;
      for (Cell dep : precs_.at(prec_by_handle_.at(hit.handle)).dependents)
        for (const Range& piece : visited.add_uncovered(Range(dep)))
          if (transitive) queue.push_back(piece);
    }
  }
  return visited.ranges();
}

template <class Index>
std::vector<Range> UncompressedGraph<Index>::precedents_bfs(const Range& s, bool transitive) const {
  RangeSet visited;
  std::unordered_set<Handle> expanded;
  std::deque<Range> queue{s};
  std::vector<IndexEntry> hits;
  while (!queue.empty()) {
    Range current = queue.front();
    queue.pop_front();
    hits.clear();
    dep_index_.query(current, hits);
    for (const IndexEntry& hit : hits) {
      if (!expanded.insert(hit.handle).second) continue;
      for (const Range& prec : deps_.at(dep_by_handle_.at(hit.handle)).precedents)
        for (const Range& piece : visited.add_uncovered(prec))
          if (transitive) queue.push_back(piece);
    }
  }
  return visited.ranges();
}

template <class Index>
std::vector<Range> UncompressedGraph<Index>::find_dependents(const Range& r) const {
  return dependents_bfs(r, true);
}

template <class Index>
std::vector<Range> UncompressedGraph<Index>::find_precedents(const Range& s) const {
  return precedents_bfs(s, true);
}

template <class Index>
std::vector<Range> UncompressedGraph<Index>::direct_dependents(const Range& r) const {
  return dependents_bfs(r, false);
}

template <class Index>
std::vector<Range> UncompressedGraph<Index>::direct_precedents(const Range& s) const {
  return precedents_bfs(s, false);
}

template <class Index>
GraphStats UncompressedGraph<Index>::stats() const {
  std::unordered_set<Range> vertices;
  for (const auto& [range, v] : precs_) vertices.insert(range);
  for (const auto& [cell, v] : deps_) vertices.insert(Range(cell));
  GraphStats s;
  s.edges = s.raw_edges = edge_count_;
  s.vertices = s.raw_vertices = static_cast<std::int64_t>(vertices.size());
  s.edge_ratio = s.edges ? 1.0 : 0.0;
  s.vertex_ratio = s.vertices ? 1.0 : 0.0;
  return s;
}

template <class Index>
std::vector<RawDependency> UncompressedGraph<Index>::dependencies() const {
  std::vector<RawDependency> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (const auto& [cell, v] : deps_)
    for (const Range& prec : v.precedents) out.push_back({prec, cell});
  std::sort(out.begin(), out.end());
  return out;
}

template class UncompressedGraph<SpatialIndex>;
template class UncompressedGraph<ContainerGrid>;

}  // namespace taco
