#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "taco/cellspace.hpp"
#include "taco/formula.hpp"
#include "taco/patterns.hpp"
#include "taco/range_set.hpp"
#include "taco/spatial_index.hpp"

namespace taco {

using EdgeId = Handle;

struct GraphStats {
  std::int64_t edges = 0;         // |E|
  std::int64_t vertices = 0;      // |V|
  std::int64_t raw_edges = 0;     // |E'|, uncompressed dependencies
  std::int64_t raw_vertices = 0;  // |V'|, distinct uncompressed ranges
  double edge_ratio = 0.0;        // |E'| / |E|
  double vertex_ratio = 0.0;      // |V'| / |V|
};

/// Per-pattern sum of (count - 1): how many edges each pattern saved.
using ReducedEdges = std::map<PatternKind, std::int64_t>;

/// A compression produced while inserting one dependency, paired with the
/// edge it would replace.
struct MergeCandidate {
  CompressedEdge merged;
  CompressedEdge old;
  EdgeId old_id = 0;
};

/// Picks the winning merge: column axis first, then RRChain over other
/// patterns, then agreement with the `$` hints, then pattern order
/// (RRChain, RR, FR, RF, FF), then the old edge's dep head. Returns an index
/// into `candidates`, which must be non-empty.
std::size_t select_winner(std::span<const MergeCandidate> candidates, const FixednessHints& hints);

/// Counts distinct uncompressed vertices (referenced ranges and formula
/// cells) under insert/remove.
class VertexCounter {
 public:
  void add(const Range& r) { ++counts_[r]; }
  void remove(const Range& r);
  std::int64_t size() const { return static_cast<std::int64_t>(counts_.size()); }
  void clear() { counts_.clear(); }

 private:
  std::unordered_map<Range, std::int64_t> counts_;
};

/// Formula graph compressed with tabular-locality patterns. Queries run
/// directly on the compressed edges. Single writer, multiple readers: const
/// members may run concurrently.
class CompressedGraph {
 public:
  explicit CompressedGraph(PatternSet patterns = PatternSet::all());

  /// Greedy insertion: merges `d` into an adjacent edge when some enabled
  /// pattern fits, else stores it as a Single edge. Throws GraphError when the
  /// formula cell lies inside its own precedent.
  void insert(const Dependency& d);

  /// Removes the formulas in `s`; references to `s` from elsewhere stay.
  void clear(const Range& s);

  /// clear(cell) followed by inserting `deps` in order.
  void update(Cell cell, std::span<const Dependency> deps);

  /// Transitive dependents of `r` as disjoint ranges (not coalesced).
  std::vector<Range> find_dependents(const Range& r) const;
  /// Transitive precedents of `s` as disjoint ranges.
  std::vector<Range> find_precedents(const Range& s) const;
  /// First hop only.
  std::vector<Range> direct_dependents(const Range& r) const;
  std::vector<Range> direct_precedents(const Range& s) const;

  GraphStats stats() const;
  ReducedEdges reduced_edges_by_pattern() const;

  std::size_t edge_count() const { return edges_.size(); }
  std::int64_t raw_edge_count() const { return raw_edges_; }
  std::int64_t raw_vertex_count() const { return raw_vertices_.size(); }
  const PatternSet& patterns() const { return patterns_; }

  /// Edges sorted by dep head, then prec head (the export order).
  std::vector<CompressedEdge> edges() const;
  /// Every uncompressed dependency, sorted.
  std::vector<RawDependency> decompress_all() const;

  /// Rebuilds a graph from explicit edges (used by import). Raw counters are
  /// recomputed from the edges.
  static CompressedGraph from_edges(std::span<const CompressedEdge> edges,
                                    PatternSet patterns = PatternSet::all());

 private:
  template <class Step>
  std::vector<Range> traverse(const Range& start, bool transitive, const SpatialIndex& index,
                              Step&& step) const;

  EdgeId add_edge(const CompressedEdge& e);
  void drop_edge(EdgeId id);

  PatternSet patterns_;
  std::unordered_map<EdgeId, CompressedEdge> edges_;
  SpatialIndex prec_index_;
  SpatialIndex dep_index_;
  EdgeId next_id_ = 1;
  std::int64_t raw_edges_ = 0;
  VertexCounter raw_vertices_;
};

}  // namespace taco
