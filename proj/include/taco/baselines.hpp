#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "taco/compressed_graph.hpp"
#include "taco/formula.hpp"
#include "taco/spatial_index.hpp"

namespace taco {

/// Fixed partition of the sheet into containers of 256 columns by 256 rows
/// (128 rows beyond row 32768). A range is listed in every container it
/// overlaps. Same interface as SpatialIndex.
class ContainerGrid {
 public:
  struct Bucket {
    std::int32_t col = 0;
    std::int32_t row = 0;
    friend bool operator==(const Bucket&, const Bucket&) = default;
  };

  static std::int32_t col_bucket(std::int32_t col);
  static std::int32_t row_bucket(std::int32_t row);
  static Bucket bucket_of(Cell c) { return {col_bucket(c.col), row_bucket(c.row)}; }

  void insert(const Range& r, Handle h);
  bool remove(const Range& r, Handle h);
  /// Entries overlapping `probe`, each reported once.
  void query(const Range& probe, std::vector<IndexEntry>& out) const;
  std::vector<IndexEntry> query(const Range& probe) const;

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  void clear();
  std::size_t container_count() const { return containers_.size(); }

 private:
  static std::uint64_t key(std::int32_t cb, std::int32_t rb) {
    return (std::uint64_t(std::uint32_t(cb)) << 32) | std::uint32_t(rb);
  }
  template <class Fn>
  void for_each_bucket(const Range& r, Fn&& fn) const;

  std::unordered_map<std::uint64_t, std::vector<IndexEntry>> containers_;
  std::size_t size_ = 0;
};

/// Formula graph without compression: every dependency is kept, vertices are
/// the distinct referenced ranges and formula cells, and queries run a BFS
/// that probes `Index` for overlapping vertices at each step.
template <class Index>
class UncompressedGraph {
 public:
  void insert(const Dependency& d);
  void insert(const RawDependency& d) { insert(Dependency{d.prec, d.dep, {}}); }
  void clear(const Range& s);
  void update(Cell cell, std::span<const Dependency> deps);

  std::vector<Range> find_dependents(const Range& r) const;
  std::vector<Range> find_precedents(const Range& s) const;
  std::vector<Range> direct_dependents(const Range& r) const;
  std::vector<Range> direct_precedents(const Range& s) const;

  GraphStats stats() const;
  std::int64_t raw_edge_count() const { return edge_count_; }
  /// Every stored dependency, sorted.
  std::vector<RawDependency> dependencies() const;

 private:
  struct PrecVertex {
    Handle handle = 0;
    std::vector<Cell> dependents;
  };
  struct DepVertex {
    Handle handle = 0;
    std::vector<Range> precedents;
  };

  std::vector<Range> dependents_bfs(const Range& r, bool transitive) const;
  std::vector<Range> precedents_bfs(const Range& s, bool transitive) const;

  std::unordered_map<Range, PrecVertex> precs_;
  std::unordered_map<Cell, DepVertex> deps_;
  std::unordered_map<Handle, Range> prec_by_handle_;
  std::unordered_map<Handle, Cell> dep_by_handle_;
  Index prec_index_;
  Index dep_index_;
  Handle next_handle_ = 1;
  std::int64_t edge_count_ = 0;
};

using NoCompGraph = UncompressedGraph<SpatialIndex>;
using CalcGraph = UncompressedGraph<ContainerGrid>;

extern template class UncompressedGraph<SpatialIndex>;
extern template class UncompressedGraph<ContainerGrid>;

}  // namespace taco
