#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "taco/cellspace.hpp"

namespace taco {

using Handle = std::uint64_t;

struct IndexEntry {
  Range range;
  Handle handle;

  friend auto operator<=>(const IndexEntry&, const IndexEntry&) = default;
};

/// Rectangle-overlap index over (range, handle) entries, backed by an R-tree.
/// Overlap queries return exactly the entries whose range intersects the
/// probe. Reads are safe to run concurrently; writes need exclusive access.
class SpatialIndex {
 public:
  SpatialIndex();
  SpatialIndex(const SpatialIndex& other);
  SpatialIndex& operator=(const SpatialIndex& other);
  SpatialIndex(SpatialIndex&&) noexcept;
  SpatialIndex& operator=(SpatialIndex&&) noexcept;
  ~SpatialIndex();

  void insert(const Range& r, Handle h);
  /// Removes one entry equal to (r, h). Returns false if absent.
  bool remove(const Range& r, Handle h);
  /// Appends every entry overlapping `probe` to `out`.
  void query(const Range& probe, std::vector<IndexEntry>& out) const;
  std::vector<IndexEntry> query(const Range& probe) const;

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  void clear();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace taco
