#include "taco/spatial_index.hpp"

#include <iterator>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/box.hpp>
#include <boost/geometry/geometries/point.hpp>
#include <boost/geometry/index/rtree.hpp>

namespace taco {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace {

using Point = bg::model::point<std::int32_t, 2, bg::cs::cartesian>;
using Box = bg::model::box<Point>;
using Value = std::pair<Box, Handle>;

// Closed boxes over cell coordinates: A1:A2 and A3 do not intersect.
Box to_box(const Range& r) {
  return Box(Point(r.head.col, r.head.row), Point(r.tail.col, r.tail.row));
}

Range to_range(const Box& b) {
  return {{bg::get<bg::min_corner, 0>(b), bg::get<bg::min_corner, 1>(b)},
          {bg::get<bg::max_corner, 0>(b), bg::get<bg::max_corner, 1>(b)}};
}

}  // namespace

struct SpatialIndex::Impl {
  bgi::rtree<Value, bgi::quadratic<16>> tree;
};

SpatialIndex::SpatialIndex() : impl_(std::make_unique<Impl>()) {}
SpatialIndex::SpatialIndex(const SpatialIndex& other) : impl_(std::make_unique<Impl>(*other.impl_)) {}
SpatialIndex& SpatialIndex::operator=(const SpatialIndex& other) {
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}
SpatialIndex::SpatialIndex(SpatialIndex&&) noexcept = default;
SpatialIndex& SpatialIndex::operator=(SpatialIndex&&) noexcept = default;
SpatialIndex::~SpatialIndex() = default;

void SpatialIndex::insert(const Range& r, Handle h) { impl_->tree.insert(Value(to_box(r), h)); }

bool SpatialIndex::remove(const Range& r, Handle h) { return impl_->tree.remove(Value(to_box(r), h)) > 0; }

void SpatialIndex::query(const Range& probe, std::vector<IndexEntry>& out) const {
  auto it = impl_->tree.qbegin(bgi::intersects(to_box(probe)));
  for (; it != impl_->tree.qend(); ++it) out.push_back({to_range(it->first), it->second});
}

std::vector<IndexEntry> SpatialIndex::query(const Range& probe) const {
  std::vector<IndexEntry> out;
  query(probe, out);
  return out;
}

std::size_t SpatialIndex::size() const { return impl_->tree.size(); }

void SpatialIndex::clear() { impl_->tree.clear(); }

}  // namespace taco
