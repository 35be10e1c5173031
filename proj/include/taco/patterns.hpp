#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taco/cellspace.hpp"
#include "taco/formula.hpp"

namespace taco {

/// Compression pattern of an edge. Single is an uncompressed dependency.
///   RR      sliding window: head and tail at fixed offsets from the formula cell
///   RF      shrinking window: relative head, fixed tail
///   FR      expanding window: fixed head, relative tail
///   FF      fixed window
///   RRChain RR where every formula references its neighbour inside the run
enum class PatternKind : std::uint8_t { Single, RR, RF, FR, FF, RRChain };

inline constexpr std::array<PatternKind, 6> kAllPatterns = {
    PatternKind::Single, PatternKind::RR, PatternKind::RF,
    PatternKind::FR,     PatternKind::FF, PatternKind::RRChain};

/// Direction a chain member looks to find its precedent.
enum class ChainDir : std::uint8_t { Above, Below, Left, Right };

std::string_view pattern_name(PatternKind p);
std::optional<PatternKind> parse_pattern_name(std::string_view name);
std::string_view chain_dir_name(ChainDir d);
std::optional<ChainDir> parse_chain_dir(std::string_view name);

struct PatternMeta {
  std::optional<Offset> h_rel;
  std::optional<Offset> t_rel;
  std::optional<Cell> h_fix;
  std::optional<Cell> t_fix;
  std::optional<ChainDir> chain_dir;
  Axis axis = Axis::Column;

  friend bool operator==(const PatternMeta&, const PatternMeta&) = default;
};

/// A run of dependencies sharing one pattern. `dep` is a 1-wide run along
/// `meta.axis`; `prec` is the bounding range of every member's precedent;
/// `count` is the number of dependencies represented.
struct CompressedEdge {
  Range prec;
  Range dep;
  PatternKind kind = PatternKind::Single;
  PatternMeta meta;
  std::int64_t count = 1;

  friend bool operator==(const CompressedEdge&, const CompressedEdge&) = default;
};

/// Enabled subset of the compression patterns (Single is always on).
class PatternSet {
 public:
  static PatternSet all();
  static PatternSet none() { return PatternSet(); }
  /// Parses a comma list such as "rrchain,rr,rf,fr,ff" (case-insensitive).
  static PatternSet parse(std::string_view list);

  PatternSet& enable(PatternKind p) {
    bits_ |= bit(p);
    return *this;
  }
  bool contains(PatternKind p) const { return p == PatternKind::Single || (bits_ & bit(p)) != 0; }

 private:
  static constexpr std::uint8_t bit(PatternKind p) { return std::uint8_t(1u << std::uint8_t(p)); }
  std::uint8_t bits_ = 0;
};

struct RelativePosition {
  Offset head;
  Offset tail;
  friend bool operator==(const RelativePosition&, const RelativePosition&) = default;
};

/// Offsets of the precedent's corners relative to the formula cell.
constexpr RelativePosition rel(const Range& prec, Cell dep) {
  return {prec.head - dep, prec.tail - dep};
}

CompressedEdge single_edge(const Range& prec, Cell dep);
inline CompressedEdge single_edge(const Dependency& d) { return single_edge(d.prec, d.dep); }

/// Tries to absorb `d` into `e` under pattern `kind`. For a compressed `e`,
/// `kind` must be `e.kind`; for a Single `e` any pattern can be tried. `d.dep`
/// must extend `e.dep` by one cell at either end of the run. Returns the merged
/// edge, or nullopt when `d` does not fit.
std::optional<CompressedEdge> add_dep(PatternKind kind, const CompressedEdge& e, const Dependency& d);

/// Dependents inside `e` of `r`, where `r` is clipped to `e.prec`. For RRChain
/// this includes dependents reached through the chain itself.
std::optional<Range> find_dep(const CompressedEdge& e, const Range& r);
/// Like find_dep but only one hop (RRChain behaves as RR).
std::optional<Range> find_direct_dep(const CompressedEdge& e, const Range& r);

/// Precedents inside `e` of `s`, where `s` is clipped to `e.dep`. For RRChain
/// this is the transitive prefix of the chain.
Range find_prec(const CompressedEdge& e, const Range& s);
/// One-hop precedents: the bounding range of the windows of the cells in `s`.
Range find_direct_prec(const CompressedEdge& e, const Range& s);

/// Removes the dependencies of the formula cells in `s` (clipped to `e.dep`)
/// and returns the edges covering the remainder (zero, one or two).
std::vector<CompressedEdge> remove_dep(const CompressedEdge& e, const Range& s);

/// Direct precedent of the formula cell `c` in `e.dep`.
Range window(const CompressedEdge& e, Cell c);

/// Reconstructs every dependency represented by `e`, in run order.
std::vector<RawDependency> decompress(const CompressedEdge& e);

/// The pattern implied by `$` markers under autofill semantics.
PatternKind hinted_pattern(const FixednessHints& hints);

}  // namespace taco
