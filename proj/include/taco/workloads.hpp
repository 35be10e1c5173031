#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "taco/sheet_dump.hpp"

namespace taco {

enum class WorkloadKind : std::uint8_t { RunTotalFast, RunTotalSlow, Rate, ModifySlowToFast, RandomPatterned };

std::string_view workload_name(WorkloadKind k);
/// Accepts the names printed by workload_name, case-insensitively.
std::optional<WorkloadKind> parse_workload_kind(std::string_view name);

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::RunTotalFast;
  std::int32_t rows = 10;
  std::int32_t modify_rows = 0;   // ModifySlowToFast
  std::uint64_t seed = 0;         // RandomPatterned
  double outlier_pct = 0.0;       // RandomPatterned, in [0, 1]
  std::int32_t columns = 0;       // RandomPatterned; 0 draws a width in [2, 30]
};

struct Workload {
  SheetDump sheet;
  /// Cells to rewrite after loading, in order (ModifySlowToFast).
  std::vector<CellRecord> edits;
  /// RandomPatterned only: the edge count a column-major greedy build reaches
  /// when no outliers were placed.
  std::optional<std::int64_t> expected_edges;
};

/// Deterministic for a given spec. Throws BoundsError when the sheet would
/// leave the grid and Error for an inconsistent spec.
Workload generate(const WorkloadSpec& spec);

struct Percentiles {
  double max = 0;
  double p75 = 0;
  double median = 0;
  double mean = 0;
};

/// Nearest-rank percentiles (lower median) and arithmetic mean. Throws Error
/// on an empty sample.
Percentiles percentiles(std::span<const double> samples);

}  // namespace taco
