#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "equivalence.hpp"
#include "kernel_check.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "taco/baselines.hpp"
#include "taco/compressed_graph.hpp"
#include "taco/range_set.hpp"
#include "taco/report.hpp"
#include "taco/sheet_dump.hpp"
#include "taco/workloads.hpp"

using namespace taco;
namespace tt = taco::testing;

namespace {

using Clock = std::chrono::steady_clock;

// Pinned tolerances and budgets.
constexpr double kBenchmarkBudgetS = 10.0;
constexpr double kOracleBudgetS = 120.0;
constexpr double kMaintenanceBudgetS = 120.0;
constexpr double kKernelBudgetS = 60.0;
constexpr double kShapeBudgetS = 180.0;
constexpr double kTacoMaxRatio = 5.0;
constexpr double kNoCompMinRatio = 10.0;
constexpr std::int32_t kShapeSmallN = 10'000;
constexpr std::int32_t kShapeLargeN = 500'000;
constexpr int kOracleSheets = 200;
constexpr int kMaintenanceRuns = 50;
constexpr int kMaintenanceEdits = 200;
constexpr int kKernelRuns = 500;
constexpr int kKernelMaxLen = 50;
constexpr int kParityRanges = 1'000;
constexpr int kParityProbes = 10'000;
constexpr std::int32_t kBenchmarkRows[] = {10, 1'000, 100'000};

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CompressedGraph build_taco(const SheetDump& dump) {
  CompressedGraph g;
  for (const Dependency& d : sheet_dependencies(dump)) g.insert(d);
  return g;
}

template <class Graph>
Graph build_raw(const std::vector<RawDependency>& deps) {
  Graph g;
  for (const RawDependency& d : deps) g.insert(d);
  return g;
}

std::vector<RawDependency> uncompressed(const SheetDump& dump) {
  std::vector<RawDependency> out;
  for (const Dependency& d : sheet_dependencies(dump)) out.push_back({d.prec, d.dep});
  std::sort(out.begin(), out.end());
  return out;
}

// Smallest range covering every cell of the sheet and every referenced range.
Range sheet_bounds(const SheetDump& dump) {
  Range b(Cell{1, 1});
  for (const CellRecord& rec : dump) b = bounding(b, Range(rec.cell));
  for (const Dependency& d : sheet_dependencies(dump)) b = bounding(b, d.prec);
  return b;
}

std::optional<std::string> accounting_violation(const CompressedGraph& g) {
  std::int64_t counts = 0;
  for (const CompressedEdge& e : g.edges()) counts += e.count;
  std::int64_t reduced = 0;
  for (const auto& [kind, n] : g.reduced_edges_by_pattern()) reduced += n;
  const std::int64_t raw = g.raw_edge_count();
  const auto edges = static_cast<std::int64_t>(g.edge_count());
  if (counts != raw) return "sum of counts " + std::to_string(counts) + " != raw edges " + std::to_string(raw);
  if (reduced != raw - edges)
    return "sum of reduced " + std::to_string(reduced) + " != " + std::to_string(raw) + " - " + std::to_string(edges);
  return std::nullopt;
}

// The seeded RandomPatterned sheets shared by the equivalence criteria.
std::vector<SheetDump> oracle_suite() {
  std::vector<SheetDump> out;
  std::mt19937_64 rng(20240101);
  for (int k = 0; k < kOracleSheets; ++k) {
    WorkloadSpec spec{WorkloadKind::RandomPatterned,
                      std::uniform_int_distribution<std::int32_t>(2, 30)(rng)};
    spec.seed = static_cast<std::uint64_t>(k + 1);
    spec.outlier_pct = 0.2;
    spec.columns = 0;
    out.push_back(generate(spec).sheet);
  }
  return out;
}

const std::vector<SheetDump>& suite() {
  static const std::vector<SheetDump> sheets = oracle_suite();
  return sheets;
}

std::string kinds_of(const CompressedGraph& g) {
  std::ostringstream out;
  for (const CompressedEdge& e : g.edges()) out << pattern_name(e.kind) << ' ';
  return out.str();
}

Outcome run_total_fast() {
  Outcome o;
  for (std::int32_t n : kBenchmarkRows) {
    CompressedGraph g = build_taco(generate({WorkloadKind::RunTotalFast, n}).sheet);
    auto reduced = g.reduced_edges_by_pattern();
    std::multiset<PatternKind> kinds;
    for (const CompressedEdge& e : g.edges()) kinds.insert(e.kind);
    if (kinds != std::multiset<PatternKind>{PatternKind::RR, PatternKind::RRChain})
      o.fail("N=" + std::to_string(n) + " edges: " + kinds_of(g));
    else if (reduced[PatternKind::RR] != n - 1 || reduced[PatternKind::RRChain] != n - 2)
      o.fail("N=" + std::to_string(n) + " reduced RR " + std::to_string(reduced[PatternKind::RR]) + ", RRChain " +
             std::to_string(reduced[PatternKind::RRChain]));
  }
  if (o.pass) o.detail = "2 edges (RR, RRChain) at N = 10, 1000, 100000";
  return o;
}

Outcome run_total_slow() {
  Outcome o;
  for (std::int32_t n : kBenchmarkRows) {
    CompressedGraph g = build_taco(generate({WorkloadKind::RunTotalSlow, n}).sheet);
    if (g.edge_count() != 1 || g.edges().front().kind != PatternKind::FR)
      o.fail("N=" + std::to_string(n) + " edges: " + kinds_of(g));
  }
  if (o.pass) o.detail = "1 FR edge at N = 10, 1000, 100000";
  return o;
}

Outcome rate() {
  Outcome o;
  for (std::int32_t n : kBenchmarkRows) {
    CompressedGraph g = build_taco(generate({WorkloadKind::Rate, n}).sheet);
    std::multiset<PatternKind> kinds;
    for (const CompressedEdge& e : g.edges()) kinds.insert(e.kind);
    if (kinds != std::multiset<PatternKind>{PatternKind::RR, PatternKind::FF})
      o.fail("N=" + std::to_string(n) + " edges: " + kinds_of(g));
  }
  if (o.pass) o.detail = "2 edges (RR, FF) at N = 10, 1000, 100000";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::int64_t probes = 0;
  for (std::size_t k = 0; k < suite().size() && o.pass; ++k) {
    const SheetDump& dump = suite()[k];
    const auto deps = uncompressed(dump);
    const Range bounds = sheet_bounds(dump);
    CompressedGraph taco = build_taco(dump);
    NoCompGraph nocomp = build_raw<NoCompGraph>(deps);
    if (auto diff = tt::first_disagreement(taco, nocomp, bounds)) o.fail("sheet " + std::to_string(k) + ": " + *diff);
    else if (auto diff = tt::first_oracle_disagreement(taco, tt::CellOracle(deps), bounds))
      o.fail("sheet " + std::to_string(k) + ": " + *diff);
    probes += bounds.area();
  }
  if (o.pass) o.detail = std::to_string(suite().size()) + " sheets, " + std::to_string(probes) + " cells probed";
  return o;
}

Outcome maintenance() {
  Outcome o;
  std::int64_t edits = 0;
  for (int run = 0; run < kMaintenanceRuns && o.pass; ++run) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(7000 + run));
    WorkloadSpec spec{WorkloadKind::RandomPatterned, std::uniform_int_distribution<std::int32_t>(2, 30)(rng)};
    spec.seed = static_cast<std::uint64_t>(run + 1);
    spec.outlier_pct = 0.2;
    const SheetDump dump = generate(spec).sheet;
    const Range bounds = sheet_bounds(dump);
    CompressedGraph g = build_taco(dump);
    tt::SheetModel model(dump);
    const int steps = std::uniform_int_distribution<int>(1, kMaintenanceEdits)(rng);
    for (int step = 0; step < steps; ++step) {
      const tt::EditOp op = tt::random_edit(rng, bounds, model);
      model.apply(op);
      if (const auto* set = std::get_if<tt::SetOp>(&op)) {
        std::vector<Dependency> deps;
        if (!set->content.empty() && set->content.front() == '=') deps = extract_refs(set->content, set->cell);
        g.update(set->cell, deps);
      } else {
        g.clear(std::get<tt::ClearOp>(op).range);
      }
      ++edits;
    }
    const auto surviving = model.dependencies();
    if (g.decompress_all() != surviving) {
      o.fail("run " + std::to_string(run) + ": decompressed edges differ from surviving dependencies");
      break;
    }
    NoCompGraph rebuilt = build_raw<NoCompGraph>(surviving);
    if (auto diff = tt::first_disagreement(g, rebuilt, bounds)) o.fail("run " + std::to_string(run) + ": " + *diff);
    else if (auto bad = accounting_violation(g)) o.fail("run " + std::to_string(run) + ": " + *bad);
  }
  if (o.pass) o.detail = std::to_string(kMaintenanceRuns) + " runs, " + std::to_string(edits) + " edits";
  return o;
}

Outcome kernel_oracle() {
  Outcome o;
  tt::KernelReport report;
  std::mt19937_64 rng(424242);
  for (PatternKind kind :
       {PatternKind::RR, PatternKind::RF, PatternKind::FR, PatternKind::FF, PatternKind::RRChain}) {
    for (int k = 0; k < kKernelRuns; ++k) tt::check_kernel(tt::random_run(kind, rng, k % 2 == 1, kKernelMaxLen), report);
  }
  if (!report.ok()) o.fail(report.failures.front());
  else o.detail = std::to_string(5 * kKernelRuns) + " runs, " + std::to_string(report.probes) + " probes";
  return o;
}

Outcome accounting() {
  Outcome o;
  std::int64_t graphs = 0;
  auto check = [&](const std::string& name, const SheetDump& dump) {
    ++graphs;
    if (auto bad = accounting_violation(build_taco(dump))) o.fail(name + ": " + *bad);
  };
  for (WorkloadKind kind : {WorkloadKind::RunTotalFast, WorkloadKind::RunTotalSlow, WorkloadKind::Rate})
    for (std::int32_t n : kBenchmarkRows)
      check(std::string(workload_name(kind)) + " N=" + std::to_string(n), generate({kind, n}).sheet);
  for (std::size_t k = 0; k < suite().size(); ++k) check("random sheet " + std::to_string(k), suite()[k]);
  if (o.pass) o.detail = std::to_string(graphs) + " graphs";
  return o;
}

template <class Graph>
double median_query_seconds(const Graph& g, int reps) {
  std::vector<double> samples;
  for (int k = 0; k < reps; ++k) {
    auto start = Clock::now();
    auto found = g.find_dependents(Range(Cell{1, 1}));
    samples.push_back(seconds_since(start));
    if (found.empty()) return -1.0;
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

Outcome asymptotic_shape() {
  Outcome o;
  const SheetDump small = generate({WorkloadKind::RunTotalFast, kShapeSmallN}).sheet;
  const SheetDump large = generate({WorkloadKind::RunTotalFast, kShapeLargeN}).sheet;
  const double taco_small = median_query_seconds(build_taco(small), 31);
  const double taco_large = median_query_seconds(build_taco(large), 31);
  const double nocomp_small = median_query_seconds(build_raw<NoCompGraph>(uncompressed(small)), 7);
  const double nocomp_large = median_query_seconds(build_raw<NoCompGraph>(uncompressed(large)), 3);
  const double taco_ratio = taco_large / taco_small;
  const double nocomp_ratio = nocomp_large / nocomp_small;
  char buf[160];
  std::snprintf(buf, sizeof buf, "taco ratio %.2f (limit < %.0f), nocomp ratio %.1f (limit >= %.0f)", taco_ratio,
                kTacoMaxRatio, nocomp_ratio, kNoCompMinRatio);
  o.detail = buf;
  if (taco_small < 0 || nocomp_small < 0) o.fail("A1 has no dependents");
  if (!(taco_ratio < kTacoMaxRatio) || !(nocomp_ratio >= kNoCompMinRatio)) o.fail(buf);
  return o;
}

Outcome calc_parity() {
  Outcome o;
  std::mt19937_64 rng(777);
  // Straddles the 256-wide column buckets and the row-bucket change at 32768.
  const Range region({1, 32'000}, {700, 34'000});
  ContainerGrid grid;
  SpatialIndex index;
  for (int k = 0; k < kParityRanges; ++k) {
    Range r = tt::random_range(rng, region, 300);
    grid.insert(r, static_cast<Handle>(k));
    index.insert(r, static_cast<Handle>(k));
  }
  for (int k = 0; k < kParityProbes && o.pass; ++k) {
    Range probe = tt::random_range(rng, region, 120);
    std::set<Handle> a, b;
    for (const IndexEntry& e : grid.query(probe)) a.insert(e.handle);
    for (const IndexEntry& e : index.query(probe)) b.insert(e.handle);
    if (a != b) o.fail("overlap query " + to_a1(probe) + " differs");
  }
  for (std::size_t k = 0; k < suite().size() && o.pass; ++k) {
    const auto deps = uncompressed(suite()[k]);
    const Range bounds = sheet_bounds(suite()[k]);
    CalcGraph calc = build_raw<CalcGraph>(deps);
    NoCompGraph nocomp = build_raw<NoCompGraph>(deps);
    if (auto diff = tt::first_disagreement(calc, nocomp, bounds)) o.fail("sheet " + std::to_string(k) + ": " + *diff);
  }
  if (o.pass)
    o.detail = std::to_string(kParityProbes) + " probes over " + std::to_string(kParityRanges) + " ranges, " +
               std::to_string(suite().size()) + " sheets";
  return o;
}

Outcome expanding_example() {
  Outcome o;
  SheetDump dump;
  for (auto [addr, content] : {std::pair{"C1", "=SUM($B$1:B1)+SUM($A$1:$A$2)"},
                               std::pair{"C2", "=SUM($B$1:B2)+SUM($A$1:$A$2)"},
                               std::pair{"C3", "=SUM($B$1:B3)+SUM($A$1:$A$2)"}, std::pair{"D4", "=SUM(B1:B4)"}})
    dump.push_back({parse_cell(addr), content});
  CompressedGraph g = build_taco(dump);
  for (const Dependency& d : extract_refs("=SUM($B$1:B4)", parse_cell("C4"))) g.insert(d);
  bool found = false;
  for (const CompressedEdge& e : g.edges())
    found = found || (e.kind == PatternKind::FR && e.prec == parse_a1("B1:B4") && e.dep == parse_a1("C1:C4"));
  if (!found) o.fail("no FR edge B1:B4 -> C1:C4");
  const auto deps = range_strings(coalesce(g.find_dependents(parse_a1("B2"))));
  if (deps != std::vector<std::string>{"C2:C4", "D4"}) {
    std::string got;
    for (const auto& s : deps) got += s + " ";
    o.fail("deps(B2) = " + got);
  }
  if (o.pass) o.detail = "FR B1:B4 -> C1:C4; deps(B2) = C2:C4, D4";
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"runtotalfast-two-edges", kBenchmarkBudgetS, run_total_fast},
      {"runtotalslow-one-fr-edge", kBenchmarkBudgetS, run_total_slow},
      {"rate-rr-plus-ff", kBenchmarkBudgetS, rate},
      {"oracle-equivalence", kOracleBudgetS, oracle_equivalence},
      {"maintenance-equivalence", kMaintenanceBudgetS, maintenance},
      {"pattern-kernel-oracle", kKernelBudgetS, kernel_oracle},
      {"accounting-identity", 0.0, accounting},
      {"asymptotic-shape", kShapeBudgetS, asymptotic_shape},
      {"nocomp-calc-parity", 0.0, calc_parity},
      {"expanding-range-example", 0.0, expanding_example},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    if (c.budget_s > 0 && elapsed > c.budget_s) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "over budget: %.1f s > %.0f s", elapsed, c.budget_s);
      o.fail(buf);
    }
    if (!o.pass) ++failed;
    std::printf("%s %-26s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.name, elapsed, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
