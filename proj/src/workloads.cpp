#include "taco/workloads.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "taco/errors.hpp"

namespace taco {
namespace {

constexpr std::array<std::string_view, 5> kNames = {"runtotalfast", "runtotalslow", "rate", "modifyslowtofast",
                                                    "randompatterned"};

std::string cell(std::int32_t col, std::int32_t row) { return to_a1(Cell{col, row}); }

SheetDump run_total_fast(std::int32_t rows) {
  SheetDump out;
  for (std::int32_t i = 1; i <= rows; ++i) out.push_back({{1, i}, "1"});
  out.push_back({{2, 1}, "=A1"});
  for (std::int32_t i = 2; i <= rows; ++i) out.push_back({{2, i}, "=" + cell(1, i) + "+" + cell(2, i - 1)});
  return out;
}

SheetDump run_total_slow(std::int32_t rows) {
  SheetDump out;
  for (std::int32_t i = 1; i <= rows; ++i) out.push_back({{1, i}, "1"});
  for (std::int32_t i = 1; i <= rows; ++i) out.push_back({{2, i}, "=SUM($A$1:" + cell(1, i) + ")"});
  return out;
}

SheetDump rate(std::int32_t rows) {
  SheetDump out;
  out.push_back({{1, 1}, "0.05"});
  for (std::int32_t i = 1; i <= rows; ++i) out.push_back({{2, i}, std::to_string(100 + i)});
  for (std::int32_t i = 1; i <= rows; ++i) out.push_back({{3, i}, "=" + cell(2, i) + "*$A$1"});
  return out;
}

// --- RandomPatterned ---------------------------------------------------------
//
// Every formula column holds one to three reference templates. Each template
// targets its own block of one or two columns (never the formula column,
// except the chain template which points at the cell above), so different
// templates can never produce the same window. A column's formula rows are
// the rows where every template's window stays inside the sheet.

enum class Template { RR, RF, FR, FF, Chain };

struct Ref {
  Template kind = Template::RR;
  std::int32_t c0 = 1, c1 = 1;  // target columns
  std::int32_t a = 0, b = 0;    // row offsets or fixed rows, depending on kind
};

struct RowSpan {
  std::int32_t lo, hi;
};

RowSpan valid_rows(const Ref& r, std::int32_t rows) {
  switch (r.kind) {
    case Template::RR: return {1 - r.a, rows - r.b};          // window rows i+a .. i+b
    case Template::RF: return {1 - r.a, r.b - r.a};           // i+a .. b
    case Template::FR: return {r.a - r.b, rows - r.b};        // a .. i+b
    case Template::FF: return {1, rows};                      // a .. b
    case Template::Chain: return {2, rows};                   // i-1
  }
  return {1, 0};
}

std::string ref_text(const Ref& r, std::int32_t col, std::int32_t i) {
  FixednessHints h;
  Range w;
  switch (r.kind) {
    case Template::RR: w = {{r.c0, i + r.a}, {r.c1, i + r.b}}; break;
    case Template::RF:
      w = {{r.c0, i + r.a}, {r.c1, r.b}};
      h.tail_col = h.tail_row = true;
      break;
    case Template::FR:
      w = {{r.c0, r.a}, {r.c1, i + r.b}};
      h.head_col = h.head_row = true;
      break;
    case Template::FF:
      w = {{r.c0, r.a}, {r.c1, r.b}};
      h = {true, true, true, true};
      break;
    case Template::Chain: w = Range(Cell{col, i - 1}); break;
  }
  std::string text = format_reference(w, h);
  return w.is_cell() ? text : "SUM(" + text + ")";
}

Workload random_patterned(const WorkloadSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&](std::int32_t lo, std::int32_t hi) {
    return std::uniform_int_distribution<std::int32_t>(lo, hi)(rng);
  };
  const std::int32_t rows = spec.rows;
  const std::int32_t cols = spec.columns > 0 ? spec.columns : uniform(2, 30);
  if (cols > kMaxCol) throw BoundsError("too many columns");
  if (rows < 2 || cols < 2) throw Error("RandomPatterned needs at least 2 rows and 2 columns");

  Workload out;
  std::int64_t expected = 0;
  std::bernoulli_distribution outlier(spec.outlier_pct);
  bool placed_outlier = false;

  for (std::int32_t col = 1; col <= cols; ++col) {
    std::vector<Ref> refs;
    RowSpan span{1, 0};
    if (uniform(0, 2) != 0) {
      for (int attempt = 0; attempt < 8 && refs.empty(); ++attempt) {
        std::vector<std::int32_t> free_cols;
        for (std::int32_t c = 1; c <= cols; ++c)
          if (c != col) free_cols.push_back(c);
        std::shuffle(free_cols.begin(), free_cols.end(), rng);
        const int wanted = uniform(1, 3);
        bool chain_used = false;
        span = {1, rows};
        for (int k = 0; k < wanted; ++k) {
          Ref r;
          r.kind = static_cast<Template>(uniform(0, 4));
          if (r.kind == Template::Chain) {
            if (chain_used) continue;
            chain_used = true;
          } else {
            if (free_cols.empty()) continue;
            r.c0 = r.c1 = free_cols.back();
            free_cols.pop_back();
            if (!free_cols.empty() && free_cols.back() == r.c0 + 1 && uniform(0, 1) == 1) {
              r.c1 = r.c0 + 1;
              free_cols.pop_back();
            }
            switch (r.kind) {
              case Template::RR:
                r.a = uniform(-2, 2);
                r.b = r.a + uniform(0, 2);
                break;
              case Template::RF:
                r.a = uniform(-2, 1);
                r.b = uniform(1, rows);
                break;
              case Template::FR:
                r.a = uniform(1, rows);
                r.b = uniform(-1, 2);
                break;
              case Template::FF:
                r.a = uniform(1, rows);
                r.b = uniform(r.a, std::min(rows, r.a + 3));
                break;
              case Template::Chain: break;
            }
          }
          RowSpan v = valid_rows(r, rows);
          span = {std::max(span.lo, v.lo), std::min(span.hi, v.hi)};
          refs.push_back(r);
        }
        if (refs.empty() || span.hi - span.lo + 1 < 2) refs.clear();
      }
    }

    for (std::int32_t i = 1; i <= rows; ++i) {
      const bool formula_row = !refs.empty() && i >= span.lo && i <= span.hi;
      if (!formula_row) {
        out.sheet.push_back({{col, i}, std::to_string(uniform(0, 99))});
        continue;
      }
      if (outlier(rng)) {
        Cell target{col, i};
        while (target == Cell{col, i}) target = {uniform(1, cols), uniform(1, rows)};
        out.sheet.push_back({{col, i}, "=" + to_a1(target) + "*2"});
        placed_outlier = true;
        continue;
      }
      std::string text = "=";
      for (std::size_t k = 0; k < refs.size(); ++k) {
        if (k) text += "+";
        text += ref_text(refs[k], col, i);
      }
      out.sheet.push_back({{col, i}, std::move(text)});
    }
    if (!refs.empty()) expected += static_cast<std::int64_t>(refs.size());
  }
  if (!placed_outlier) out.expected_edges = expected;
  return out;
}

}  // namespace

std::string_view workload_name(WorkloadKind k) { return kNames[static_cast<std::size_t>(k)]; }

std::optional<WorkloadKind> parse_workload_kind(std::string_view name) {
  std::string lower(name);
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (std::size_t k = 0; k < kNames.size(); ++k)
    if (kNames[k] == lower) return static_cast<WorkloadKind>(k);
  return std::nullopt;
}

Workload generate(const WorkloadSpec& spec) {
  if (spec.rows < 1) throw Error("rows must be positive");
  if (spec.rows > kMaxRow) throw BoundsError("rows exceed the grid");
  if (spec.outlier_pct < 0.0 || spec.outlier_pct > 1.0) throw Error("outlier fraction must be in [0, 1]");
  if (spec.modify_rows < 0 || spec.modify_rows > spec.rows) throw Error("modify rows must be in [0, rows]");

  Workload out;
  switch (spec.kind) {
    case WorkloadKind::RunTotalFast: out.sheet = run_total_fast(spec.rows); break;
    case WorkloadKind::RunTotalSlow: out.sheet = run_total_slow(spec.rows); break;
    case WorkloadKind::Rate: out.sheet = rate(spec.rows); break;
    case WorkloadKind::ModifySlowToFast: {
      out.sheet = run_total_slow(spec.rows);
      const std::int32_t last = std::min(spec.modify_rows + 1, spec.rows);
      for (std::int32_t i = 2; i <= last; ++i)
        out.edits.push_back({{2, i}, "=" + cell(1, i) + "+" + cell(2, i - 1)});
      break;
    }
    case WorkloadKind::RandomPatterned: out = random_patterned(spec); break;
  }
  return out;
}

Percentiles percentiles(std::span<const double> samples) {
  if (samples.empty()) throw Error("percentiles of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  auto rank = [&](double p) {
    auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size())));
    return sorted[std::max<std::size_t>(k, 1) - 1];
  };
  Percentiles out;
  out.max = sorted.back();
  out.p75 = rank(0.75);
  out.median = rank(0.5);
  out.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
  return out;
}

}  // namespace taco
