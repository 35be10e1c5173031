#include "taco/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "taco/engine.hpp"
#include "taco/errors.hpp"
#include "taco/graph_io.hpp"
#include "taco/range_set.hpp"
#include "taco/report.hpp"
#include "taco/sheet.hpp"
#include "taco/trace_service.hpp"
#include "taco/workloads.hpp"

namespace taco {
namespace {

struct UsageError : Error {
  using Error::Error;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

PatternSet env_patterns() {
  const char* env = std::getenv("TACO_PATTERNS");
  if (!env) return PatternSet::all();
  try {
    return PatternSet::parse(env);
  } catch (const Error& e) {
    throw UsageError(std::string("TACO_PATTERNS: ") + e.what());
  }
}

EngineKind engine_from(const std::string& name) {
  auto kind = parse_engine_kind(name);
  if (!kind) throw UsageError("unknown engine '" + name + "'");
  return *kind;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  file << text;
}

struct Options {
  std::string file;
  std::string engine = "taco";
  bool json = false;
  std::string range;
  std::string dir = "deps";
  bool direct = false;
  std::string workload;
  std::int32_t rows = 0;
  std::int32_t modify_rows = 0;
  std::int32_t columns = 0;
  std::uint64_t seed = 0;
  double outlier = 0.0;
  int repeat = 3;
  bool no_header = false;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string sheet;
  std::string out_path = "-";
  std::string edits_path;
};

int cmd_stats(const Options& o, std::ostream& out) {
  Engine engine = build_engine(engine_from(o.engine), read_dump(o.file), env_patterns());
  GraphStats s = engine.stats();
  ReducedEdges reduced = engine.reduced_edges_by_pattern();
  if (o.json) {
    nlohmann::json doc = stats_json(s);
    doc["engine"] = std::string(engine_name(engine.kind()));
    doc["reduced"] = reduced_json(reduced);
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << "engine        " << engine_name(engine.kind()) << "\n"
      << "edges         " << s.edges << "\n"
      << "vertices      " << s.vertices << "\n"
      << "raw edges     " << s.raw_edges << "\n"
      << "raw vertices  " << s.raw_vertices << "\n"
      << "edge ratio    " << s.edge_ratio << "\n"
      << "vertex ratio  " << s.vertex_ratio << "\n";
  for (const auto& [kind, n] : reduced)
    if (kind != PatternKind::Single) out << "reduced " << pattern_name(kind) << std::string(8 - pattern_name(kind).size(), ' ') << n << "\n";
  return 0;
}

int cmd_query(const Options& o, std::ostream& out) {
  Range range;
  try {
    range = parse_a1(o.range);
  } catch (const Error& e) {
    throw UsageError("--range: " + std::string(e.what()));
  }
  Engine engine = build_engine(engine_from(o.engine), read_dump(o.file), env_patterns());
  auto start = Clock::now();
  std::vector<Range> found;
  if (o.dir == "deps")
    found = o.direct ? engine.direct_dependents(range) : engine.find_dependents(range);
  else
    found = o.direct ? engine.direct_precedents(range) : engine.find_precedents(range);
  auto elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();

  std::int64_t cells = 0;
  for (const Range& r : found) cells += r.area();
  std::vector<std::string> shown = range_strings(coalesce(std::move(found)));
  if (o.json) {
    out << nlohmann::json{{"ranges", shown}, {"cells", cells}, {"elapsed_us", elapsed_us}}.dump(2) << "\n";
    return 0;
  }
  for (const std::string& s : shown) out << s << "\n";
  out << "elapsed: " << elapsed_us << " us\n";
  return 0;
}

WorkloadSpec spec_from(const Options& o) {
  auto kind = parse_workload_kind(o.workload);
  if (!kind) throw UsageError("unknown workload '" + o.workload + "'");
  WorkloadSpec spec;
  spec.kind = *kind;
  spec.rows = o.rows;
  spec.modify_rows = o.modify_rows;
  spec.seed = o.seed;
  spec.outlier_pct = o.outlier;
  spec.columns = o.columns;
  return spec;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const EngineKind kind = engine_from(o.engine);
  const WorkloadSpec spec = spec_from(o);
  const PatternSet patterns = env_patterns();
  const Workload w = generate(spec);

  std::vector<std::vector<Dependency>> edits;
  for (const CellRecord& rec : w.edits) edits.push_back(Sheet::dependencies_of(rec.cell, rec.content));

  std::vector<double> build, query, modify;
  for (int k = 0; k < o.repeat; ++k) {
    auto start = Clock::now();
    Engine engine = build_engine(kind, w.sheet, patterns);
    build.push_back(ms_since(start));

    start = Clock::now();
    auto found = engine.find_dependents(Range(Cell{1, 1}));
    query.push_back(ms_since(start));
    (void)found;

    start = Clock::now();
    for (std::size_t i = 0; i < w.edits.size(); ++i) engine.update(w.edits[i].cell, edits[i]);
    modify.push_back(w.edits.empty() ? 0.0 : ms_since(start));
  }

  if (!o.no_header) out << "workload,rows,engine,build_ms,query_ms,modify_ms\n";
  char line[256];
  std::snprintf(line, sizeof line, "%s,%d,%s,%.3f,%.3f,%.3f\n", std::string(workload_name(spec.kind)).c_str(),
                spec.rows, std::string(engine_name(kind)).c_str(), percentiles(build).median,
                percentiles(query).median, percentiles(modify).median);
  out << line;
  return 0;
}

int cmd_generate(const Options& o, std::ostream& out) {
  Workload w = generate(spec_from(o));
  write_text(o.out_path, format_dump(w.sheet), out);
  if (!o.edits_path.empty()) write_text(o.edits_path, format_dump(w.edits), out);
  return 0;
}

int cmd_export(const Options& o, std::ostream& out) {
  Engine engine = build_engine(EngineKind::Taco, read_dump(o.file), env_patterns());
  write_text(o.out_path, export_graph(*engine.compressed()), out);
  return 0;
}

int cmd_import(const Options& o, std::ostream& out) {
  CompressedGraph g = import_graph(read_file(o.file), env_patterns());
  nlohmann::json doc = stats_json(g.stats());
  doc["reduced"] = reduced_json(g.reduced_edges_by_pattern());
  out << doc.dump(2) << "\n";
  return 0;
}

int cmd_serve(const Options& o, std::ostream& out) {
  TraceService service(engine_from(o.engine), env_patterns());
  if (!o.sheet.empty()) service.add_sheet(read_dump(o.sheet), "default");
  httplib::Server server;
  service.bind(server);
  out << "listening on http://" << o.host << ":" << o.port << std::endl;
  if (!server.listen(o.host, o.port)) throw Error("cannot listen on " + o.host + ":" + std::to_string(o.port));
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressed formula graphs for spreadsheets", "taco"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> engines = {"taco", "nocomp", "calc"};

  auto add_engine = [&](CLI::App* sub) {
    sub->add_option("--engine", o.engine, "Graph engine")->check(CLI::IsMember(engines));
  };

  auto* stats = app.add_subcommand("stats", "Print graph statistics for a sheet dump");
  stats->add_option("file", o.file, "Sheet dump")->required()->check(CLI::ExistingFile);
  add_engine(stats);
  stats->add_flag("--json", o.json, "JSON output");

  auto* query = app.add_subcommand("query", "Find dependents or precedents of a range");
  query->add_option("file", o.file, "Sheet dump")->required()->check(CLI::ExistingFile);
  query->add_option("--range", o.range, "A1 or A1:B2")->required();
  query->add_option("--dir", o.dir, "deps or precs")->check(CLI::IsMember({"deps", "precs"}));
  query->add_flag("--direct", o.direct, "First hop only");
  add_engine(query);
  query->add_flag("--json", o.json, "JSON output");

  auto* bench = app.add_subcommand("bench", "Time build, query and modification on a synthetic workload");
  bench->add_option("--workload", o.workload, "runtotalfast|runtotalslow|rate|modifyslowtofast|randompatterned")
      ->required();
  bench->add_option("--rows", o.rows, "Rows")->required()->check(CLI::PositiveNumber);
  bench->add_option("--modify-rows", o.modify_rows, "Rows rewritten by modifyslowtofast");
  bench->add_option("--seed", o.seed, "Seed for randompatterned");
  bench->add_option("--outlier", o.outlier, "Outlier fraction for randompatterned")->check(CLI::Range(0.0, 1.0));
  add_engine(bench);
  bench->add_option("--repeat", o.repeat, "Repetitions (median reported)")->check(CLI::PositiveNumber);
  bench->add_flag("--no-header", o.no_header, "Omit the CSV header");

  auto* gen = app.add_subcommand("generate", "Write a synthetic workload as a sheet dump");
  gen->add_option("--workload", o.workload, "Workload kind")->required();
  gen->add_option("--rows", o.rows, "Rows")->required()->check(CLI::PositiveNumber);
  gen->add_option("--modify-rows", o.modify_rows, "Rows rewritten by modifyslowtofast");
  gen->add_option("--seed", o.seed, "Seed for randompatterned");
  gen->add_option("--outlier", o.outlier, "Outlier fraction")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--columns", o.columns, "Columns for randompatterned");
  gen->add_option("--out", o.out_path, "Output file, '-' for stdout");
  gen->add_option("--edits", o.edits_path, "Write the edit script as a second dump");

  auto* exp = app.add_subcommand("export", "Write the compressed graph as JSON");
  exp->add_option("file", o.file, "Sheet dump")->required()->check(CLI::ExistingFile);
  exp->add_option("--out", o.out_path, "Output file, '-' for stdout");

  auto* imp = app.add_subcommand("import", "Validate an exported graph and print its statistics");
  imp->add_option("file", o.file, "Graph JSON")->required()->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "Start the HTTP trace service");
  serve->add_option("--port", o.port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--sheet", o.sheet, "Preload a dump as sheet 'default'")->check(CLI::ExistingFile);
  add_engine(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub == stats) return cmd_stats(o, out);
    if (sub == query) return cmd_query(o, out);
    if (sub == bench) return cmd_bench(o, out);
    if (sub == gen) return cmd_generate(o, out);
    if (sub == exp) return cmd_export(o, out);
    if (sub == imp) return cmd_import(o, out);
    if (sub == serve) return cmd_serve(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace taco
