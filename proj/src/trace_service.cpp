#include "taco/trace_service.hpp"

#include <chrono>
#include <mutex>
#include <random>
#include <variant>

#include "httplib.h"
#include "json.hpp"
#include "taco/errors.hpp"
#include "taco/report.hpp"

namespace taco {

using nlohmann::json;

struct TraceService::Session {
  explicit Session(Sheet s) : sheet(std::move(s)) {}

  std::shared_mutex mutex;
  Sheet sheet;
  std::int64_t version = 0;
};

namespace {

struct BadRequest {
  std::string field;
  std::string message;
};

HttpResponse reply(int status, const json& body) { return {status, body.dump()}; }

HttpResponse error_reply(int status, const std::string& message) { return reply(status, {{"error", message}}); }

HttpResponse bad_request(const BadRequest& bad) {
  return reply(400, {{"error", bad.message}, {"field", bad.field}});
}

json parse_body(const std::string& body) {
  try {
    json doc = json::parse(body);
    if (!doc.is_object()) throw BadRequest{"$", "expected a JSON object"};
    return doc;
  } catch (const json::parse_error&) {
    throw BadRequest{"$", "body is not valid JSON"};
  }
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw BadRequest{path, "missing"};
  return *it;
}

std::string string_member(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) throw BadRequest{path, "expected a string"};
  return v.get<std::string>();
}

Range range_param(const std::string& text, const std::string& field) {
  try {
    return parse_a1(text);
  } catch (const Error& err) {
    throw BadRequest{field, err.what()};
  }
}

std::optional<std::string> query_param(const HttpRequest& req, const std::string& key) {
  auto it = req.query.find(key);
  if (it == req.query.end()) return std::nullopt;
  return it->second;
}

struct ClearOp {
  Range range;
};
struct SetOp {
  Cell cell;
  std::string content;
};
using EditOp = std::variant<ClearOp, SetOp>;

EditOp parse_op(const json& v, const std::string& path) {
  if (!v.is_object()) throw BadRequest{path, "expected an object"};
  std::string op = string_member(v, "op", path + ".op");
  if (op == "clear") return ClearOp{range_param(string_member(v, "range", path + ".range"), path + ".range")};
  if (op != "set") throw BadRequest{path + ".op", "unknown op '" + op + "'"};

  std::string addr = string_member(v, "cell", path + ".cell");
  SetOp set;
  try {
    set.cell = parse_cell(addr);
  } catch (const Error& err) {
    throw BadRequest{path + ".cell", err.what()};
  }
  set.content = string_member(v, "content", path + ".content");
  try {
    Sheet::dependencies_of(set.cell, set.content);
  } catch (const Error& err) {
    throw BadRequest{path + ".content", err.what()};
  }
  return set;
}

json stats_body(const Sheet& sheet, std::int64_t version) {
  json out = stats_json(sheet.engine().stats());
  out["reduced"] = reduced_json(sheet.engine().reduced_edges_by_pattern());
  out["version"] = version;
  return out;
}

}  // namespace

TraceService::TraceService(EngineKind engine, PatternSet patterns) : engine_(engine), patterns_(patterns) {}
TraceService::~TraceService() = default;

std::string TraceService::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%llu-%06llx", static_cast<unsigned long long>(next_id_++),
                static_cast<unsigned long long>(rng() & 0xffffff));
  return buf;
}

std::string TraceService::add_sheet(const SheetDump& dump, std::optional<std::string> id) {
  auto session = std::make_shared<Session>(Sheet(dump, engine_, patterns_));
  std::unique_lock lock(sessions_mutex_);
  std::string key = id ? *id : fresh_id();
  sessions_[key] = std::move(session);
  return key;
}

std::size_t TraceService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::shared_ptr<TraceService::Session> TraceService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

HttpResponse TraceService::handle(const HttpRequest& req) {
  try {
    std::string_view path = req.path;
    while (path.size() > 1 && path.back() == '/') path.remove_suffix(1);
    constexpr std::string_view kRoot = "/sheets";
    if (path.substr(0, kRoot.size()) != kRoot) return error_reply(404, "no such route");
    path.remove_prefix(kRoot.size());

    if (path.empty()) {
      if (req.method != "POST") return error_reply(405, "use POST /sheets");
      return create(req);
    }
    if (path.front() != '/') return error_reply(404, "no such route");
    path.remove_prefix(1);
    std::size_t slash = path.find('/');
    std::string id(path.substr(0, slash));
    std::string_view action = slash == std::string_view::npos ? std::string_view{} : path.substr(slash + 1);

    auto session = find(id);
    if (!session) return error_reply(404, "unknown sheet '" + id + "'");

    if (action.empty()) {
      if (req.method != "DELETE") return error_reply(405, "use DELETE /sheets/{id}");
      std::unique_lock lock(sessions_mutex_);
      sessions_.erase(id);
      return reply(200, {{"deleted", id}});
    }
    if (action == "grid" && req.method == "GET") return grid(*session, req);
    if (action == "trace" && req.method == "GET") return trace(*session, req);
    if (action == "stats" && req.method == "GET") return stats(*session);
    if (action == "edits" && req.method == "POST") return edits(*session, req);
    if (action == "grid" || action == "trace" || action == "stats" || action == "edits")
      return error_reply(405, "method not allowed");
    return error_reply(404, "no such route");
  } catch (const BadRequest& bad) {
    return bad_request(bad);
  } catch (const std::exception& err) {
    return error_reply(500, err.what());
  }
}

HttpResponse TraceService::create(const HttpRequest& req) {
  json doc = parse_body(req.body);
  std::string text = string_member(doc, "dump", "dump");
  SheetDump dump;
  try {
    dump = parse_dump(text);
  } catch (const DumpError& err) {
    throw BadRequest{"dump", err.what()};
  }
  std::string id;
  try {
    id = add_sheet(dump);
  } catch (const Error& err) {
    throw BadRequest{"dump", err.what()};
  }
  return reply(201, {{"id", id}});
}

HttpResponse TraceService::grid(Session& s, const HttpRequest& req) {
  Range window{{1, 1}, {kMaxCol, kMaxRow}};
  if (auto w = query_param(req, "window")) window = range_param(*w, "window");
  json cells = json::array();
  std::shared_lock lock(s.mutex);
  for (const CellRecord& rec : s.sheet.cells_in(window))
    cells.push_back({{"addr", to_a1(rec.cell)}, {"content", rec.content}});
  return reply(200, {{"cells", std::move(cells)}, {"version", s.version}});
}

HttpResponse TraceService::trace(Session& s, const HttpRequest& req) {
  auto text = query_param(req, "range");
  if (!text) throw BadRequest{"range", "missing"};
  Range range = range_param(*text, "range");

  std::string dir = query_param(req, "dir").value_or("deps");
  if (dir != "deps" && dir != "precs") throw BadRequest{"dir", "expected deps or precs"};
  std::string transitive_text = query_param(req, "transitive").value_or("true");
  if (transitive_text != "true" && transitive_text != "false")
    throw BadRequest{"transitive", "expected true or false"};
  const bool transitive = transitive_text == "true";

  std::shared_lock lock(s.mutex);
  const Engine& engine = s.sheet.engine();
  auto start = std::chrono::steady_clock::now();
  std::vector<Range> found = dir == "deps" ? (transitive ? engine.find_dependents(range) : engine.direct_dependents(range))
                                           : (transitive ? engine.find_precedents(range) : engine.direct_precedents(range));
  auto elapsed = std::chrono::steady_clock::now() - start;
  return reply(200, {{"ranges", range_strings(std::move(found))},
                     {"elapsed_us", std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count()},
                     {"version", s.version}});
}

HttpResponse TraceService::edits(Session& s, const HttpRequest& req) {
  json doc = parse_body(req.body);
  const json& list = member(doc, "ops", "ops");
  if (!list.is_array()) throw BadRequest{"ops", "expected an array"};
  std::vector<EditOp> ops;
  for (std::size_t k = 0; k < list.size(); ++k) ops.push_back(parse_op(list[k], "ops[" + std::to_string(k) + "]"));

  std::optional<std::int64_t> expected;
  if (auto it = doc.find("version"); it != doc.end()) {
    if (!it->is_number_integer()) throw BadRequest{"version", "expected an integer"};
    expected = it->get<std::int64_t>();
  }

  std::unique_lock lock(s.mutex);
  if (expected && *expected != s.version)
    return reply(409, {{"error", "sheet was edited concurrently"}, {"version", s.version}});

  for (const EditOp& op : ops) {
    if (const auto* clear = std::get_if<ClearOp>(&op))
      s.sheet.clear(clear->range);
    else {
      const auto& set = std::get<SetOp>(op);
      s.sheet.set(set.cell, set.content);
    }
  }
  ++s.version;
  return reply(200, {{"version", s.version}, {"stats", stats_body(s.sheet, s.version)}});
}

HttpResponse TraceService::stats(Session& s) {
  std::shared_lock lock(s.mutex);
  return reply(200, stats_body(s.sheet, s.version));
}

void TraceService::bind(httplib::Server& server) {
  auto adapter = [this](const httplib::Request& in, httplib::Response& out) {
    HttpRequest req{in.method, in.path, {}, in.body};
    for (const auto& [key, value] : in.params) req.query.emplace(key, value);
    HttpResponse res = handle(req);
    out.status = res.status;
    out.set_content(res.body, "application/json");
  };
  server.Get(R"(/.*)", adapter);
  server.Post(R"(/.*)", adapter);
  server.Delete(R"(/.*)", adapter);
}

}  // namespace taco
