#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "taco/engine.hpp"
#include "taco/sheet.hpp"

namespace httplib {
class Server;
}

namespace taco {

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

/// JSON API over in-memory sheet sessions.
///
///   POST   /sheets                 {"dump": "..."}            -> {"id"}
///   GET    /sheets/{id}/grid?window=A1:Z100                  -> {"cells":[{"addr","content"}]}
///   GET    /sheets/{id}/trace?range=&dir=deps|precs&transitive=true|false
///                                                            -> {"ranges":[...],"elapsed_us"}
///   POST   /sheets/{id}/edits      {"ops":[...],"version"?}   -> {"version","stats"}
///   GET    /sheets/{id}/stats                                 -> stats
///   DELETE /sheets/{id}
///
/// Errors carry {"error"} and, for malformed input (400), {"field"}. Unknown
/// sheets give 404; an edit whose "version" is stale gives 409.
///
/// Handlers may run concurrently. Each session has a reader/writer lock, so
/// traces see the graph either before or after a whole edit batch.
class TraceService {
 public:
  explicit TraceService(EngineKind engine = EngineKind::Taco, PatternSet patterns = PatternSet::all());
  ~TraceService();
  TraceService(const TraceService&) = delete;
  TraceService& operator=(const TraceService&) = delete;

  /// Registers a sheet directly and returns its id (a fresh one if none given).
  std::string add_sheet(const SheetDump& dump, std::optional<std::string> id = std::nullopt);
  std::size_t session_count() const;

  HttpResponse handle(const HttpRequest& request);

  /// Routes every request of `server` through handle().
  void bind(httplib::Server& server);

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::string fresh_id();

  HttpResponse create(const HttpRequest& req);
  HttpResponse grid(Session& s, const HttpRequest& req);
  HttpResponse trace(Session& s, const HttpRequest& req);
  HttpResponse edits(Session& s, const HttpRequest& req);
  HttpResponse stats(Session& s);

  EngineKind engine_;
  PatternSet patterns_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace taco
