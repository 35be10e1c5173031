#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "taco/report.hpp"
#include "taco/sheet_dump.hpp"
#include "taco/trace_service.hpp"
#include "taco/workloads.hpp"

using namespace taco;
using nlohmann::json;

namespace {

const char* kExpanding =
    "C1\t=SUM($B$1:B1)+SUM($A$1:$A$2)\n"
    "C2\t=SUM($B$1:B2)+SUM($A$1:$A$2)\n"
    "C3\t=SUM($B$1:B3)+SUM($A$1:$A$2)\n"
    "C4\t=SUM($B$1:B4)\n"
    "D4\t=SUM(B1:B4)\n";

HttpResponse call(TraceService& svc, std::string method, std::string path, std::map<std::string, std::string> query = {},
                  std::string body = "") {
  return svc.handle({std::move(method), std::move(path), std::move(query), std::move(body)});
}

std::string create(TraceService& svc, const std::string& dump) {
  HttpResponse r = call(svc, "POST", "/sheets", {}, json{{"dump", dump}}.dump());
  EXPECT_EQ(r.status, 201) << r.body;
  return json::parse(r.body)["id"];
}

json trace(TraceService& svc, const std::string& id, const std::string& range, const std::string& dir = "deps",
           const std::string& transitive = "true") {
  HttpResponse r = call(svc, "GET", "/sheets/" + id + "/trace", {{"range", range}, {"dir", dir}, {"transitive", transitive}});
  EXPECT_EQ(r.status, 200) << r.body;
  return json::parse(r.body);
}

HttpResponse edit(TraceService& svc, const std::string& id, const json& body) {
  return call(svc, "POST", "/sheets/" + id + "/edits", {}, body.dump());
}

json error_of(const HttpResponse& r) { return json::parse(r.body); }

}  // namespace

TEST(TraceService, TracesTheExpandingExample) {
  TraceService svc;
  std::string id = create(svc, kExpanding);
  json t = trace(svc, id, "B2");
  EXPECT_EQ(t["ranges"], json::array({"C2:C4", "D4"}));
  EXPECT_TRUE(t["elapsed_us"].is_number_integer());
}

TEST(TraceService, EmptySheet) {
  TraceService svc;
  std::string id = create(svc, "");
  EXPECT_EQ(trace(svc, id, "A1")["ranges"], json::array());
}

TEST(TraceService, MatchesLibraryQueries) {
  TraceService svc;
  WorkloadSpec spec{WorkloadKind::RandomPatterned, 15};
  spec.seed = 8;
  spec.columns = 8;
  spec.outlier_pct = 0.2;
  SheetDump dump = generate(spec).sheet;
  std::string id = create(svc, format_dump(dump));
  Engine engine = build_engine(EngineKind::Taco, dump);
  for (const char* cell : {"A1", "B3", "C7", "D2:E9", "H15"}) {
    Range r = parse_a1(cell);
    EXPECT_EQ(trace(svc, id, cell)["ranges"], json(range_strings(engine.find_dependents(r))));
    EXPECT_EQ(trace(svc, id, cell, "precs")["ranges"], json(range_strings(engine.find_precedents(r))));
    EXPECT_EQ(trace(svc, id, cell, "deps", "false")["ranges"], json(range_strings(engine.direct_dependents(r))));
    EXPECT_EQ(trace(svc, id, cell, "precs", "false")["ranges"], json(range_strings(engine.direct_precedents(r))));
  }
}

TEST(TraceService, StepwiseTraceIsOneLayer) {
  TraceService svc;
  std::string id = create(svc, format_dump(generate({WorkloadKind::RunTotalFast, 6}).sheet));
  EXPECT_EQ(trace(svc, id, "A1", "deps", "false")["ranges"], json::array({"B1"}));
  EXPECT_EQ(trace(svc, id, "B1", "deps", "false")["ranges"], json::array({"B2"}));
  EXPECT_EQ(trace(svc, id, "B3", "precs", "false")["ranges"], json::array({"A3", "B2"}));
}

TEST(TraceService, EditsReflectInTraces) {
  TraceService svc;
  std::string id = create(svc, format_dump(generate({WorkloadKind::RunTotalFast, 6}).sheet));
  const json before = trace(svc, id, "A2");
  std::vector<Range> found;
  for (const auto& s : before["ranges"]) found.push_back(parse_a1(s.get<std::string>()));
  EXPECT_EQ(range_strings(coalesce(found)), std::vector<std::string>{"B2:B6"});

  HttpResponse r = edit(svc, id, {{"ops", {{{"op", "set"}, {"cell", "B2"}, {"content", "5"}}}}});
  ASSERT_EQ(r.status, 200) << r.body;
  json body = json::parse(r.body);
  EXPECT_EQ(body["version"], 1);
  EXPECT_EQ(body["stats"]["rawEdges"], 9);
  EXPECT_EQ(trace(svc, id, "A2")["ranges"], json::array());

  r = edit(svc, id, {{"ops", {{{"op", "clear"}, {"range", "B5:B6"}}}}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(json::parse(r.body)["stats"]["rawEdges"], 5);
  HttpResponse g = call(svc, "GET", "/sheets/" + id + "/grid", {{"window", "B1:B6"}});
  EXPECT_EQ(json::parse(g.body)["cells"],
            json::parse(R"([{"addr":"B1","content":"=A1"},{"addr":"B2","content":"5"},{"addr":"B3","content":"=A3+B2"},
                            {"addr":"B4","content":"=A4+B3"}])"));
}

TEST(TraceService, BatchesAreValidatedBeforeApplying) {
  TraceService svc;
  std::string id = create(svc, format_dump(generate({WorkloadKind::RunTotalFast, 6}).sheet));
  json ops = {{"ops",
               {{{"op", "set"}, {"cell", "B2"}, {"content", "5"}},
                {{"op", "set"}, {"cell", "B3"}, {"content", "=SUM(B1:B4)"}}}}};
  HttpResponse r = edit(svc, id, ops);
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(error_of(r)["field"], "ops[1].content");
  EXPECT_EQ(json::parse(call(svc, "GET", "/sheets/" + id + "/stats").body)["rawEdges"], 11);

  ops = {{"ops", {{{"op", "paint"}}}}};
  EXPECT_EQ(error_of(edit(svc, id, ops))["field"], "ops[0].op");
  ops = {{"ops", {{{"op", "clear"}, {"range", "B:B"}}}}};
  EXPECT_EQ(error_of(edit(svc, id, ops))["field"], "ops[0].range");
  ops = {{"ops", {{{"op", "set"}, {"cell", "B2"}}}}};
  EXPECT_EQ(error_of(edit(svc, id, ops))["field"], "ops[0].content");
  EXPECT_EQ(error_of(edit(svc, id, json{{"op", "set"}}))["field"], "ops");
  EXPECT_EQ(error_of(call(svc, "POST", "/sheets/" + id + "/edits", {}, "nope"))["field"], "$");
}

TEST(TraceService, StaleVersionConflicts) {
  TraceService svc;
  std::string id = create(svc, "A1\t1\nB1\t=A1\n");
  json ops = {{"ops", {{{"op", "set"}, {"cell", "B2"}, {"content", "=A1"}}}}, {"version", 0}};
  EXPECT_EQ(edit(svc, id, ops).status, 200);
  HttpResponse stale = edit(svc, id, ops);
  EXPECT_EQ(stale.status, 409);
  EXPECT_EQ(error_of(stale)["version"], 1);
  ops["version"] = 1;
  EXPECT_EQ(edit(svc, id, ops).status, 200);
}

TEST(TraceService, ErrorsAndLifecycle) {
  TraceService svc;
  EXPECT_EQ(call(svc, "GET", "/sheets/nope/trace", {{"range", "A1"}}).status, 404);
  EXPECT_EQ(call(svc, "GET", "/elsewhere").status, 404);
  EXPECT_EQ(error_of(call(svc, "POST", "/sheets", {}, "{}"))["field"], "dump");
  EXPECT_EQ(error_of(call(svc, "POST", "/sheets", {}, json{{"dump", "A1\t1\nA1\t2\n"}}.dump()))["field"], "dump");
  EXPECT_EQ(error_of(call(svc, "POST", "/sheets", {}, json{{"dump", "B2\t=B2\n"}}.dump()))["field"], "dump");

  std::string id = create(svc, "A1\t1\n");
  EXPECT_EQ(error_of(call(svc, "GET", "/sheets/" + id + "/trace"))["field"], "range");
  EXPECT_EQ(error_of(call(svc, "GET", "/sheets/" + id + "/trace", {{"range", "A1"}, {"dir", "up"}}))["field"], "dir");
  EXPECT_EQ(error_of(call(svc, "GET", "/sheets/" + id + "/trace", {{"range", "A1"}, {"transitive", "1"}}))["field"],
            "transitive");
  EXPECT_EQ(error_of(call(svc, "GET", "/sheets/" + id + "/grid", {{"window", "A0"}}))["field"], "window");
  EXPECT_EQ(call(svc, "PUT", "/sheets/" + id + "/trace").status, 405);

  EXPECT_EQ(svc.session_count(), 1u);
  EXPECT_EQ(call(svc, "DELETE", "/sheets/" + id).status, 200);
  EXPECT_EQ(call(svc, "GET", "/sheets/" + id + "/stats").status, 404);
  EXPECT_EQ(svc.session_count(), 0u);
}

TEST(TraceService, PreloadedSheet) {
  TraceService svc;
  svc.add_sheet(parse_dump(kExpanding), "default");
  EXPECT_EQ(trace(svc, "default", "B2")["ranges"], json::array({"C2:C4", "D4"}));
}

TEST(TraceService, ConcurrentEditsOverHttpAreAtomic) {
  TraceService svc;
  const std::string id = svc.add_sheet(generate({WorkloadKind::RunTotalFast, 50}).sheet);
  httplib::Server server;
  svc.bind(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread listener([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  // A1 has 50 dependents in the whole state, 24 in the broken state and 39
  // after the first op of either batch.
  const json to_broken = {{"ops",
                           {{{"op", "set"}, {"cell", "B40"}, {"content", "7"}},
                            {{"op", "set"}, {"cell", "B25"}, {"content", "7"}}}}};
  const json to_whole = {{"ops",
                          {{{"op", "set"}, {"cell", "B25"}, {"content", "=A25+B24"}},
                           {{"op", "set"}, {"cell", "B40"}, {"content", "=A40+B39"}}}}};
  std::atomic<bool> done{false};
  std::atomic<int> bad{0}, traces{0}, edits_ok{0};

  std::vector<std::thread> workers;
  workers.emplace_back([&] {
    httplib::Client client("127.0.0.1", port);
    for (int k = 0; k < 40; ++k) {
      const json& body = k % 2 == 0 ? to_broken : to_whole;
      auto res = client.Post("/sheets/" + id + "/edits", body.dump(), "application/json");
      if (res && res->status == 200) ++edits_ok;
    }
    done = true;
  });
  for (int t = 0; t < 3; ++t)
    workers.emplace_back([&] {
      httplib::Client client("127.0.0.1", port);
      while (!done) {
        auto res = client.Get("/sheets/" + id + "/trace?range=A1&dir=deps");
        if (!res || res->status != 200) {
          ++bad;
          continue;
        }
        std::int64_t cells = 0;
        const json reply = json::parse(res->body);
        for (const auto& s : reply["ranges"]) cells += parse_a1(s.get<std::string>()).area();
        if (cells != 50 && cells != 24) ++bad;
        ++traces;
      }
    });
  for (auto& w : workers) w.join();
  server.stop();
  listener.join();

  EXPECT_EQ(edits_ok.load(), 40);
  EXPECT_GT(traces.load(), 0);
  EXPECT_EQ(bad.load(), 0);
}
