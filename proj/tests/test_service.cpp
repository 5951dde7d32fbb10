#include <future>
#include <thread>

#include "common.hpp"
#include "doctest.h"
#include "httplib.h"
#include "service.hpp"

using namespace eag;
using nlohmann::json;

namespace {

std::string createSession(Service& svc, const std::string& fixture) {
    auto r = svc.handle("POST", "/sessions", json{{"graph", readFixture(fixture)}}.dump());
    REQUIRE(r.status == 200);
    return r.body["id"];
}

Response post(Service& svc, const std::string& id, const std::string& what, const json& body = json::object()) {
    return svc.handle("POST", "/sessions/" + id + "/" + what, body.dump());
}

Response piece(Service& svc, const std::string& id, const std::string& text, bool commit = true) {
    return post(svc, id, commit ? "knowledge" : "whatif", json{{"piece", text}});
}

}  // namespace

TEST_CASE("a Fig 1 session reaches the restricted essential graph") {
    Service svc;
    std::string id = createSession(svc, "fig1c_eag.pmg");
    CHECK(svc.sessionCount() == 1);

    auto r = piece(svc, id, "B *-> C");
    REQUIRE(r.status == 200);
    CHECK(r.body["graph"] == renderPmg(fixtureGraph("fig1d.pmg")));
    REQUIRE(r.body["trace"].is_array());
    CHECK_FALSE(r.body["trace"].empty());
    CHECK(r.body["trace"][0].contains("rule"));

    auto st = svc.handle("GET", "/sessions/" + id, "");
    CHECK(st.body["knowledge"] == json::array({"B *-> C"}));
    CHECK(st.body["undoDepth"] == 1);
    CHECK(st.body["base"] == renderPmg(fixtureGraph("fig1c_eag.pmg")));

    auto bad = piece(svc, id, "D --> A");
    CHECK(bad.status == 409);
    CHECK(bad.body["error"] == "inadmissible");
    CHECK(bad.body["detail"] == "D --> A is not admissible: D <-- A has a tail at A");
    // a rejected piece leaves the session alone
    CHECK(svc.handle("GET", "/sessions/" + id, "").body["graph"] == renderPmg(fixtureGraph("fig1d.pmg")));
}

TEST_CASE("whatif previews without committing") {
    Service svc;
    std::string id = createSession(svc, "fig1c_eag.pmg");
    auto preview = piece(svc, id, "B *-> C", false);
    REQUIRE(preview.status == 200);
    CHECK(svc.handle("GET", "/sessions/" + id, "").body["graph"] == renderPmg(fixtureGraph("fig1c_eag.pmg")));
    CHECK(svc.handle("GET", "/sessions/" + id, "").body["undoDepth"] == 0);
    auto commit = piece(svc, id, "B *-> C");
    CHECK(commit.body == preview.body);
}

TEST_CASE("undo restores the previous state and replay reproduces it") {
    Service svc;
    std::string id = createSession(svc, "fig7a.pmg");
    CHECK(post(svc, id, "undo").status == 409);

    std::string start = svc.handle("GET", "/sessions/" + id, "").body["graph"];
    REQUIRE(piece(svc, id, "B *-> D").status == 200);
    std::string after = svc.handle("GET", "/sessions/" + id, "").body["graph"];
    CHECK(after == renderPmg(fixtureGraph("fig7b.pmg")));

    auto u = post(svc, id, "undo");
    REQUIRE(u.status == 200);
    CHECK(u.body["graph"] == start);
    CHECK(u.body["knowledge"].empty());

    REQUIRE(piece(svc, id, "B *-> D").status == 200);
    CHECK(svc.handle("GET", "/sessions/" + id, "").body["graph"] == after);
}

TEST_CASE("class size and verification") {
    Service svc;
    std::string id = createSession(svc, "fig1c_eag.pmg");
    auto before = svc.handle("GET", "/sessions/" + id + "/mec", "");
    CHECK(before.body["size"] == 35);
    CHECK(before.body["restricted"] == false);
    REQUIRE(piece(svc, id, "B *-> C").status == 200);
    CHECK(svc.handle("GET", "/sessions/" + id + "/mec?restrict=true", "").body["size"] == 13);
    CHECK(svc.handle("GET", "/sessions/" + id + "/mec?restrict=false", "").body["size"] == 35);

    auto v = post(svc, id, "verify");
    REQUIRE(v.status == 200);
    CHECK(v.body["verdict"] == true);
    CHECK(v.body["report"]["finalCheckOk"] == true);

    Service tiny(ServiceOptions{OracleOptions{3}});
    std::string t = createSession(tiny, "fig1c_eag.pmg");
    CHECK(tiny.handle("GET", "/sessions/" + t + "/mec", "").status == 413);
}

TEST_CASE("admissibility listing") {
    Service svc;
    std::string id = createSession(svc, "fig1c_eag.pmg");
    REQUIRE(piece(svc, id, "B *-> C").status == 200);
    auto r = svc.handle("GET", "/sessions/" + id + "/admissible", "");
    REQUIRE(r.status == 200);
    bool sawReason = false;
    for (const auto& e : r.body["admissible"]) {
        CHECK(e["forms"].size() == 4);
        if (e["current"] == "A --> D") FAIL("A --> D has no circle left");
        for (const auto& f : e["forms"])
            if (!f["admissible"].get<bool>()) sawReason |= f.contains("reason");
    }
    CHECK(r.body["admissible"].size() == 3);  // A o-o B, A o-o C, B o-> C
    CHECK(sawReason);
}

TEST_CASE("request errors") {
    Service svc(ServiceOptions{{}, 256});
    CHECK(svc.handle("GET", "/nowhere", "").status == 404);
    CHECK(svc.handle("GET", "/sessions/none", "").status == 404);
    CHECK(svc.handle("POST", "/sessions", "{not json").status == 422);
    CHECK(svc.handle("POST", "/sessions", "[1]").status == 422);
    CHECK(svc.handle("POST", "/sessions", "{}").status == 422);
    auto pe = svc.handle("POST", "/sessions", json{{"graph", "nodes: A\nA -x- B\n"}}.dump());
    CHECK(pe.status == 422);
    CHECK(pe.body["error"] == "parse error");
    CHECK(svc.handle("POST", "/sessions", std::string(257, ' ')).status == 413);

    std::string id = createSession(svc, "fig1c_eag.pmg");
    CHECK(post(svc, id, "knowledge").status == 422);
    CHECK(piece(svc, id, "B ~~ C").status == 422);
    CHECK(piece(svc, id, "B *-> Z").status == 422);
    CHECK(svc.handle("GET", "/sessions/" + id + "/knowledge", "").status == 404);
    CHECK(post(svc, id, "bogus").status == 404);
}

TEST_CASE("conflicting knowledge is reported as a conflict") {
    Service svc;
    std::string id = createSession(svc, "fig1c_eag.pmg");
    REQUIRE(piece(svc, id, "A --> B").status == 200);
    auto r = piece(svc, id, "B --> A");
    CHECK(r.status == 409);
    CHECK((r.body["error"] == "inadmissible" || r.body["error"] == "conflict"));
}

TEST_CASE("the HTTP adapter serves the same API") {
    Service svc;
    std::promise<std::pair<int, std::function<void()>>> ready;
    std::thread server([&] {
        serve(svc, "127.0.0.1", 0, [&](int port, std::function<void()> stop) { ready.set_value({port, stop}); });
    });
    auto [port, stop] = ready.get_future().get();

    httplib::Client cli("127.0.0.1", port);
    auto created = cli.Post("/sessions", json{{"graph", readFixture("fig1c_eag.pmg")}}.dump(), "application/json");
    REQUIRE(created);
    CHECK(created->status == 200);
    CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
    std::string id = json::parse(created->body)["id"];

    auto added = cli.Post("/sessions/" + id + "/knowledge", json{{"piece", "B *-> C"}}.dump(), "application/json");
    REQUIRE(added);
    CHECK(json::parse(added->body)["graph"] == renderPmg(fixtureGraph("fig1d.pmg")));

    auto size = cli.Get("/sessions/" + id + "/mec?restrict=true");
    REQUIRE(size);
    CHECK(json::parse(size->body)["size"] == 13);

    auto missing = cli.Get("/sessions/nope");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    auto pre = cli.Options("/sessions");
    REQUIRE(pre);
    CHECK(pre->status == 204);

    stop();
    server.join();
}
