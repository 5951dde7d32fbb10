#include "service.hpp"

#include <random>
#include <sstream>
#include <thread>

#include "eag/algorithms.hpp"
#include "httplib.h"

namespace eag {

namespace {

using nlohmann::json;

Response error(int status, const std::string& err, const std::string& detail) {
    return {status, json{{"error", err}, {"detail", detail}}};
}

json traceJson(const Graph& g, const std::vector<TraceEntry>& trace) {
    json out = json::array();
    std::istringstream lines(traceToJsonLines(g, trace));
    for (std::string line; std::getline(lines, line);)
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

std::vector<std::string> splitPath(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
        if (c == '/') {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

std::map<std::string, std::string> parseQuery(const std::string& q) {
    std::map<std::string, std::string> out;
    std::istringstream in(q);
    for (std::string kv; std::getline(in, kv, '&');) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) out[kv] = "";
        else out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return out;
}

json verifyJson(const Graph& g, const VerifyReport& rep) {
    json edges = json::array();
    for (const auto& e : rep.edges)
        edges.push_back({{"edge", {g.name(e.a), g.name(e.b)}},
                         {"piece", renderPiece(g, {e.a, e.b, e.form})},
                         {"found", e.found}});
    json residue = json::array();
    for (const auto& r : rep.residue)
        residue.push_back({{"edge", {g.name(r.mark.x), g.name(r.mark.y)}},
                           {"mark", markName(r.mark.mark)},
                           {"complement", renderPiece(g, r.complement)},
                           {"found", r.found}});
    return {{"edges", edges}, {"residue", residue}, {"finalCheckOk", rep.finalCheckOk}, {"failure", rep.failure}};
}

}  // namespace

std::size_t Service::sessionCount() const {
    std::lock_guard lock(mu_);
    return sessions_.size();
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::string Service::newId() {
    static thread_local std::mt19937_64 rng(std::random_device{}());
    std::ostringstream s;
    s << std::hex << rng() << "-" << ++counter_;
    return s.str();
}

json Service::admissible(const Graph& g) const {
    json out = json::array();
    for (auto [a, b] : g.edges()) {
        if (g.mark(a, b) != Mark::Circle && g.mark(b, a) != Mark::Circle) continue;
        json forms = json::array();
        for (PieceForm f : {PieceForm::Directed, PieceForm::ReverseDirected, PieceForm::ArrowAtY, PieceForm::ArrowAtX}) {
            KnowledgePiece p{a, b, f};
            auto why = admissibilityProblem(g, p);
            json item{{"piece", renderPiece(g, p)}, {"admissible", !why}};
            if (why) item["reason"] = *why;
            forms.push_back(item);
        }
        out.push_back({{"edge", {g.name(a), g.name(b)}}, {"current", renderEdge(g, a, b)}, {"forms", forms}});
    }
    return out;
}

Response Service::handle(const std::string& method, const std::string& target, const std::string& body) {
    if (body.size() > opt_.maxBodyBytes) return error(413, "payload too large", "request body exceeds the limit");
    std::string path = target, query;
    if (auto q = target.find('?'); q != std::string::npos) {
        path = target.substr(0, q);
        query = target.substr(q + 1);
    }
    auto parts = splitPath(path);
    if (parts.empty() || parts[0] != "sessions") return error(404, "not found", path);

    json in = json::object();
    if (method == "POST" && !body.empty()) {
        try {
            in = json::parse(body);
        } catch (const json::parse_error& e) {
            return error(422, "invalid JSON", e.what());
        }
        if (!in.is_object()) return error(422, "invalid JSON", "body must be an object");
    }

    if (parts.size() == 1) {
        if (method != "POST") return error(404, "not found", path);
        return create(in);
    }
    auto s = find(parts[1]);
    if (!s) return error(404, "unknown session", parts[1]);
    std::lock_guard lock(s->mu);
    if (parts.size() == 2 && method == "GET") return state(*s);
    if (parts.size() == 3) {
        const std::string& what = parts[2];
        if (what == "knowledge" && method == "POST") return addPiece(*s, in, true);
        if (what == "whatif" && method == "POST") return addPiece(*s, in, false);
        if (what == "undo" && method == "POST") return undo(*s);
        if (what == "verify" && method == "POST") return verify(*s);
        if (what == "admissible" && method == "GET") return {200, json{{"admissible", admissible(s->current)}}};
        if (what == "mec" && method == "GET") {
            auto qs = parseQuery(query);
            return mecSize(*s, qs.count("restrict") && qs["restrict"] != "false" && qs["restrict"] != "0");
        }
    }
    return error(404, "not found", path);
}

Response Service::create(const json& body) {
    if (!body.contains("graph") || !body["graph"].is_string()) return error(422, "missing graph", "expected {graph: text}");
    auto s = std::make_shared<Session>();
    try {
        s->base = parsePmg(body["graph"].get<std::string>());
    } catch (const ParseError& e) {
        return error(422, "parse error", e.what());
    } catch (const GraphError& e) {
        return error(422, "parse error", e.what());
    }
    s->current = s->base;
    s->created = std::chrono::system_clock::now();
    {
        std::lock_guard lock(mu_);
        s->id = newId();
        sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mu);
    return {200, json{{"id", s->id}, {"graph", renderPmg(s->current)}, {"admissible", admissible(s->current)}}};
}

Response Service::state(Session& s) const {
    json k = json::array();
    for (const auto& p : s.accepted) k.push_back(renderPiece(s.base, p));
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(s.created.time_since_epoch()).count();
    return {200, json{{"id", s.id},
                      {"graph", renderPmg(s.current)},
                      {"base", renderPmg(s.base)},
                      {"knowledge", k},
                      {"undoDepth", s.undo.size()},
                      {"created", secs},
                      {"admissible", admissible(s.current)}}};
}

Response Service::addPiece(Session& s, const json& body, bool commit) {
    if (!body.contains("piece") || !body["piece"].is_string()) return error(422, "missing piece", "expected {piece: text}");
    KnowledgePiece p{};
    try {
        p = parsePiece(s.current, body["piece"].get<std::string>());
    } catch (const ParseError& e) {
        return error(422, "parse error", e.what());
    } catch (const GraphError& e) {
        return error(422, "parse error", e.what());
    }
    auto r = addBgKnowledge(s.current, {p});
    if (!r.ok) return error(409, r.conflict ? "conflict" : "inadmissible", r.reason);
    json trace = r.steps.empty() ? json::array() : traceJson(s.current, r.steps[0].trace);
    if (commit) {
        s.undo.push_back({p, s.current});
        s.accepted.push_back(p);
        s.current = r.graph;
    }
    return {200, json{{"graph", renderPmg(r.graph)}, {"trace", trace}, {"admissible", admissible(r.graph)}}};
}

Response Service::undo(Session& s) {
    if (s.undo.empty()) return error(409, "nothing to undo", "no accepted knowledge");
    s.current = s.undo.back().before;
    s.undo.pop_back();
    s.accepted.pop_back();
    return state(s);
}

Response Service::mecSize(Session& s, bool restrict) {
    try {
        auto mags = representedBy(s.base, opt_.oracle);
        if (!restrict) return {200, json{{"size", mags.size()}, {"restricted", false}}};
        try {
            return {200, json{{"size", restrictMec(mags, s.accepted).size()}, {"restricted", true}}};
        } catch (const InconsistentKnowledge&) {
            return {200, json{{"size", 0}, {"restricted", true}}};
        }
    } catch (const CapExceeded& e) {
        return error(413, "class too large to enumerate", e.what());
    }
}

Response Service::verify(Session& s) {
    auto rep = verifyCompleteness(s.base, s.accepted, s.current);
    return {200, json{{"verdict", rep.verdict}, {"report", verifyJson(s.current, rep)}}};
}

void serve(Service& svc, const std::string& host, int port,
           const std::function<void(int, std::function<void()>)>& started) {
    httplib::Server server;
    auto adapt = [&svc](const httplib::Request& req, httplib::Response& res) {
        std::string target = req.path;
        if (!req.params.empty()) {
            std::string q;
            for (const auto& [k, v] : req.params) q += (q.empty() ? "" : "&") + k + "=" + v;
            target += "?" + q;
        }
        Response r = svc.handle(req.method, target, req.body);
        res.status = r.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_content(r.body.dump(), "application/json");
    };
    server.Get(R"(/.*)", adapt);
    server.Post(R"(/.*)", adapt);
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.status = 204;
    });
    int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
    std::thread notifier;
    if (started)
        notifier = std::thread([&] {
            server.wait_until_ready();
            started(bound, [&server] { server.stop(); });
        });
    server.listen_after_bind();
    if (notifier.joinable()) notifier.join();
}

}  // namespace eag
