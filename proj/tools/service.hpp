#ifndef EAG_TOOLS_SERVICE_HPP
#define EAG_TOOLS_SERVICE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "eag/graph.hpp"
#include "eag/knowledge.hpp"
#include "eag/oracle.hpp"
#include "json.hpp"

namespace eag {

struct Response {
    int status = 200;
    nlohmann::json body;
};

struct ServiceOptions {
    OracleOptions oracle;
    std::size_t maxBodyBytes = 1 << 20;
};

/**
 * In-memory sessions over the knowledge workflow. handle() is the whole API;
 * serve() only adapts it to HTTP.
 */
class Service {
public:
    explicit Service(ServiceOptions opt = {}) : opt_(opt) {}

    /// `target` may carry a query string, e.g. "/sessions/x/mec?restrict=true".
    Response handle(const std::string& method, const std::string& target, const std::string& body);

    std::size_t sessionCount() const;

private:
    struct Undo {
        KnowledgePiece piece;
        Graph before;
    };
    struct Session {
        std::string id;
        Graph base;
        KnowledgeSet accepted;
        Graph current;
        std::vector<Undo> undo;
        std::chrono::system_clock::time_point created;
        std::mutex mu;
    };

    Response create(const nlohmann::json& body);
    Response state(Session& s) const;
    Response addPiece(Session& s, const nlohmann::json& body, bool commit);
    Response undo(Session& s);
    Response mecSize(Session& s, bool restrict);
    Response verify(Session& s);
    nlohmann::json admissible(const Graph& g) const;
    std::shared_ptr<Session> find(const std::string& id) const;
    std::string newId();

    ServiceOptions opt_;
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t counter_ = 0;
};

/// Blocks serving HTTP on host:port; port 0 picks a free one. `started` runs on
/// a helper thread once the server accepts connections and gets the bound port
/// and a callback that makes serve() return.
void serve(Service& svc, const std::string& host, int port,
           const std::function<void(int, std::function<void()>)>& started = {});

}  // namespace eag

#endif  // EAG_TOOLS_SERVICE_HPP
