#include "eag/oracle.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "eag/paths.hpp"

namespace eag {

namespace {

constexpr std::array<std::pair<Mark, Mark>, 3> kChoices = {
    std::pair{Mark::Tail, Mark::Arrow},   // a --> b
    std::pair{Mark::Arrow, Mark::Tail},   // a <-- b
    std::pair{Mark::Arrow, Mark::Arrow},  // a <-> b
};

void sortCanonical(std::vector<Graph>& gs) {
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (std::size_t i = 0; i < gs.size(); ++i) keys.emplace_back(renderPmg(gs[i]), i);
    std::sort(keys.begin(), keys.end());
    std::vector<Graph> out;
    out.reserve(gs.size());
    for (auto& [k, i] : keys) out.push_back(std::move(gs[i]));
    gs = std::move(out);
}

bool fits(Mark want, Mark pattern) { return pattern == Mark::Circle || pattern == want; }

}  // namespace

std::vector<Graph> enumerateMags(const Graph& g, OracleOptions opt) {
    auto edges = g.edges();
    if (static_cast<int>(edges.size()) > opt.maxEdges)
        throw CapExceeded("skeleton has " + std::to_string(edges.size()) + " edges; the oracle cap is " +
                          std::to_string(opt.maxEdges));
    std::vector<Graph> out;
    Graph partial(g.names());
    // Edges are added one at a time; a partial graph that is already not
    // ancestral cannot become ancestral by adding edges.
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (!isAncestral(partial)) return;
        if (i == edges.size()) {
            if (isMaximal(partial)) out.push_back(partial);
            return;
        }
        auto [a, b] = edges[i];
        for (auto [atA, atB] : kChoices) {
            if (!fits(atA, g.mark(b, a)) || !fits(atB, g.mark(a, b))) continue;
            partial.addEdge(a, b, atA, atB);
            self(self, i + 1);
            partial.removeEdge(a, b);
        }
    };
    rec(rec, 0);
    sortCanonical(out);
    return out;
}

bool equivalentByMcp(const Graph& a, const Graph& b) {
    return sameSkeleton(a, b) && minimalColliderPaths(a) == minimalColliderPaths(b);
}

namespace {

// Visits m-separation answers over every (x, y, Z) in a fixed order until
// `visit` returns false.
bool forEachSeparation(const Graph& g, const std::function<bool(std::size_t, bool)>& visit) {
    int n = g.size();
    std::size_t idx = 0;
    for (NodeId x = 0; x < n; ++x)
        for (NodeId y = x + 1; y < n; ++y) {
            NodeList rest;
            for (NodeId v = 0; v < n; ++v)
                if (v != x && v != y) rest.push_back(v);
            for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
                NodeList z;
                for (std::size_t i = 0; i < rest.size(); ++i)
                    if (mask & (1u << i)) z.push_back(rest[i]);
                if (!visit(idx++, mSeparatedMixed(g, x, y, z))) return false;
            }
        }
    return true;
}

std::vector<char> separationSignature(const Graph& g) {
    std::vector<char> out;
    forEachSeparation(g, [&](std::size_t, bool sep) {
        out.push_back(sep);
        return true;
    });
    return out;
}

bool sameSeparations(const Graph& g, const std::vector<char>& ref) {
    return forEachSeparation(g, [&](std::size_t i, bool sep) { return static_cast<bool>(ref[i]) == sep; });
}

}  // namespace

bool equivalentBySeparation(const Graph& a, const Graph& b) {
    return a.names() == b.names() && sameSeparations(b, separationSignature(a));
}

bool markovEquivalent(const Graph& a, const Graph& b, OracleOptions opt) {
    bool byMcp = equivalentByMcp(a, b);
    if (a.size() <= opt.crossCheckMaxNodes && a.names() == b.names()) {
        bool bySep = equivalentBySeparation(a, b);
        if (bySep != byMcp)
            throw GraphError("Markov equivalence deciders disagree on\n" + renderPmg(a) + "and\n" + renderPmg(b));
    }
    return byMcp;
}

std::vector<Graph> mec(const Graph& m, OracleOptions opt) {
    // markovEquivalent(m, c) for every candidate, with m's side computed once
    auto mcps = minimalColliderPaths(m);
    auto colliders = unshieldedColliders(m);
    bool cross = m.size() <= opt.crossCheckMaxNodes;
    std::vector<char> seps;
    if (cross) seps = separationSignature(m);
    std::vector<Graph> out;
    for (auto& c : enumerateMags(skeleton(m), opt)) {
        // the three-node MCPs are the unshielded colliders, so compare those first
        bool byMcp = unshieldedColliders(c) == colliders && minimalColliderPaths(c) == mcps;
        if (cross && sameSeparations(c, seps) != byMcp)
            throw GraphError("Markov equivalence deciders disagree on\n" + renderPmg(m) + "and\n" + renderPmg(c));
        if (byMcp) out.push_back(std::move(c));
    }
    return out;
}

std::vector<Graph> representedBy(const Graph& g, OracleOptions opt) {
    auto target = minimalColliderPaths(g);
    std::vector<Graph> out;
    for (auto& c : enumerateMags(g, opt))
        if (minimalColliderPaths(c) == target) out.push_back(std::move(c));
    return out;
}

std::vector<Graph> restrictMec(const std::vector<Graph>& mags, const KnowledgeSet& k) {
    std::vector<Graph> out;
    for (const auto& m : mags)
        if (std::all_of(k.begin(), k.end(), [&](const KnowledgePiece& p) { return pieceHolds(m, p); }))
            out.push_back(m);
    if (out.empty()) throw InconsistentKnowledge("no MAG in the class satisfies the knowledge");
    return out;
}

Graph essentialByIntersection(const std::vector<Graph>& mags) {
    if (mags.empty()) throw GraphError("essentialByIntersection needs a nonempty class");
    const Graph& first = mags.front();
    Graph out(first.names());
    for (auto [a, b] : first.edges()) {
        Mark atA = first.mark(b, a), atB = first.mark(a, b);
        for (const auto& m : mags) {
            if (m.mark(b, a) != atA) atA = Mark::Circle;
            if (m.mark(a, b) != atB) atB = Mark::Circle;
        }
        out.addEdge(a, b, atA, atB);
    }
    return out;
}

}  // namespace eag
