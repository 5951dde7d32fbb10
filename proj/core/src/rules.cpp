#include "eag/rules.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace eag {

namespace {

constexpr std::pair<RuleId, const char*> kRuleNames[] = {
    {RuleId::R1, "R1"},   {RuleId::R2, "R2"},   {RuleId::R3, "R3"},   {RuleId::ZhaoR4, "ZhaoR4"},
    {RuleId::R4, "R4"},   {RuleId::R8, "R8"},   {RuleId::R9, "R9"},   {RuleId::R10, "R10"},
    {RuleId::R11, "R11"}, {RuleId::R12, "R12"}, {RuleId::R13, "R13"},
};

using Emit = std::function<bool(const Firing&)>;

Command tailAt(NodeId at, NodeId other) { return {other, at, Mark::Tail}; }
Command arrowAt(NodeId at, NodeId other) { return {other, at, Mark::Arrow}; }

bool isO_Arrow(const Graph& g, NodeId a, NodeId c) {  // a o-> c
    return g.mark(c, a) == Mark::Circle && g.mark(a, c) == Mark::Arrow;
}

std::optional<Path> findUnshieldedPd(const Graph& g, NodeId a, NodeId first, NodeId target) {
    std::optional<Path> found;
    walkUnshieldedPossiblyDirected(g, a, first, [&](const Path& p) {
        if (p.back() != target) return false;
        found = p;
        return true;
    });
    return found;
}

bool r1(const Graph& g, const Emit& emit) {
    for (NodeId b = 0; b < g.size(); ++b)
        for (NodeId a : g.neighbors(b)) {
            if (g.mark(a, b) != Mark::Arrow) continue;
            for (NodeId c : g.neighbors(b)) {
                if (c == a || g.mark(c, b) != Mark::Circle || g.adjacent(a, c)) continue;
                if (emit({RuleId::R1, {a, b, c}, {tailAt(b, c), arrowAt(c, b)}})) return true;
            }
        }
    return false;
}

bool r2(const Graph& g, const Emit& emit) {
    for (NodeId a = 0; a < g.size(); ++a)
        for (NodeId c : g.neighbors(a)) {
            if (g.mark(a, c) != Mark::Circle) continue;
            for (NodeId b : g.neighbors(a)) {
                if (b == c || !g.adjacent(b, c)) continue;
                bool fires = (g.directed(a, b) && g.mark(b, c) == Mark::Arrow) ||
                             (g.mark(a, b) == Mark::Arrow && g.directed(b, c));
                if (fires && emit({RuleId::R2, {a, b, c}, {arrowAt(c, a)}})) return true;
                if (fires) break;
            }
        }
    return false;
}

bool r3(const Graph& g, const Emit& emit) {
    for (NodeId d = 0; d < g.size(); ++d)
        for (NodeId b : g.neighbors(d)) {
            if (g.mark(d, b) != Mark::Circle) continue;
            bool done = false;
            for (NodeId a : g.neighbors(b)) {
                if (a == d || g.mark(a, b) != Mark::Arrow || g.mark(a, d) != Mark::Circle) continue;
                for (NodeId c : g.neighbors(b)) {
                    if (c == a || c == d || g.mark(c, b) != Mark::Arrow) continue;
                    if (g.mark(c, d) != Mark::Circle || g.adjacent(a, c)) continue;
                    if (emit({RuleId::R3, {a, b, c, d}, {arrowAt(b, d)}})) return true;
                    done = true;
                    break;
                }
                if (done) break;
            }
        }
    return false;
}

bool r4(const Graph& g, bool almost, AlmostColliderOptions opt, const Emit& emit) {
    RuleId id = almost ? RuleId::R4 : RuleId::ZhaoR4;
    for (NodeId qk = 0; qk < g.size(); ++qk)
        for (NodeId b : g.neighbors(qk)) {
            if (g.mark(b, qk) != Mark::Circle) continue;
            auto paths = almost ? almostDiscriminatingPaths(g, qk, b, opt) : discriminatingPaths(g, qk, b);
            if (paths.empty()) continue;
            if (emit({id, paths.front(), {tailAt(qk, b), arrowAt(b, qk)}})) return true;
        }
    return false;
}

bool r8(const Graph& g, const Emit& emit) {
    for (NodeId a = 0; a < g.size(); ++a)
        for (NodeId c : g.neighbors(a)) {
            if (!isO_Arrow(g, a, c)) continue;
            for (NodeId b : g.neighbors(a))
                if (g.directed(a, b) && g.directed(b, c)) {
                    if (emit({RuleId::R8, {a, b, c}, {tailAt(a, c)}})) return true;
                    break;
                }
        }
    return false;
}

bool r9(const Graph& g, const Emit& emit) {
    for (NodeId a = 0; a < g.size(); ++a)
        for (NodeId c : g.neighbors(a)) {
            if (!isO_Arrow(g, a, c)) continue;
            for (NodeId b : g.neighbors(a)) {
                if (b == c || g.adjacent(b, c)) continue;
                if (auto p = findUnshieldedPd(g, a, b, c)) {
                    if (emit({RuleId::R9, *p, {tailAt(a, c)}})) return true;
                    break;
                }
            }
        }
    return false;
}

bool r10(const Graph& g, const Emit& emit) {
    for (NodeId a = 0; a < g.size(); ++a)
        for (NodeId c : g.neighbors(a)) {
            if (!isO_Arrow(g, a, c)) continue;
            NodeList pa = parents(g, c);
            std::optional<Path> witness;
            for (std::size_t i = 0; i < pa.size() && !witness; ++i)
                for (std::size_t j = 0; j < pa.size() && !witness; ++j) {
                    if (i == j) continue;
                    NodeId b = pa[i], d = pa[j];
                    for (NodeId m1 : g.neighbors(a)) {
                        if (witness) break;
                        auto p1 = findUnshieldedPd(g, a, m1, b);
                        if (!p1) continue;
                        for (NodeId m2 : g.neighbors(a)) {
                            if (m2 == m1 || g.adjacent(m1, m2)) continue;
                            auto p2 = findUnshieldedPd(g, a, m2, d);
                            if (!p2) continue;
                            Path w = *p1;
                            w.push_back(c);
                            w.insert(w.end(), p2->rbegin(), p2->rend());
                            witness = w;
                            break;
                        }
                    }
                }
            if (witness && emit({RuleId::R10, *witness, {tailAt(a, c)}})) return true;
        }
    return false;
}

bool r11(const Graph& g, const Emit& emit) {
    for (NodeId d = 0; d < g.size(); ++d)
        for (NodeId a : g.neighbors(d)) {
            if (g.mark(d, a) != Mark::Circle) continue;
            bool done = false;
            for (NodeId c : parents(g, d)) {
                if (c == a || !g.adjacent(a, c)) continue;
                for (NodeId b : g.neighbors(c)) {
                    if (b == a || b == d || g.mark(b, c) != Mark::Arrow) continue;
                    if (!g.adjacent(a, b) || g.adjacent(b, d)) continue;
                    if (emit({RuleId::R11, {b, c, d, a}, {tailAt(a, d), arrowAt(d, a)}})) return true;
                    done = true;
                    break;
                }
                if (done) break;
            }
        }
    return false;
}

bool r12(const Graph& g, const Emit& emit) {
    int n = g.size();
    for (NodeId v1 = 0; v1 < n; ++v1)
        for (NodeId v2 : g.neighbors(v1)) {
            if (!g.circleCircle(v1, v2)) continue;
            // Walk unshielded paths v1 o-o v2 o-o ... looking for Vi o-* end with Vi -> W <-> v1.
            std::vector<char> onPath(n, 0);
            Path path{v1, v2};
            onPath[v1] = onPath[v2] = 1;
            std::optional<Path> witness;
            auto dfs = [&](auto&& self) -> void {
                NodeId v = path.back(), u = path[path.size() - 2];
                for (NodeId w : g.neighbors(v)) {
                    if (witness) return;
                    if (onPath[w] || g.adjacent(u, w) || g.mark(w, v) != Mark::Circle) continue;
                    // w as Vi
                    for (NodeId x : children(g, w))
                        if (!onPath[x] && g.bidirected(x, v1)) {
                            witness = path;
                            witness->push_back(w);
                            witness->push_back(x);
                            return;
                        }
                    if (!g.circleCircle(v, w)) continue;
                    path.push_back(w);
                    onPath[w] = 1;
                    self(self);
                    onPath[w] = 0;
                    path.pop_back();
                }
            };
            dfs(dfs);
            if (witness && emit({RuleId::R12, *witness, {arrowAt(v1, v2)}})) return true;
        }
    return false;
}

bool r13(const Graph& g, const Emit& emit) {
    int n = g.size();
    for (NodeId a = 0; a < n; ++a) {
        NodeList bs;
        for (NodeId b : g.neighbors(a))
            if (g.mark(b, a) == Mark::Circle) bs.push_back(b);
        if (bs.empty()) continue;
        NodeList sp;
        for (NodeId x : g.neighbors(a))
            if (g.bidirected(a, x)) sp.push_back(x);
        std::vector<char> fired(n, 0);
        for (NodeId c : sp)
            for (NodeId d : sp) {
                if (c == d) continue;
                std::vector<char> onPath(n, 0);
                onPath[a] = onPath[c] = onPath[d] = 1;
                Path path{c};
                // Returns true to stop.
                auto dfs = [&](auto&& self) -> bool {
                    NodeId v = path.back();
                    NodeId u = path.size() >= 2 ? path[path.size() - 2] : -1;
                    // close with Vk o-> d
                    if (path.size() >= 3 && isO_Arrow(g, v, d) && !g.adjacent(u, d)) {
                        Path vs(path.begin() + 1, path.end());
                        for (NodeId b : bs) {
                            if (fired[b]) continue;
                            bool all = std::all_of(vs.begin(), vs.end(), [&](NodeId vi) {
                                return existsUnshieldedPossiblyDirected(g, a, b, vi);
                            });
                            if (!all) continue;
                            fired[b] = 1;
                            Path w = path;
                            w.push_back(d);
                            w.push_back(a);
                            w.push_back(b);
                            if (emit({RuleId::R13, w, {arrowAt(a, b)}})) return true;
                        }
                    }
                    for (NodeId w : g.neighbors(v)) {
                        if (onPath[w] || (u >= 0 && g.adjacent(u, w))) continue;
                        bool ok = u < 0 ? (g.mark(w, v) == Mark::Arrow && g.mark(v, w) == Mark::Circle)
                                        : g.circleCircle(v, w);
                        if (!ok) continue;
                        path.push_back(w);
                        onPath[w] = 1;
                        bool stop = self(self);
                        onPath[w] = 0;
                        path.pop_back();
                        if (stop) return true;
                    }
                    return false;
                };
                if (dfs(dfs)) return true;
            }
    }
    return false;
}

}  // namespace

const char* ruleName(RuleId r) {
    for (auto [id, name] : kRuleNames)
        if (id == r) return name;
    return "?";
}

RuleId parseRuleName(const std::string& s) {
    for (auto [id, name] : kRuleNames)
        if (s == name) return id;
    throw GraphError("unknown rule: " + s);
}

std::vector<RuleId> essentialRules() {
    return {RuleId::R1, RuleId::R2, RuleId::R3, RuleId::ZhaoR4, RuleId::R8, RuleId::R9, RuleId::R10};
}

std::vector<RuleId> knowledgeRules() {
    return {RuleId::R1, RuleId::R2, RuleId::R4, RuleId::R8,
            RuleId::R10, RuleId::R11, RuleId::R12, RuleId::R13};
}

std::vector<RuleId> allRules() {
    return {RuleId::R1, RuleId::R2, RuleId::R3, RuleId::R4, RuleId::R8, RuleId::R9,
            RuleId::R10, RuleId::R11, RuleId::R12, RuleId::R13};
}

void forEachFiring(const Graph& g, RuleId r, const std::function<bool(const Firing&)>& emit,
                   AlmostColliderOptions opt) {
    switch (r) {
        case RuleId::R1: r1(g, emit); break;
        case RuleId::R2: r2(g, emit); break;
        case RuleId::R3: r3(g, emit); break;
        case RuleId::ZhaoR4: r4(g, false, opt, emit); break;
        case RuleId::R4: r4(g, true, opt, emit); break;
        case RuleId::R8: r8(g, emit); break;
        case RuleId::R9: r9(g, emit); break;
        case RuleId::R10: r10(g, emit); break;
        case RuleId::R11: r11(g, emit); break;
        case RuleId::R12: r12(g, emit); break;
        case RuleId::R13: r13(g, emit); break;
    }
}

std::vector<Firing> findFirings(const Graph& g, RuleId r, AlmostColliderOptions opt) {
    std::vector<Firing> out;
    forEachFiring(g, r, [&](const Firing& f) {
        out.push_back(f);
        return false;
    }, opt);
    return out;
}

bool anyFiring(const Graph& g, const std::vector<RuleId>& rules, AlmostColliderOptions opt) {
    for (RuleId r : rules) {
        bool hit = false;
        forEachFiring(g, r, [&](const Firing&) { return hit = true; }, opt);
        if (hit) return true;
    }
    return false;
}

Graph closeUnder(Graph g, const ClosureOptions& opt, std::vector<TraceEntry>* trace) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (RuleId r : opt.rules) {
            auto batch = findFirings(g, r, opt.almost);
            for (const auto& f : batch)
                for (const auto& c : f.commands) {
                    Mark cur = g.mark(c.x, c.y);
                    if (cur == c.mark) continue;
                    TraceEntry e{f.rule, f.witness, c.x, c.y, c.mark};
                    if (cur != Mark::Circle) {
                        std::ostringstream os;
                        os << ruleName(f.rule) << " wants " << markName(c.mark) << " at "
                           << g.name(c.y) << " on " << renderEdge(g, c.x, c.y) << " but it is "
                           << markName(cur);
                        throw ClosureConflict(e, cur, os.str());
                    }
                    g.setMark(c.x, c.y, c.mark);
                    if (trace) trace->push_back(e);
                    changed = true;
                }
            if (changed) break;
        }
    }
    return g;
}

std::string traceToJsonLines(const Graph& g, const std::vector<TraceEntry>& trace) {
    std::string out;
    for (const auto& e : trace) {
        nlohmann::json j;
        j["rule"] = ruleName(e.rule);
        auto& w = j["witness"] = nlohmann::json::array();
        for (NodeId v : e.witness) w.push_back(g.name(v));
        j["edge"] = {g.name(e.x), g.name(e.y)};
        j["mark"] = markName(e.mark);
        out += j.dump() + "\n";
    }
    return out;
}

}  // namespace eag
