#include "eag/algorithms.hpp"

#include <algorithm>
#include <set>

#include "eag/paths.hpp"

namespace eag {

Graph dagToMag(const Graph& dag, const NodeList& latents) {
    if (!isDag(dag)) throw GraphError("dagToMag expects a DAG");
    std::vector<char> latent(dag.size(), 0);
    for (NodeId v : latents) latent.at(v) = 1;
    NodeList obs;
    std::vector<std::string> names;
    for (NodeId v = 0; v < dag.size(); ++v)
        if (!latent[v]) {
            obs.push_back(v);
            names.push_back(dag.name(v));
        }
    Graph mag(names);
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            NodeId a = obs[i], b = obs[j];
            NodeList z;
            for (NodeId v : ancestors(dag, NodeList{a, b}))
                if (!latent[v] && v != a && v != b) z.push_back(v);
            if (mSeparatedMixed(dag, a, b, z)) continue;
            Mark atA = ancestorMask(dag, {b})[a] ? Mark::Tail : Mark::Arrow;
            Mark atB = ancestorMask(dag, {a})[b] ? Mark::Tail : Mark::Arrow;
            mag.addEdge(static_cast<NodeId>(i), static_cast<NodeId>(j), atA, atB);
        }
    return mag;
}

Graph magToEssential(const Graph& m, std::vector<TraceEntry>* trace) {
    if (!m.isMixed()) throw GraphError("input has circle marks; a MAG is required");
    if (auto c = checkAncestral(m); !c.ancestral) throw GraphError("input MAG is not ancestral");
    if (!isMaximal(m)) throw GraphError("input MAG is not maximal");
    Graph g = skeleton(m);
    for (const auto& p : minimalColliderPaths(m))
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            g.setMark(p[i - 1], p[i], Mark::Arrow);
            g.setMark(p[i + 1], p[i], Mark::Arrow);
        }
    ClosureOptions opt;
    opt.rules = essentialRules();
    return closeUnder(std::move(g), opt, trace);
}

std::optional<std::string> admissibilityProblem(const Graph& g, const KnowledgePiece& p) {
    std::string piece = renderPiece(g, p);
    if (p.x < 0 || p.y < 0 || p.x >= g.size() || p.y >= g.size() || p.x == p.y)
        return piece + " does not name two distinct nodes";
    if (!g.adjacent(p.x, p.y))
        return piece + " is not admissible: " + g.name(p.x) + " and " + g.name(p.y) + " are not adjacent";
    for (auto t : pieceMarks(p)) {
        Mark cur = g.mark(t.x, t.y);
        if (cur != Mark::Circle && cur != t.mark)
            return piece + " is not admissible: " + renderEdge(g, p.x, p.y) + " has " +
                   (cur == Mark::Tail ? "a tail" : "an arrowhead") + " at " + g.name(t.y);
    }
    return std::nullopt;
}

Graph orientPiece(const Graph& g, const KnowledgePiece& p) {
    if (auto why = admissibilityProblem(g, p)) throw GraphError(*why);
    Graph out = g;
    for (auto t : pieceMarks(p)) out.setMark(t.x, t.y, t.mark);
    return out;
}

AddBgResult addBgKnowledge(const Graph& g, const KnowledgeSet& k, const ClosureOptions& opt) {
    AddBgResult res;
    res.graph = g;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (auto why = admissibilityProblem(res.graph, k[i])) {
            res.ok = false;
            res.failedIndex = i;
            res.reason = *why;
            return res;
        }
        KnowledgeStep step{k[i], {}};
        Graph oriented = orientPiece(res.graph, k[i]);
        try {
            res.graph = closeUnder(std::move(oriented), opt, &step.trace);
        } catch (const ClosureConflict& e) {
            res.ok = false;
            res.failedIndex = i;
            res.reason = e.what();
            res.conflict = true;
            return res;
        }
        res.steps.push_back(std::move(step));
    }
    return res;
}

std::optional<std::string> newColliderProblem(const Graph& g, const Graph& g2) {
    auto old = unshieldedColliders(g);
    std::set<std::array<NodeId, 3>> known(old.begin(), old.end());
    for (const auto& c : unshieldedColliders(g2))
        if (!known.count(c))
            return "new unshielded collider " + g2.name(c[0]) + " *-> " + g2.name(c[1]) + " <-* " + g2.name(c[2]);
    for (const auto& d : discriminatedColliders(g2)) {
        NodeId prev = d.path[d.path.size() - 3], b = d.path.back();
        if (g.mark(prev, d.collider) != Mark::Arrow || g.mark(b, d.collider) != Mark::Arrow) {
            std::string p;
            for (NodeId v : d.path) p += (p.empty() ? "" : ",") + g2.name(v);
            return "new collider at " + g2.name(d.collider) + " discriminated by <" + p + ">";
        }
    }
    return std::nullopt;
}

Theorem3Check checkTheorem3(const Graph& g, const Graph& g2) {
    auto fail = [](std::string s) { return Theorem3Check{false, std::move(s)}; };
    if (!sameSkeleton(g, g2)) return fail("skeletons differ");
    for (auto [a, b] : g.edges())
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
            if (g.mark(x, y) != Mark::Circle && g.mark(x, y) != g2.mark(x, y))
                return fail("invariant mark at " + g.name(y) + " on " + renderEdge(g, x, y) + " changed");
    if (auto c = findLen3Cycle(g2))
        return fail("cycle of length 3 through " + g2.name((*c)[0]) + ", " + g2.name((*c)[1]) + ", " +
                    g2.name((*c)[2]));
    if (auto why = newColliderProblem(g, g2)) return fail(*why);
    for (auto [a, b] : g.edges())
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
            if (g.mark(y, x) == Mark::Circle && g.mark(x, y) == Mark::Arrow && g2.mark(y, x) == Mark::Circle)
                return fail(renderEdge(g2, x, y) + " is still unresolved");
    for (RuleId r : allRules()) {
        bool hit = false;
        forEachFiring(g2, r, [&](const Firing&) { return hit = true; });
        if (hit) return fail(std::string(ruleName(r)) + " still fires");
    }
    return {};
}

namespace {

std::vector<std::pair<NodeId, NodeId>> circleArrowEdges(const Graph& g) {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (auto [a, b] : g.edges()) {
        if (g.mark(b, a) == Mark::Circle && g.mark(a, b) == Mark::Arrow) out.emplace_back(a, b);
        if (g.mark(a, b) == Mark::Circle && g.mark(b, a) == Mark::Arrow) out.emplace_back(b, a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::set<MarkTriple> invariantOnCircleEdges(const Graph& g, const Graph& h) {
    std::set<MarkTriple> out;
    for (auto [a, b] : g.edges()) {
        if (!g.circleCircle(a, b)) continue;
        if (h.mark(a, b) != Mark::Circle) out.insert({a, b, h.mark(a, b)});
        if (h.mark(b, a) != Mark::Circle) out.insert({b, a, h.mark(b, a)});
    }
    return out;
}

}  // namespace

std::optional<Graph> findTheorem3Completion(const Graph& g, const Graph& g2, const KnowledgeSet& pieces) {
    auto start = addBgKnowledge(g2, pieces);
    if (!start.ok) return std::nullopt;
    auto open = circleArrowEdges(g);
    auto search = [&](auto&& self, const Graph& h) -> std::optional<Graph> {
        // Arrowheads and tails never go away, so both checks are safe to prune on.
        if (findLen3Cycle(h) || newColliderProblem(g, h)) return std::nullopt;
        auto next = std::find_if(open.begin(), open.end(),
                                 [&](auto e) { return h.mark(e.second, e.first) == Mark::Circle; });
        if (next == open.end()) {
            if (satisfiesTheorem3(g, h)) return h;
            return std::nullopt;
        }
        auto [a, b] = *next;
        for (PieceForm f : {PieceForm::Directed, PieceForm::ArrowAtX}) {
            auto r = addBgKnowledge(h, {{a, b, f}});
            if (!r.ok) continue;
            if (auto found = self(self, r.graph)) return found;
        }
        return std::nullopt;
    };
    return search(search, start.graph);
}

namespace {

std::optional<std::string> inputProblem(const Graph& g, const KnowledgeSet& k, const Graph& g2) {
    if (!sameSkeleton(g, g2)) return "graphs have different skeletons";
    for (auto [a, b] : g.edges())
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
            if (g.mark(x, y) != Mark::Circle && g2.mark(x, y) != g.mark(x, y))
                return "invariant mark at " + g2.name(y) + " on " + renderEdge(g2, x, y) + " differs";
    for (const auto& p : k)
        for (const auto& t : pieceMarks(p))
            if (g2.mark(t.x, t.y) != t.mark) return renderPiece(g2, p) + " does not hold";
    for (RuleId r : allRules())
        if (anyFiring(g2, {r})) return std::string("orientations are not closed under ") + ruleName(r);
    return std::nullopt;
}

}  // namespace

VerifyReport verifyCompleteness(const Graph& g, const KnowledgeSet& k, const Graph& g2) {
    VerifyReport rep;
    if (auto why = inputProblem(g, k, g2)) {
        rep.inputOk = rep.verdict = false;
        rep.failure = *why;
        return rep;
    }
    std::vector<std::pair<NodeId, NodeId>> survivors;
    for (auto [a, b] : circleArrowEdges(g))
        if (g2.mark(b, a) == Mark::Circle && g2.mark(a, b) == Mark::Arrow) survivors.emplace_back(a, b);
    auto invPrime = invariantOnCircleEdges(g, g2);

    if (!survivors.empty()) {
        std::optional<std::set<MarkTriple>> common;
        for (auto [a, b] : survivors)
            for (PieceForm f : {PieceForm::Directed, PieceForm::ArrowAtX}) {
                EdgeResolution er{a, b, f, false};
                auto h = findTheorem3Completion(g, g2, {{a, b, f}});
                er.found = h.has_value();
                rep.edges.push_back(er);
                if (!h) {
                    rep.verdict = false;
                    rep.failure = "no completion with " + renderPiece(g2, {a, b, f});
                    return rep;
                }
                auto inv = invariantOnCircleEdges(g, *h);
                if (!common) {
                    common = inv;
                } else {
                    std::set<MarkTriple> keep;
                    std::set_intersection(common->begin(), common->end(), inv.begin(), inv.end(),
                                          std::inserter(keep, keep.end()));
                    common = std::move(keep);
                }
            }
        for (const auto& t : *common) {
            if (invPrime.count(t)) continue;
            // t is the mark at t.y on edge t.x-t.y; ask for the opposite mark there.
            KnowledgePiece comp = t.mark == Mark::Arrow ? KnowledgePiece{t.y, t.x, PieceForm::Directed}
                                                        : KnowledgePiece{t.y, t.x, PieceForm::ArrowAtX};
            ResidueCheck rc{t, comp, false};
            rc.found = findTheorem3Completion(g, g2, {comp}).has_value();
            rep.residue.push_back(rc);
            if (!rc.found) {
                rep.verdict = false;
                rep.failure = "no completion with " + renderPiece(g2, comp);
                return rep;
            }
        }
    }
    if (auto c = findLen3Cycle(g2)) {
        rep.finalCheckOk = rep.verdict = false;
        rep.failure = "cycle of length 3 through " + g2.name((*c)[0]) + ", " + g2.name((*c)[1]) + ", " +
                      g2.name((*c)[2]);
    } else if (auto why = newColliderProblem(g, g2)) {
        rep.finalCheckOk = rep.verdict = false;
        rep.failure = *why;
    }
    return rep;
}

}  // namespace eag
