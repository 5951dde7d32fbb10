#include "eag/chordal.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "eag/paths.hpp"
#include "eag/rules.hpp"

namespace eag {

namespace {

bool contains(const Clique& c, NodeId v) { return std::binary_search(c.begin(), c.end(), v); }

Clique intersect(const Clique& a, const Clique& b) {
    Clique out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Clique minus(const Clique& a, const Clique& b) {
    Clique out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool subset(const Clique& a, const Clique& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// Visit order of maximum cardinality search, ties to the smallest id.
NodeList mcsOrder(const Graph& g) {
    int n = g.size();
    std::vector<int> weight(n, 0);
    std::vector<char> done(n, 0);
    NodeList order;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!done[v] && (best < 0 || weight[v] > weight[best])) best = v;
        done[best] = 1;
        order.push_back(best);
        for (NodeId w : g.neighbors(best))
            if (!done[w]) ++weight[w];
    }
    return order;
}

// For each visited node, the node plus its earlier-visited neighbours.
std::vector<Clique> mcsSets(const Graph& g, bool& chordal) {
    NodeList order = mcsOrder(g);
    std::vector<int> pos(g.size());
    for (int i = 0; i < g.size(); ++i) pos[order[i]] = i;
    std::vector<Clique> sets;
    chordal = true;
    for (int i = 0; i < g.size(); ++i) {
        NodeId v = order[i];
        Clique s{v};
        for (NodeId w : g.neighbors(v))
            if (pos[w] < i) s.push_back(w);
        for (std::size_t a = 1; a < s.size() && chordal; ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b)
                if (!g.adjacent(s[a], s[b])) {
                    chordal = false;
                    break;
                }
        std::sort(s.begin(), s.end());
        sets.push_back(std::move(s));
    }
    return sets;
}

bool isDirectedTo(const Graph& g, NodeId b, NodeId c) { return g.directed(b, c); }

std::vector<std::array<int, 3>> triples(const JoinTree& t) {
    std::vector<std::array<int, 3>> out;
    for (int j = 0; j < static_cast<int>(t.cliques.size()); ++j) {
        auto nb = t.neighbors(j);
        for (int i : nb)
            for (int k : nb)
                if (i != k) out.push_back({i, j, k});
    }
    std::sort(out.begin(), out.end());
    return out;
}

void replaceEdge(JoinTree& t, int removeA, int removeB, int addA, int addB) {
    auto lo = std::min(removeA, removeB), hi = std::max(removeA, removeB);
    t.edges.erase(std::remove_if(t.edges.begin(), t.edges.end(),
                                 [&](const TreeEdge& e) { return e.a == lo && e.b == hi; }),
                  t.edges.end());
    t.edges.push_back({std::min(addA, addB), std::max(addA, addB), TreeDir::Undirected});
    std::sort(t.edges.begin(), t.edges.end(),
              [](const TreeEdge& x, const TreeEdge& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
}

void setDir(JoinTree& t, int from, int to) {
    for (auto& e : t.edges) {
        if (e.a == from && e.b == to) e.dir = TreeDir::Forward;
        if (e.a == to && e.b == from) e.dir = TreeDir::Backward;
    }
}

// Gamma between every pair of cliques; it depends only on g.
std::vector<std::vector<char>> gammaTable(const Graph& g, const JoinTree& t) {
    std::size_t k = t.cliques.size();
    std::vector<std::vector<char>> out(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) out[i][j] = gammaHolds(g, t.cliques[i], t.cliques[j]).has_value();
    return out;
}

void applyGamma(const std::vector<std::vector<char>>& gam, JoinTree& t) {
    for (auto& e : t.edges)
        e.dir = gam[e.a][e.b] ? TreeDir::Forward : gam[e.b][e.a] ? TreeDir::Backward : TreeDir::Undirected;
}

JoinTree helper(const std::vector<std::vector<char>>& gam, JoinTree t) {
    auto q0 = triples(t);
    std::deque<std::array<int, 3>> queue(q0.begin(), q0.end());
    std::size_t guard = 0, limit = 1000 + 10 * t.cliques.size() * t.cliques.size() * t.cliques.size();
    while (!queue.empty()) {
        if (++guard > limit) throw std::logic_error("transformTreeHelper did not terminate");
        auto [i, j, k] = queue.front();
        queue.pop_front();
        if (!t.hasEdge(i, j) || !t.hasEdge(j, k)) continue;
        if (!gam[i][j] || gam[j][k]) continue;
        Clique lij = intersect(t.cliques[i], t.cliques[j]);
        Clique ljk = intersect(t.cliques[j], t.cliques[k]);
        Clique lik = intersect(t.cliques[i], t.cliques[k]);
        if (!(lik == ljk && subset(ljk, lij))) continue;
        auto before = triples(t);
        replaceEdge(t, j, k, i, k);
        applyGamma(gam, t);
        auto after = triples(t);
        std::vector<std::array<int, 3>> gone, fresh;
        std::set_difference(before.begin(), before.end(), after.begin(), after.end(), std::back_inserter(gone));
        std::set_difference(after.begin(), after.end(), before.begin(), before.end(), std::back_inserter(fresh));
        queue.erase(std::remove_if(queue.begin(), queue.end(),
                                   [&](const auto& x) { return std::binary_search(gone.begin(), gone.end(), x); }),
                    queue.end());
        for (const auto& x : fresh) queue.push_back(x);
    }
    return t;
}

// Directed chains start -> ... -> c0; each result excludes start.
void chainsTo(const JoinTree& t, int cur, int prev, int c0, std::vector<int>& stack,
              std::vector<std::vector<int>>& out) {
    if (cur == c0) {
        out.push_back(stack);
        return;
    }
    for (int nx : t.neighbors(cur)) {
        if (nx == prev || !t.points(cur, nx)) continue;
        stack.push_back(nx);
        chainsTo(t, nx, cur, c0, stack, out);
        stack.pop_back();
    }
}

void undirectedWalk(const JoinTree& t, int c0, std::vector<int>& path, RelevantPaths& out) {
    int cur = path.back(), prev = path[path.size() - 2];
    if (path.size() >= 3) {
        std::vector<int> stack;
        std::vector<std::vector<int>> tails;
        chainsTo(t, cur, prev, c0, stack, tails);
        for (const auto& tail : tails) {
            auto p = path;
            p.insert(p.end(), tail.begin(), tail.end());
            out.toAnchor.push_back(std::move(p));
        }
        for (int nx : t.neighbors(cur))
            if (nx != prev && t.points(nx, cur)) {
                auto p = path;
                p.push_back(nx);
                out.colliding.push_back(std::move(p));
            }
    }
    for (int nx : t.neighbors(cur)) {
        if (nx == prev || !t.undirected(cur, nx)) continue;
        path.push_back(nx);
        undirectedWalk(t, c0, path, out);
        path.pop_back();
    }
}

std::vector<std::vector<int>> undirectedPaths(const JoinTree& t) {
    std::vector<std::vector<int>> out;
    auto walk = [&](auto&& self, std::vector<int>& p) -> void {
        if (p.size() >= 2) out.push_back(p);
        for (int nx : t.neighbors(p.back())) {
            if ((p.size() >= 2 && nx == p[p.size() - 2]) || !t.undirected(p.back(), nx)) continue;
            p.push_back(nx);
            self(self, p);
            p.pop_back();
        }
    };
    for (int s = 0; s < static_cast<int>(t.cliques.size()); ++s) {
        std::vector<int> p{s};
        walk(walk, p);
    }
    return out;
}

void setChecked(Graph& g, NodeId x, NodeId y, Mark m) {
    Mark cur = g.mark(x, y);
    if (cur == m) return;
    if (cur != Mark::Circle)
        throw InadmissibleRequest("cannot put " + std::string(m == Mark::Tail ? "a tail" : "an arrowhead") + " at " +
                                  g.name(y) + " on " + renderEdge(g, x, y));
    g.setMark(x, y, m);
}

bool admits(const Graph& g, NodeId x, NodeId y, EdgeOrientation m) {
    auto ok = [&](NodeId a, NodeId b, Mark want) {
        Mark cur = g.mark(a, b);
        return cur == Mark::Circle || cur == want;
    };
    switch (m) {
        case EdgeOrientation::Directed: return ok(x, y, Mark::Arrow) && ok(y, x, Mark::Tail);
        case EdgeOrientation::Reverse: return ok(x, y, Mark::Tail) && ok(y, x, Mark::Arrow);
        case EdgeOrientation::Bidirected: return ok(x, y, Mark::Arrow) && ok(y, x, Mark::Arrow);
    }
    return false;
}

bool holds(const Graph& g, NodeId x, NodeId y, EdgeOrientation m) {
    switch (m) {
        case EdgeOrientation::Directed: return g.directed(x, y);
        case EdgeOrientation::Reverse: return g.directed(y, x);
        case EdgeOrientation::Bidirected: return g.bidirected(x, y);
    }
    return false;
}

// R2 and R8 only follow from ancestrality, so they hold in every completion.
void closeAncestral(Graph& g) {
    ClosureOptions opt;
    opt.rules = {RuleId::R2, RuleId::R8};
    try {
        g = closeUnder(std::move(g), opt);
    } catch (const ClosureConflict& e) {
        throw InadmissibleRequest(e.what());
    }
}

void circlesToArrows(Graph& g, const NodeList& nodes) {
    for (NodeId a : nodes)
        for (NodeId b : nodes)
            if (a != b && g.mark(a, b) == Mark::Circle) g.setMark(a, b, Mark::Arrow);
}

// Total order by repeatedly removing a node with no edge out of it inside the
// remaining set, preferring y and never x while y is left.
NodeList sinkOrder(const Graph& g, const Clique& c, NodeId x, NodeId y) {
    NodeList left = c, order;
    while (!left.empty()) {
        auto isSink = [&](NodeId v) {
            return std::none_of(left.begin(), left.end(), [&](NodeId w) { return w != v && g.directed(v, w); });
        };
        NodeId pick = -1;
        bool yLeft = contains(left, y);
        if (yLeft && isSink(y)) {
            pick = y;
        } else {
            for (NodeId v : left)
                if (isSink(v) && !(yLeft && v == x)) {
                    pick = v;
                    break;
                }
        }
        if (pick < 0) throw InadmissibleRequest("no sink node left in clique");
        order.push_back(pick);
        left.erase(std::find(left.begin(), left.end(), pick));
    }
    std::reverse(order.begin(), order.end());
    return order;
}

}  // namespace

bool JoinTree::hasEdge(int i, int j) const {
    int lo = std::min(i, j), hi = std::max(i, j);
    return std::any_of(edges.begin(), edges.end(), [&](const TreeEdge& e) { return e.a == lo && e.b == hi; });
}

bool JoinTree::points(int i, int j) const {
    for (const auto& e : edges) {
        if (e.a == i && e.b == j) return e.dir == TreeDir::Forward;
        if (e.a == j && e.b == i) return e.dir == TreeDir::Backward;
    }
    return false;
}

bool JoinTree::undirected(int i, int j) const {
    int lo = std::min(i, j), hi = std::max(i, j);
    for (const auto& e : edges)
        if (e.a == lo && e.b == hi) return e.dir == TreeDir::Undirected;
    return false;
}

std::vector<int> JoinTree::neighbors(int i) const {
    std::vector<int> out;
    for (const auto& e : edges) {
        if (e.a == i) out.push_back(e.b);
        if (e.b == i) out.push_back(e.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> JoinTree::path(int i, int j) const {
    std::vector<int> prev(cliques.size(), -1);
    std::deque<int> q{i};
    prev[i] = i;
    while (!q.empty()) {
        int c = q.front();
        q.pop_front();
        for (int nx : neighbors(c))
            if (prev[nx] < 0) {
                prev[nx] = c;
                q.push_back(nx);
            }
    }
    if (prev[j] < 0) return {};
    std::vector<int> out{j};
    while (out.back() != i) out.push_back(prev[out.back()]);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<int> JoinTree::ancestorsOf(int c) const {
    std::vector<char> seen(cliques.size(), 0);
    std::vector<int> stack{c};
    seen[c] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int nx : neighbors(v))
            if (!seen[nx] && points(nx, v)) {
                seen[nx] = 1;
                stack.push_back(nx);
            }
    }
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(cliques.size()); ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

int JoinTree::indexOf(const Clique& c) const {
    auto it = std::find(cliques.begin(), cliques.end(), c);
    return it == cliques.end() ? -1 : static_cast<int>(it - cliques.begin());
}

bool isChordal(const Graph& g) {
    bool chordal = true;
    mcsSets(g, chordal);
    return chordal;
}

std::vector<Clique> maximalCliques(const Graph& g) {
    bool chordal = true;
    auto sets = mcsSets(g, chordal);
    if (!chordal) throw NotChordal("skeleton is not chordal");
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<Clique> out;
    for (const auto& s : sets)
        if (std::none_of(sets.begin(), sets.end(), [&](const Clique& o) { return o != s && subset(s, o); }))
            out.push_back(s);
    return out;
}

std::optional<GammaWitness> gammaHolds(const Graph& g, const Clique& ci, const Clique& cj) {
    Clique lam = intersect(ci, cj);
    if (lam.empty()) return std::nullopt;
    for (NodeId b : lam)
        for (NodeId c : minus(cj, lam))
            if (!isDirectedTo(g, b, c)) return std::nullopt;
    for (NodeId a : minus(ci, lam))
        for (NodeId b : lam)
            if (g.mark(a, b) == Mark::Arrow) return GammaWitness{a, b};
    return std::nullopt;
}

void directByGamma(const Graph& g, JoinTree& t) { applyGamma(gammaTable(g, t), t); }

JoinTree makeJoinTree(const Graph& g, std::vector<Clique> cliques, const std::vector<std::pair<int, int>>& edges) {
    JoinTree t;
    t.cliques = std::move(cliques);
    for (auto [a, b] : edges) t.edges.push_back({std::min(a, b), std::max(a, b), TreeDir::Undirected});
    std::sort(t.edges.begin(), t.edges.end(),
              [](const TreeEdge& x, const TreeEdge& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
    directByGamma(g, t);
    return t;
}

JoinTree buildJoinTree(const Graph& g) {
    auto cliques = maximalCliques(g);
    int k = static_cast<int>(cliques.size());
    struct Cand {
        int w, a, b;
    };
    std::vector<Cand> cands;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (int w = static_cast<int>(intersect(cliques[a], cliques[b]).size()); w > 0) cands.push_back({w, a, b});
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.w > y.w; });
    std::vector<int> root(k);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int v) {
        while (root[v] != v) v = root[v] = root[root[v]];
        return v;
    };
    std::vector<std::pair<int, int>> chosen;
    for (const auto& c : cands) {
        int ra = find(c.a), rb = find(c.b);
        if (ra == rb) continue;
        root[ra] = rb;
        chosen.emplace_back(c.a, c.b);
    }
    if (static_cast<int>(chosen.size()) + 1 < k) throw GraphError("skeleton is not connected");
    auto t = makeJoinTree(g, std::move(cliques), chosen);
    if (!hasRunningIntersection(t)) throw std::logic_error("join tree lost running intersection");
    return t;
}

bool isTree(const JoinTree& t) {
    int k = static_cast<int>(t.cliques.size());
    if (static_cast<int>(t.edges.size()) != k - 1) return false;
    for (int i = 1; i < k; ++i)
        if (t.path(0, i).empty()) return false;
    return true;
}

bool hasRunningIntersection(const JoinTree& t) {
    if (!isTree(t)) return false;
    std::set<NodeId> nodes;
    for (const auto& c : t.cliques) nodes.insert(c.begin(), c.end());
    for (NodeId v : nodes) {
        int in = 0, links = 0;
        for (const auto& c : t.cliques) in += contains(c, v);
        for (const auto& e : t.edges) links += contains(t.cliques[e.a], v) && contains(t.cliques[e.b], v);
        if (links != in - 1) return false;
    }
    return true;
}

JoinTree transformTreeHelper(const Graph& g, JoinTree t) {
    auto gam = gammaTable(g, t);
    applyGamma(gam, t);
    return helper(gam, std::move(t));
}

RelevantPaths relevantPaths(const JoinTree& t, int c0) {
    RelevantPaths out;
    for (const auto& e : t.edges) {
        if (e.dir == TreeDir::Undirected) continue;
        int from = e.dir == TreeDir::Forward ? e.a : e.b;
        int to = e.dir == TreeDir::Forward ? e.b : e.a;
        for (int nx : t.neighbors(to)) {
            if (nx == from || !t.undirected(to, nx)) continue;
            std::vector<int> path{from, to, nx};
            undirectedWalk(t, c0, path, out);
        }
    }
    std::sort(out.toAnchor.begin(), out.toAnchor.end());
    std::sort(out.colliding.begin(), out.colliding.end());
    return out;
}

bool isAnchored(const JoinTree& t, int c0) { return relevantPaths(t, c0).toAnchor.empty(); }

bool hasTreeCollider(const JoinTree& t) {
    for (int j = 0; j < static_cast<int>(t.cliques.size()); ++j) {
        int in = 0;
        for (int nx : t.neighbors(j)) in += t.points(nx, j);
        if (in > 1) return true;
    }
    return false;
}

JoinTree transformTree(const Graph& g, JoinTree t, int c0) {
    auto gam = gammaTable(g, t);
    applyGamma(gam, t);
    t = helper(gam, std::move(t));
    std::size_t k = t.cliques.size(), guard = 0, limit = 1000 + 10 * k * k * k;
    for (;;) {
        auto rp = relevantPaths(t, c0);
        if (rp.empty()) break;
        if (++guard > limit) throw std::logic_error("transformTree did not terminate");
        std::vector<std::vector<int>> all = rp.toAnchor;
        all.insert(all.end(), rp.colliding.begin(), rp.colliding.end());
        // Farthest start from the anchor; ties go to the smallest label sequence.
        const std::vector<int>* best = nullptr;
        int bestD = -1;
        for (const auto& p : all) {
            int d = t.distance(p[0], c0);
            if (d > bestD || (d == bestD && p < *best)) {
                best = &p;
                bestD = d;
            }
        }
        int c1 = (*best)[0], c2 = (*best)[1], c3 = (*best)[2];
        replaceEdge(t, c1, c2, c1, c3);
        applyGamma(gam, t);
        t = helper(gam, std::move(t));
    }
    return t;
}

JoinTree orientTree(const Graph& g, JoinTree t, int c0) {
    t = transformTree(g, std::move(t), c0);
    for (;;) {
        auto paths = undirectedPaths(t);
        if (paths.empty()) break;
        const std::vector<int>* best = nullptr;
        for (const auto& p : paths)
            if (!best || p.size() > best->size() || (p.size() == best->size() && p < *best)) best = &p;
        const std::vector<int>& p = *best;
        auto an = t.ancestorsOf(c0);
        auto qualifies = [&](int c) {
            if (std::binary_search(an.begin(), an.end(), c)) return true;
            for (int nx : t.neighbors(c))
                if (t.points(nx, c)) return true;
            return false;
        };
        // The whole undirected piece around p is oriented away from one root:
        // the node on it that is an ancestor of c0 or already has a parent,
        // else the far end of p.
        std::vector<int> piece{p.front()};
        for (std::size_t i = 0; i < piece.size(); ++i)
            for (int nx : t.neighbors(piece[i]))
                if (t.undirected(piece[i], nx) && std::find(piece.begin(), piece.end(), nx) == piece.end())
                    piece.push_back(nx);
        std::sort(piece.begin(), piece.end());
        int root = p.back();
        if (qualifies(p.front())) {
            root = p.front();
        } else {
            for (int c : piece)
                if (qualifies(c)) {
                    root = c;
                    break;
                }
        }
        std::vector<int> frontier{root};
        while (!frontier.empty()) {
            int c = frontier.back();
            frontier.pop_back();
            for (int nx : t.neighbors(c))
                if (t.undirected(c, nx)) {
                    setDir(t, c, nx);
                    frontier.push_back(nx);
                }
        }
    }
    return t;
}

Graph applyTreeOrientations(const Graph& g, const JoinTree& t) {
    Graph out = g;
    for (int j = 0; j < static_cast<int>(t.cliques.size()); ++j)
        for (int i : t.ancestorsOf(j)) {
            if (i == j) continue;
            const Clique& ci = t.cliques[i];
            const Clique& cj = t.cliques[j];
            for (NodeId b : intersect(ci, cj))
                for (NodeId c : minus(cj, ci)) {
                    out = out.oriented(b, c, Mark::Arrow);
                    out = out.oriented(c, b, Mark::Tail);
                }
        }
    return out;
}

const char* orientationName(EdgeOrientation m) {
    switch (m) {
        case EdgeOrientation::Directed: return "dir";
        case EdgeOrientation::Reverse: return "rev";
        case EdgeOrientation::Bidirected: return "bidir";
    }
    return "?";
}

std::optional<EdgeOrientation> parseOrientation(std::string_view s) {
    if (s == "dir" || s == "-->") return EdgeOrientation::Directed;
    if (s == "rev" || s == "<--") return EdgeOrientation::Reverse;
    if (s == "bidir" || s == "<->") return EdgeOrientation::Bidirected;
    return std::nullopt;
}

void orientWithinClique(Graph& g, const Clique& c, NodeId x, NodeId y, EdgeOrientation m) {
    if (!g.adjacent(x, y)) throw GraphError(g.name(x) + " and " + g.name(y) + " are not adjacent");
    if (m == EdgeOrientation::Reverse) {
        std::swap(x, y);
        m = EdgeOrientation::Directed;
    }
    if (!admits(g, x, y, m))
        throw InadmissibleRequest(renderEdge(g, x, y) + " cannot become " +
                                  (m == EdgeOrientation::Directed ? g.name(x) + " --> " + g.name(y)
                                                                  : g.name(x) + " <-> " + g.name(y)));
    if (m == EdgeOrientation::Bidirected) {
        setChecked(g, x, y, Mark::Arrow);
        setChecked(g, y, x, Mark::Arrow);
        closeAncestral(g);
        circlesToArrows(g, c);
        return;
    }
    bool plain = true;  // only --> and o-o inside the clique
    for (NodeId a : c)
        for (NodeId b : c)
            if (a != b && g.mark(a, b) == Mark::Arrow && g.mark(b, a) != Mark::Tail) plain = false;
    if (plain) {
        NodeList order = sinkOrder(g, c, x, y);
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                setChecked(g, order[i], order[j], Mark::Arrow);
                setChecked(g, order[j], order[i], Mark::Tail);
            }
        return;
    }
    const Graph before = g;
    setChecked(g, x, y, Mark::Arrow);
    setChecked(g, y, x, Mark::Tail);
    for (NodeId v : c) {
        if (v == x || v == y) continue;
        if (before.directed(y, v)) {
            setChecked(g, x, v, Mark::Arrow);
            setChecked(g, v, x, Mark::Tail);
        } else if (before.mark(y, v) == Mark::Arrow && before.mark(v, y) != Mark::Tail) {
            setChecked(g, x, v, Mark::Arrow);
            setChecked(g, v, y, Mark::Arrow);
        }
    }
    closeAncestral(g);
    circlesToArrows(g, c);
}

Graph orientCliqueToMag(const Graph& clique, NodeId x, NodeId y, EdgeOrientation m) {
    Clique all(clique.size());
    std::iota(all.begin(), all.end(), 0);
    for (NodeId a : all)
        for (NodeId b : all)
            if (a < b && !clique.adjacent(a, b)) throw GraphError("graph is not a clique");
    Graph g = clique;
    orientWithinClique(g, all, x, y, m);
    return g;
}

std::optional<std::string> representationProblem(const Graph& gp, const Graph& m) {
    if (!sameSkeleton(gp, m)) return "skeletons differ";
    if (!m.isMixed()) return "result still has circle marks";
    for (auto [a, b] : gp.edges())
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
            if (gp.mark(x, y) != Mark::Circle && gp.mark(x, y) != m.mark(x, y))
                return "mark at " + gp.name(y) + " on " + renderEdge(gp, x, y) + " changed";
    if (auto c = checkAncestral(m); !c.ancestral) return "result is not ancestral";
    if (!isMaximal(m)) return "result is not maximal";
    if (minimalColliderPaths(gp) != minimalColliderPaths(m)) return "minimal collider paths differ";
    return std::nullopt;
}

Graph sampleMag(const Graph& gp, NodeId x, NodeId y, EdgeOrientation m) {
    if (x < 0 || y < 0 || x >= gp.size() || y >= gp.size() || x == y || !gp.adjacent(x, y))
        throw GraphError("no such edge");
    if (!admits(gp, x, y, m))
        throw NoSuchMag(renderEdge(gp, x, y) + " cannot be oriented as " + orientationName(m));

    // Connected pieces of the edges that carry a circle.
    int n = gp.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        bool any = false;
        for (NodeId w : gp.neighbors(s)) any = any || gp.mark(s, w) == Mark::Circle || gp.mark(w, s) == Mark::Circle;
        if (!any) continue;
        std::vector<NodeId> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : gp.neighbors(v))
                if (comp[w] < 0 && (gp.mark(v, w) == Mark::Circle || gp.mark(w, v) == Mark::Circle)) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }

    Graph out = gp;
    for (int ci = 0; ci < ncomp; ++ci) {
        NodeList nodes;
        for (NodeId v = 0; v < n; ++v)
            if (comp[v] == ci) nodes.push_back(v);
        Graph h = inducedSubgraph(gp, nodes);
        auto local = [&](NodeId v) {
            return static_cast<NodeId>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
        };
        bool hasEdge = comp[x] == ci && comp[y] == ci;
        try {
            JoinTree t = buildJoinTree(h);
            int c0 = 0;
            if (hasEdge)
                for (int i = 0; i < static_cast<int>(t.cliques.size()); ++i)
                    if (contains(t.cliques[i], local(x)) && contains(t.cliques[i], local(y))) {
                        c0 = i;
                        break;
                    }
            t = orientTree(h, std::move(t), c0);
            h = applyTreeOrientations(h, t);
            if (hasEdge) orientWithinClique(h, t.cliques[c0], local(x), local(y), m);
            Clique all(h.size());
            std::iota(all.begin(), all.end(), 0);
            closeAncestral(h);
            circlesToArrows(h, all);
        } catch (const NotChordal& e) {
            throw NoSuchMag(std::string("circle component is not chordal: ") + e.what());
        } catch (const GraphError& e) {
            throw NoSuchMag(e.what());
        }
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = 0; j < nodes.size(); ++j)
                if (i != j && h.adjacent(static_cast<NodeId>(i), static_cast<NodeId>(j)))
                    out.setMark(nodes[i], nodes[j], h.mark(static_cast<NodeId>(i), static_cast<NodeId>(j)));
    }
    if (!holds(out, x, y, m)) throw NoSuchMag(renderEdge(out, x, y) + " did not come out as requested");
    if (auto why = representationProblem(gp, out)) throw NoSuchMag(*why);
    return out;
}

}  // namespace eag
