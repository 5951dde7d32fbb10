#include "eag/paths.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

namespace eag {

PathRole roleOf(const Graph& g, NodeId a, NodeId b, NodeId c) {
    Mark ab = g.mark(a, b), cb = g.mark(c, b);
    if (ab == Mark::Arrow && cb == Mark::Arrow) return PathRole::Collider;
    if (ab == Mark::Tail || cb == Mark::Tail) return PathRole::DefiniteNonCollider;
    if (ab == Mark::Circle && cb == Mark::Circle && !g.adjacent(a, c))
        return PathRole::DefiniteNonCollider;
    return PathRole::NotDefinite;
}

bool isPath(const Graph& g, const Path& p) {
    if (p.empty()) return false;
    std::vector<char> seen(g.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0 || p[i] >= g.size() || seen[p[i]]) return false;
        seen[p[i]] = 1;
        if (i > 0 && !g.adjacent(p[i - 1], p[i])) return false;
    }
    return true;
}

bool isColliderPath(const Graph& g, const Path& p) {
    if (p.size() < 2 || !isPath(g, p)) return false;
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        if (!isCollider(g, p[i - 1], p[i], p[i + 1])) return false;
    return true;
}

bool isUnshielded(const Graph& g, const Path& p) {
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        if (g.adjacent(p[i - 1], p[i + 1])) return false;
    return true;
}

bool isPossiblyDirected(const Graph& g, const Path& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (g.mark(p[j], p[i]) == Mark::Arrow) return false;
    return true;
}

bool mSeparated(const Graph& g, NodeId a, NodeId b, const NodeList& z) {
    if (a == b) return false;
    std::vector<char> inZ(g.size(), 0);
    for (NodeId v : z) inZ[v] = 1;
    auto anZ = ancestorMask(g, z);
    std::vector<char> onPath(g.size(), 0);
    Path path{a};
    onPath[a] = 1;

    // Returns true when an m-connecting definite-status path is found.
    auto dfs = [&](auto&& self) -> bool {
        NodeId v = path.back();
        for (NodeId w : g.neighbors(v)) {
            if (onPath[w]) continue;
            if (path.size() >= 2) {
                NodeId u = path[path.size() - 2];
                PathRole r = roleOf(g, u, v, w);
                if (r == PathRole::NotDefinite) continue;
                if (r == PathRole::Collider && !anZ[v]) continue;
                if (r == PathRole::DefiniteNonCollider && inZ[v]) continue;
            }
            if (w == b) return true;
            path.push_back(w);
            onPath[w] = 1;
            bool found = self(self);
            onPath[w] = 0;
            path.pop_back();
            if (found) return true;
        }
        return false;
    };
    return !dfs(dfs);
}

bool mSeparatedMixed(const Graph& g, NodeId a, NodeId b, const NodeList& z) {
    if (a == b) return false;
    if (!g.isMixed()) throw GraphError("mSeparatedMixed requires a graph without circle marks");
    int n = g.size();
    std::vector<char> inZ(n, 0);
    for (NodeId v : z) inZ[v] = 1;
    auto anZ = ancestorMask(g, z);
    // state = node * 2 + (arrived with an arrowhead at node)
    std::vector<char> seen(2 * n, 0);
    std::deque<int> q;
    for (NodeId c : g.neighbors(a)) {
        int s = c * 2 + (g.mark(a, c) == Mark::Arrow ? 1 : 0);
        if (!seen[s]) { seen[s] = 1; q.push_back(s); }
    }
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        NodeId v = s / 2;
        bool head = s % 2;
        if (v == b) return false;
        if (v == a) continue;
        for (NodeId w : g.neighbors(v)) {
            bool collider = head && g.mark(w, v) == Mark::Arrow;
            if (collider ? !anZ[v] : inZ[v]) continue;
            int t = w * 2 + (g.mark(v, w) == Mark::Arrow ? 1 : 0);
            if (!seen[t]) { seen[t] = 1; q.push_back(t); }
        }
    }
    return true;
}

bool isMinimalColliderPath(const Graph& g, const Path& p) {
    int m = static_cast<int>(p.size());
    if (m < 3 || !isColliderPath(g, p)) return false;
    if (g.adjacent(p.front(), p.back())) return false;
    // (i, j, skipped): last two picked indices of a subsequence starting at 0.
    std::set<std::tuple<int, int, bool>> seen;
    std::vector<std::tuple<int, int, bool>> stack;
    for (int j = 1; j < m; ++j)
        if (g.adjacent(p[0], p[j])) stack.emplace_back(0, j, j > 1);
    while (!stack.empty()) {
        auto st = stack.back();
        stack.pop_back();
        if (!seen.insert(st).second) continue;
        auto [i, j, skipped] = st;
        if (j == m - 1) {
            if (skipped) return false;
            continue;
        }
        for (int k = j + 1; k < m; ++k) {
            if (!g.adjacent(p[j], p[k]) || !isCollider(g, p[i], p[j], p[k])) continue;
            stack.emplace_back(j, k, skipped || k > j + 1);
        }
    }
    return true;
}

std::vector<Path> minimalColliderPaths(const Graph& g, MinimalColliderPathOptions opt) {
    int cap = opt.maxNodes > 0 ? opt.maxNodes : g.size();
    std::set<Path> out;
    std::vector<char> onPath(g.size(), 0);
    Path path;
    auto dfs = [&](auto&& self) -> void {
        NodeId v = path.back();
        if (path.size() >= 3 && path.front() < v && !g.adjacent(path.front(), v) &&
            isMinimalColliderPath(g, path))
            out.insert(path);
        if (static_cast<int>(path.size()) >= cap) return;
        for (NodeId w : g.neighbors(v)) {
            if (onPath[w]) continue;
            if (path.size() >= 2) {
                if (!isCollider(g, path[path.size() - 2], v, w)) continue;
            } else if (g.mark(v, w) != Mark::Arrow) {
                continue;  // w must become a collider
            }
            path.push_back(w);
            onPath[w] = 1;
            self(self);
            onPath[w] = 0;
            path.pop_back();
        }
    };
    for (NodeId s = 0; s < g.size(); ++s) {
        path = {s};
        onPath[s] = 1;
        dfs(dfs);
        onPath[s] = 0;
    }
    return {out.begin(), out.end()};
}

namespace {

// Backward search shared by the discriminating and almost discriminating path
// searches. `accept(x, qj, next, isA)` checks the node qj when x is chosen as
// its predecessor; next is the node after qj on the path.
template <class Accept>
std::vector<Path> backwardSearch(const Graph& g, NodeId qk, NodeId b, Accept accept) {
    std::vector<Path> out;
    if (qk == b || !g.adjacent(qk, b)) return out;
    std::vector<char> onPath(g.size(), 0);
    onPath[qk] = onPath[b] = 1;
    Path rev{qk};  // Qk, Q(k-1), ... built backward
    auto dfs = [&](auto&& self) -> void {
        NodeId qj = rev.back();
        NodeId next = rev.size() >= 2 ? rev[rev.size() - 2] : -1;
        for (NodeId x : g.neighbors(qj)) {
            if (onPath[x]) continue;
            if (!g.adjacent(x, b)) {
                if (next < 0 || !accept(x, qj, next, true)) continue;
                Path p{x};
                p.insert(p.end(), rev.rbegin(), rev.rend());
                p.push_back(b);
                out.push_back(std::move(p));
            } else if (g.directed(x, b)) {
                if (next >= 0 && !accept(x, qj, next, false)) continue;
                rev.push_back(x);
                onPath[x] = 1;
                self(self);
                onPath[x] = 0;
                rev.pop_back();
            }
        }
    };
    dfs(dfs);
    std::sort(out.begin(), out.end());
    return out;
}

bool clauseFirst(const Graph& g, NodeId a, NodeId b, NodeId c) {
    if (isCollider(g, a, b, c)) return true;
    if (g.mark(a, b) == Mark::Arrow && g.mark(c, b) == Mark::Circle &&
        g.mark(b, c) == Mark::Arrow && g.mark(a, c) == Mark::Circle)
        return true;
    return g.mark(a, b) == Mark::Circle && g.mark(c, b) == Mark::Arrow &&
           g.mark(a, c) == Mark::Arrow;
}

bool clauseInner(const Graph& g, NodeId a, NodeId b, NodeId c) {
    if (isCollider(g, a, b, c)) return true;
    if (g.mark(a, b) == Mark::Arrow && g.mark(c, b) == Mark::Circle &&
        g.mark(b, c) == Mark::Arrow && g.mark(c, a) == Mark::Arrow &&
        g.mark(a, c) == Mark::Circle)
        return true;
    return g.mark(b, a) == Mark::Arrow && g.mark(a, b) == Mark::Circle &&
           g.mark(c, b) == Mark::Arrow && g.mark(c, a) == Mark::Circle &&
           g.mark(a, c) == Mark::Arrow;
}

bool clauseLast(const Graph& g, NodeId a, NodeId b, NodeId c) {
    if (isCollider(g, a, b, c)) return true;
    if (g.mark(a, b) == Mark::Arrow && g.mark(c, b) == Mark::Circle &&
        g.mark(c, a) == Mark::Arrow)
        return true;
    return g.mark(b, a) == Mark::Arrow && g.mark(a, b) == Mark::Circle &&
           g.mark(c, b) == Mark::Arrow && g.mark(c, a) == Mark::Circle;
}

bool almostNode(const Graph& g, NodeId a, NodeId b, NodeId c, bool first, bool last,
                AlmostColliderOptions opt) {
    if (first && last) {
        bool f = clauseFirst(g, a, b, c), l = clauseLast(g, a, b, c);
        return opt.conjunctiveSingleInterior ? (f && l) : (f || l);
    }
    if (first) return clauseFirst(g, a, b, c);
    if (last) return clauseLast(g, a, b, c);
    return clauseInner(g, a, b, c);
}

}  // namespace

std::vector<Path> discriminatingPaths(const Graph& g, NodeId qk, NodeId b) {
    return backwardSearch(g, qk, b, [&](NodeId x, NodeId qj, NodeId next, bool) {
        return isCollider(g, x, qj, next);
    });
}

std::vector<DiscriminatedCollider> discriminatedColliders(const Graph& g) {
    std::vector<DiscriminatedCollider> out;
    for (NodeId qk = 0; qk < g.size(); ++qk)
        for (NodeId b : g.neighbors(qk)) {
            if (g.mark(b, qk) != Mark::Arrow) continue;
            for (auto& p : discriminatingPaths(g, qk, b))
                if (g.mark(p[p.size() - 3], qk) == Mark::Arrow) out.push_back({p, qk});
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool hasInducingPath(const Graph& g, NodeId a, NodeId b) {
    if (a == b || g.adjacent(a, b)) return false;
    int n = g.size();
    auto an = ancestorMask(g, {a, b});
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    std::deque<std::pair<NodeId, NodeId>> q;
    for (NodeId v : g.neighbors(a))
        if (an[v] && v != b) {
            seen[static_cast<std::size_t>(a) * n + v] = 1;
            q.emplace_back(a, v);
        }
    while (!q.empty()) {
        auto [u, v] = q.front();
        q.pop_front();
        for (NodeId w : g.neighbors(v)) {
            if (w == a || !isCollider(g, u, v, w)) continue;
            if (w == b) return true;
            if (!an[w]) continue;
            auto& s = seen[static_cast<std::size_t>(v) * n + w];
            if (!s) { s = 1; q.emplace_back(v, w); }
        }
    }
    return false;
}

bool hasPossibleInducingPath(const Graph& g, NodeId a, NodeId b) {
    if (a == b || g.adjacent(a, b)) return false;
    auto pa = possibleAncestorMask(g, {a, b});
    std::vector<char> onPath(g.size(), 0);
    Path path{a};
    onPath[a] = onPath[b] = 1;
    auto dfs = [&](auto&& self) -> bool {
        NodeId v = path.back();
        NodeId u = path.size() >= 2 ? path[path.size() - 2] : -1;
        for (NodeId w : g.neighbors(v)) {
            if (u >= 0 && !isCollider(g, u, v, w)) continue;
            if (w == b) {
                if (path.size() >= 3) return true;
                continue;
            }
            if (onPath[w] || !pa[w]) continue;
            path.push_back(w);
            onPath[w] = 1;
            bool found = self(self);
            onPath[w] = 0;
            path.pop_back();
            if (found) return true;
        }
        return false;
    };
    return dfs(dfs);
}

bool isMaximal(const Graph& g) {
    bool mixed = g.isMixed();
    for (NodeId a = 0; a < g.size(); ++a)
        for (NodeId b = a + 1; b < g.size(); ++b) {
            if (g.adjacent(a, b)) continue;
            if (mixed ? hasInducingPath(g, a, b) : hasPossibleInducingPath(g, a, b)) return false;
        }
    return true;
}

bool isAlmostColliderPath(const Graph& g, const Path& p, AlmostColliderOptions opt) {
    if (p.size() < 3 || !isPath(g, p)) return false;
    std::size_t last = p.size() - 2;
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        if (!almostNode(g, p[i - 1], p[i], p[i + 1], i == 1, i == last, opt)) return false;
    return true;
}

std::vector<Path> almostDiscriminatingPaths(const Graph& g, NodeId qk, NodeId b,
                                            AlmostColliderOptions opt) {
    return backwardSearch(g, qk, b, [&](NodeId x, NodeId qj, NodeId next, bool isA) {
        return almostNode(g, x, qj, next, isA, next == qk, opt);
    });
}

bool isAlmostDiscriminatingPath(const Graph& g, const Path& p, AlmostColliderOptions opt) {
    if (p.size() < 4 || !isPath(g, p)) return false;
    NodeId b = p.back();
    if (g.adjacent(p.front(), b)) return false;
    for (std::size_t i = 1; i + 2 < p.size(); ++i)
        if (!g.directed(p[i], b)) return false;
    return isAlmostColliderPath(g, Path(p.begin(), p.end() - 1), opt);
}

bool walkUnshieldedPossiblyDirected(const Graph& g, NodeId a, NodeId first,
                                    const std::function<bool(const Path&)>& visit) {
    if (a == first || !g.adjacent(a, first) || g.mark(first, a) == Mark::Arrow) return false;
    std::vector<char> onPath(g.size(), 0);
    Path path{a, first};
    onPath[a] = onPath[first] = 1;
    auto dfs = [&](auto&& self) -> bool {
        if (visit(path)) return true;
        NodeId v = path.back(), u = path[path.size() - 2];
        for (NodeId w : g.neighbors(v)) {
            if (onPath[w] || g.adjacent(u, w)) continue;
            bool ok = true;
            for (NodeId x : path)
                if (g.mark(w, x) == Mark::Arrow) { ok = false; break; }
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
    return dfs(dfs);
}

bool existsUnshieldedPossiblyDirected(const Graph& g, NodeId a, NodeId first, NodeId target) {
    return walkUnshieldedPossiblyDirected(g, a, first,
                                          [&](const Path& p) { return p.back() == target; });
}

std::vector<Path> unshieldedPossiblyDirectedPaths(const Graph& g, NodeId a, NodeId b, int minNodes) {
    std::vector<Path> out;
    for (NodeId f : g.neighbors(a))
        walkUnshieldedPossiblyDirected(g, a, f, [&](const Path& p) {
            if (p.back() == b && static_cast<int>(p.size()) >= minNodes) out.push_back(p);
            return false;
        });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::array<NodeId, 3>> unshieldedColliders(const Graph& g) {
    std::vector<std::array<NodeId, 3>> out;
    for (NodeId b = 0; b < g.size(); ++b) {
        const auto& nb = g.neighbors(b);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                NodeId a = nb[i], c = nb[j];
                if (!g.adjacent(a, c) && isCollider(g, a, b, c)) out.push_back({a, b, c});
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace eag
