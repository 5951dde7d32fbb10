#include "eag/graph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace eag {

const char* markName(Mark m) {
    switch (m) {
        case Mark::Tail: return "tail";
        case Mark::Arrow: return "arrowhead";
        case Mark::Circle: return "circle";
        default: return "none";
    }
}

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line), column_(column) {}

OrientConflict::OrientConflict(NodeId x_, NodeId y_, Mark e, Mark r, const std::string& what)
    : GraphError(what), x(x_), y(y_), existing(e), requested(r) {}

Graph::Graph(std::vector<std::string> names) : names_(std::move(names)) {
    const std::size_t n = names_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (names_[i].empty()) throw GraphError("empty node identifier");
        if (!index_.emplace(names_[i], static_cast<NodeId>(i)).second)
            throw GraphError("duplicate node '" + names_[i] + "'");
    }
    marks_.assign(n * n, Mark::None);
    adj_.assign(n, {});
}

std::optional<NodeId> Graph::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeId Graph::id(std::string_view name) const {
    auto v = find(name);
    if (!v) throw GraphError("unknown node '" + std::string(name) + "'");
    return *v;
}

Mark Graph::markAt(NodeId x, NodeId y) const {
    Mark m = mark(x, y);
    if (m == Mark::None)
        throw GraphError("no edge between " + names_[x] + " and " + names_[y]);
    return m;
}

void Graph::addEdge(NodeId x, NodeId y, Mark atX, Mark atY) {
    if (x == y) throw GraphError("self-loop on " + names_[x]);
    if (adjacent(x, y))
        throw GraphError("duplicate edge between " + names_[x] + " and " + names_[y]);
    if (atX == Mark::None || atY == Mark::None) throw GraphError("edge mark missing");
    if (atX == Mark::Tail && atY == Mark::Tail)
        throw GraphError("undirected edge between " + names_[x] + " and " + names_[y]);
    marks_[idx(y, x)] = atX;
    marks_[idx(x, y)] = atY;
    adj_[x].insert(std::lower_bound(adj_[x].begin(), adj_[x].end(), y), y);
    adj_[y].insert(std::lower_bound(adj_[y].begin(), adj_[y].end(), x), x);
    ++edgeCount_;
}

void Graph::removeEdge(NodeId x, NodeId y) {
    if (!adjacent(x, y)) return;
    marks_[idx(x, y)] = Mark::None;
    marks_[idx(y, x)] = Mark::None;
    adj_[x].erase(std::lower_bound(adj_[x].begin(), adj_[x].end(), y));
    adj_[y].erase(std::lower_bound(adj_[y].begin(), adj_[y].end(), x));
    --edgeCount_;
}

void Graph::setMark(NodeId x, NodeId y, Mark m) {
    if (!adjacent(x, y))
        throw GraphError("no edge between " + names_[x] + " and " + names_[y]);
    marks_[idx(x, y)] = m;
}

Graph Graph::oriented(NodeId x, NodeId y, Mark m) const {
    Mark cur = markAt(x, y);
    if (m == Mark::Circle || m == Mark::None) throw GraphError("cannot orient to a circle");
    if (cur != Mark::Circle && cur != m) {
        throw OrientConflict(x, y, cur, m,
                             "conflict at " + names_[y] + " on edge " + renderEdge(*this, x, y) +
                                 ": existing " + markName(cur) + ", requested " + markName(m));
    }
    Graph out = *this;
    out.marks_[idx(x, y)] = m;
    return out;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edgeCount_);
    for (NodeId a = 0; a < size(); ++a)
        for (NodeId b : adj_[a])
            if (a < b) out.emplace_back(a, b);
    return out;
}

bool Graph::isMixed() const {
    return std::none_of(marks_.begin(), marks_.end(), [](Mark m) { return m == Mark::Circle; });
}

int Graph::circleCount() const {
    return static_cast<int>(std::count(marks_.begin(), marks_.end(), Mark::Circle));
}

std::string edgeToken(Mark left, Mark right) {
    auto side = [](Mark m, bool isLeft) -> char {
        switch (m) {
            case Mark::Circle: return 'o';
            case Mark::Arrow: return isLeft ? '<' : '>';
            case Mark::Tail: return '-';
            default: throw GraphError("edge mark missing");
        }
    };
    if (left == Mark::Tail && right == Mark::Tail) throw GraphError("undirected edge");
    if ((left == Mark::Tail && right == Mark::Circle) || (left == Mark::Circle && right == Mark::Tail))
        throw GraphError("tail-circle edge has no token");
    return std::string{side(left, true), '-', side(right, false)};
}

std::optional<std::pair<Mark, Mark>> parseEdgeToken(std::string_view tok) {
    if (tok == "o-o") return std::pair{Mark::Circle, Mark::Circle};
    if (tok == "o->") return std::pair{Mark::Circle, Mark::Arrow};
    if (tok == "<-o") return std::pair{Mark::Arrow, Mark::Circle};
    if (tok == "-->") return std::pair{Mark::Tail, Mark::Arrow};
    if (tok == "<--") return std::pair{Mark::Arrow, Mark::Tail};
    if (tok == "<->") return std::pair{Mark::Arrow, Mark::Arrow};
    return std::nullopt;
}

namespace {

bool validIdent(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

struct Word {
    std::string_view text;
    int column;
};

std::vector<Word> splitWords(std::string_view line) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

}  // namespace

Graph parsePmg(std::string_view text) {
    std::optional<Graph> g;
    int lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto words = splitWords(line);
        if (words.empty()) {
            if (end == text.size()) break;
            continue;
        }

        if (!g) {
            std::string_view head = words[0].text;
            if (head.substr(0, 6) != "nodes:")
                throw ParseError(lineNo, words[0].column, "expected 'nodes:' header");
            std::vector<Word> ids;
            if (head.size() > 6) ids.push_back({head.substr(6), words[0].column + 6});
            ids.insert(ids.end(), words.begin() + 1, words.end());
            std::vector<std::string> names;
            for (const auto& w : ids) {
                if (!validIdent(w.text))
                    throw ParseError(lineNo, w.column, "invalid node identifier '" + std::string(w.text) + "'");
                if (std::find(names.begin(), names.end(), w.text) != names.end())
                    throw ParseError(lineNo, w.column, "duplicate node '" + std::string(w.text) + "'");
                names.emplace_back(w.text);
            }
            g.emplace(std::move(names));
        } else {
            if (words.size() != 3)
                throw ParseError(lineNo, words[0].column, "expected '<node> <token> <node>'");
            auto x = g->find(words[0].text);
            if (!x) throw ParseError(lineNo, words[0].column, "undeclared node '" + std::string(words[0].text) + "'");
            auto y = g->find(words[2].text);
            if (!y) throw ParseError(lineNo, words[2].column, "undeclared node '" + std::string(words[2].text) + "'");
            auto tok = parseEdgeToken(words[1].text);
            if (!tok) throw ParseError(lineNo, words[1].column, "unknown edge token '" + std::string(words[1].text) + "'");
            try {
                g->addEdge(*x, *y, tok->first, tok->second);
            } catch (const GraphError& e) {
                throw ParseError(lineNo, words[0].column, e.what());
            }
        }
        if (end == text.size()) break;
    }
    if (!g) throw ParseError(lineNo, 1, "missing 'nodes:' header");
    return *g;
}

std::string renderEdge(const Graph& g, NodeId x, NodeId y) {
    return g.name(x) + " " + edgeToken(g.mark(y, x), g.mark(x, y)) + " " + g.name(y);
}

std::string renderPmg(const Graph& g) {
    std::ostringstream os;
    os << "nodes:";
    for (const auto& n : g.names()) os << ' ' << n;
    os << '\n';
    for (auto [a, b] : g.edges()) os << renderEdge(g, a, b) << '\n';
    return os.str();
}

NodeList parents(const Graph& g, NodeId x) {
    NodeList out;
    for (NodeId y : g.neighbors(x))
        if (g.directed(y, x)) out.push_back(y);
    return out;
}

NodeList children(const Graph& g, NodeId x) {
    NodeList out;
    for (NodeId y : g.neighbors(x))
        if (g.directed(x, y)) out.push_back(y);
    return out;
}

NodeList adjacents(const Graph& g, NodeId x) { return g.neighbors(x); }

namespace {

NodeList maskToList(const std::vector<char>& mask) {
    NodeList out;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) out.push_back(static_cast<NodeId>(i));
    return out;
}

// Backward search: step from v to u when `step(u, v)` holds.
template <class Step>
std::vector<char> backwardClosure(const Graph& g, const NodeList& seeds, Step step) {
    std::vector<char> seen(g.size(), 0);
    std::vector<NodeId> stack;
    for (NodeId s : seeds)
        if (!seen[s]) {
            seen[s] = 1;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId u : g.neighbors(v))
            if (!seen[u] && step(u, v)) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    return seen;
}

}  // namespace

std::vector<char> ancestorMask(const Graph& g, const NodeList& xs) {
    return backwardClosure(g, xs, [&](NodeId u, NodeId v) { return g.directed(u, v); });
}

std::vector<char> possibleAncestorMask(const Graph& g, const NodeList& xs) {
    // u - v is possibly directed from u to v when there is no arrowhead at u.
    return backwardClosure(g, xs, [&](NodeId u, NodeId v) {
        return g.mark(v, u) != Mark::Arrow && g.mark(u, v) != Mark::Tail;
    });
}

NodeList ancestors(const Graph& g, NodeId x) { return maskToList(ancestorMask(g, {x})); }
NodeList ancestors(const Graph& g, const NodeList& xs) { return maskToList(ancestorMask(g, xs)); }

NodeList descendants(const Graph& g, NodeId x) {
    return maskToList(backwardClosure(g, {x}, [&](NodeId u, NodeId v) { return g.directed(v, u); }));
}

NodeList possibleAncestors(const Graph& g, NodeId x) { return maskToList(possibleAncestorMask(g, {x})); }
NodeList possibleAncestors(const Graph& g, const NodeList& xs) {
    return maskToList(possibleAncestorMask(g, xs));
}

NodeList possibleDescendants(const Graph& g, NodeId x) {
    return maskToList(backwardClosure(g, {x}, [&](NodeId u, NodeId v) {
        return g.mark(u, v) != Mark::Arrow && g.mark(v, u) != Mark::Tail;
    }));
}

AncestralCheck checkAncestral(const Graph& g) {
    const int n = g.size();
    for (NodeId v = 0; v < n; ++v) {
        // Look for x with an arrowhead at v on x-v while v is a proper ancestor of x.
        std::vector<NodeId> parent(n, -1);
        std::vector<char> seen(n, 0);
        std::vector<NodeId> queue{v};
        seen[v] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            NodeId u = queue[qi];
            for (NodeId w : g.neighbors(u))
                if (!seen[w] && g.directed(u, w)) {
                    seen[w] = 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
        }
        for (NodeId x : g.neighbors(v)) {
            if (x == v || !seen[x] || g.mark(x, v) != Mark::Arrow) continue;
            AncestralCheck out;
            out.ancestral = false;
            for (NodeId c = x; c != -1; c = parent[c]) out.witness.push_back(c);
            std::reverse(out.witness.begin(), out.witness.end());
            return out;
        }
    }
    return {};
}

bool isAncestral(const Graph& g) { return checkAncestral(g).ancestral; }

std::optional<std::array<NodeId, 3>> findLen3Cycle(const Graph& g) {
    for (NodeId b = 0; b < g.size(); ++b)
        for (NodeId a : g.neighbors(b)) {
            if (!g.directed(a, b)) continue;
            for (NodeId c : g.neighbors(b))
                if (c != a && g.directed(b, c) && g.adjacent(a, c) && g.mark(c, a) == Mark::Arrow)
                    return std::array<NodeId, 3>{a, b, c};
        }
    return std::nullopt;
}

Graph skeleton(const Graph& g) {
    Graph out(g.names());
    for (auto [a, b] : g.edges()) out.addEdge(a, b, Mark::Circle, Mark::Circle);
    return out;
}

Graph circleComponent(const Graph& g) {
    Graph out(g.names());
    for (auto [a, b] : g.edges())
        if (g.circleCircle(a, b)) out.addEdge(a, b, Mark::Circle, Mark::Circle);
    return out;
}

Graph inducedSubgraph(const Graph& g, const NodeList& nodes) {
    NodeList sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::string> names;
    for (NodeId v : sorted) names.push_back(g.name(v));
    Graph out(std::move(names));
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            if (g.adjacent(sorted[i], sorted[j]))
                out.addEdge(static_cast<NodeId>(i), static_cast<NodeId>(j), g.mark(sorted[j], sorted[i]),
                            g.mark(sorted[i], sorted[j]));
    return out;
}

bool sameSkeleton(const Graph& a, const Graph& b) {
    if (a.names() != b.names() || a.edgeCount() != b.edgeCount()) return false;
    for (auto [x, y] : a.edges())
        if (!b.adjacent(x, y)) return false;
    return true;
}

bool isDag(const Graph& g) {
    for (auto [a, b] : g.edges())
        if (!g.directed(a, b) && !g.directed(b, a)) return false;
    return isAncestral(g);
}

}  // namespace eag
