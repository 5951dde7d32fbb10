#ifndef EAG_GRAPH_HPP
#define EAG_GRAPH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace eag {

using NodeId = int;
using NodeList = std::vector<NodeId>;

/// Endpoint mark of an edge. None is used only for "no edge" in raw lookups.
enum class Mark : std::uint8_t { None = 0, Tail, Arrow, Circle };

const char* markName(Mark m);

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& what);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Raised when orienting a mark that is already invariant with a different value.
class OrientConflict : public GraphError {
public:
    OrientConflict(NodeId x, NodeId y, Mark existing, Mark requested, const std::string& what);
    NodeId x, y;
    Mark existing, requested;
};

/**
 * Partial mixed graph over named nodes. Node order is the declaration order and
 * is used for every sorted result. Marks are stored per ordered pair:
 * mark(x, y) is the mark at y on the edge between x and y.
 */
class Graph {
public:
    Graph() = default;
    explicit Graph(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(NodeId v) const { return names_[v]; }
    std::optional<NodeId> find(std::string_view name) const;
    NodeId id(std::string_view name) const;

    bool adjacent(NodeId x, NodeId y) const { return marks_[idx(x, y)] != Mark::None; }
    /// Mark at y on edge x-y, or Mark::None when the edge is absent.
    Mark mark(NodeId x, NodeId y) const { return marks_[idx(x, y)]; }
    /// Like mark() but throws GraphError when the edge is absent.
    Mark markAt(NodeId x, NodeId y) const;
    const NodeList& neighbors(NodeId x) const { return adj_[x]; }

    void addEdge(NodeId x, NodeId y, Mark atX, Mark atY);
    void removeEdge(NodeId x, NodeId y);
    /// In-place mark update for exclusively owned copies; no conflict check.
    void setMark(NodeId x, NodeId y, Mark m);
    /// Value-returning orientation; throws OrientConflict on an invariant mismatch.
    Graph oriented(NodeId x, NodeId y, Mark m) const;

    /// Edges as (a, b) with a < b, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;
    int edgeCount() const { return edgeCount_; }

    bool directed(NodeId x, NodeId y) const {
        return mark(x, y) == Mark::Arrow && mark(y, x) == Mark::Tail;
    }
    bool bidirected(NodeId x, NodeId y) const {
        return mark(x, y) == Mark::Arrow && mark(y, x) == Mark::Arrow;
    }
    bool circleCircle(NodeId x, NodeId y) const {
        return mark(x, y) == Mark::Circle && mark(y, x) == Mark::Circle;
    }
    /// True when no mark is a circle.
    bool isMixed() const;
    int circleCount() const;

    bool operator==(const Graph& o) const {
        return names_ == o.names_ && marks_ == o.marks_;
    }
    bool operator!=(const Graph& o) const { return !(*this == o); }

private:
    std::size_t idx(NodeId x, NodeId y) const {
        return static_cast<std::size_t>(x) * names_.size() + static_cast<std::size_t>(y);
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<Mark> marks_;
    std::vector<NodeList> adj_;
    int edgeCount_ = 0;
};

/// Edge token for (mark at left, mark at right); throws for tail-tail.
std::string edgeToken(Mark left, Mark right);
/// Parses one of the six tokens into (mark at left, mark at right).
std::optional<std::pair<Mark, Mark>> parseEdgeToken(std::string_view tok);

Graph parsePmg(std::string_view text);
std::string renderPmg(const Graph& g);
/// Renders a single edge line, e.g. "B o-> C".
std::string renderEdge(const Graph& g, NodeId x, NodeId y);

NodeList parents(const Graph& g, NodeId x);
NodeList children(const Graph& g, NodeId x);
NodeList adjacents(const Graph& g, NodeId x);
NodeList ancestors(const Graph& g, NodeId x);
NodeList ancestors(const Graph& g, const NodeList& xs);
NodeList descendants(const Graph& g, NodeId x);
/// Nodes with a possibly directed path into x (reflexive). Consecutive-edge test.
NodeList possibleAncestors(const Graph& g, NodeId x);
NodeList possibleAncestors(const Graph& g, const NodeList& xs);
NodeList possibleDescendants(const Graph& g, NodeId x);

/// Membership masks, indexed by NodeId.
std::vector<char> ancestorMask(const Graph& g, const NodeList& xs);
std::vector<char> possibleAncestorMask(const Graph& g, const NodeList& xs);

struct AncestralCheck {
    bool ancestral = true;
    /// Offending cycle: a directed path v0 -> ... -> vk closed by an arrowhead at v0.
    NodeList witness;
};

AncestralCheck checkAncestral(const Graph& g);
bool isAncestral(const Graph& g);
/// Returns (a, b, c) with a -> b -> c and an arrowhead at a on edge a-c.
std::optional<std::array<NodeId, 3>> findLen3Cycle(const Graph& g);

Graph skeleton(const Graph& g);
Graph circleComponent(const Graph& g);
/// Induced subgraph on `nodes`, kept in the host's declaration order.
Graph inducedSubgraph(const Graph& g, const NodeList& nodes);
bool sameSkeleton(const Graph& a, const Graph& b);
/// True when every edge is directed and the directed relation is acyclic.
bool isDag(const Graph& g);

}  // namespace eag

#endif  // EAG_GRAPH_HPP
