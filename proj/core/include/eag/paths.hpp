#ifndef EAG_PATHS_HPP
#define EAG_PATHS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "eag/graph.hpp"

namespace eag {

using Path = NodeList;

enum class PathRole { Collider, DefiniteNonCollider, NotDefinite };

/// Role of b on the triple a, b, c.
PathRole roleOf(const Graph& g, NodeId a, NodeId b, NodeId c);
inline bool isCollider(const Graph& g, NodeId a, NodeId b, NodeId c) {
    return g.mark(a, b) == Mark::Arrow && g.mark(c, b) == Mark::Arrow;
}

bool isPath(const Graph& g, const Path& p);
/// Every non-endpoint is a collider. Requires at least two nodes.
bool isColliderPath(const Graph& g, const Path& p);
bool isUnshielded(const Graph& g, const Path& p);
/// No edge with an arrowhead at the earlier of its two path nodes (chords included).
bool isPossiblyDirected(const Graph& g, const Path& p);

/// Definite-status m-separation by direct path enumeration (any partial mixed graph).
bool mSeparated(const Graph& g, NodeId a, NodeId b, const NodeList& z);
/// Reachability form for mixed graphs (no circles). Agrees with mSeparated there.
bool mSeparatedMixed(const Graph& g, NodeId a, NodeId b, const NodeList& z);

/// Options for the minimal collider path search.
struct MinimalColliderPathOptions {
    int maxNodes = 0;  ///< cap on path node count; 0 means the graph size
};

/// Minimal collider paths, each stored with the smaller endpoint first, sorted.
std::vector<Path> minimalColliderPaths(const Graph& g, MinimalColliderPathOptions opt = {});
/// True when p is a collider path whose endpoints are non-adjacent and no
/// proper subsequence with the same endpoints is a collider path.
bool isMinimalColliderPath(const Graph& g, const Path& p);

/// Paths <A, Q1..Qk, B>, k >= 2, with p(A, Qk) a collider path, A not adjacent
/// to B and Qi -> B for i < k. Paths are listed A first.
std::vector<Path> discriminatingPaths(const Graph& g, NodeId qk, NodeId b);

struct DiscriminatedCollider {
    Path path;  ///< <A, Q1..Qk, B>
    NodeId collider;
    bool operator==(const DiscriminatedCollider& o) const {
        return path == o.path && collider == o.collider;
    }
    bool operator<(const DiscriminatedCollider& o) const {
        return std::pair(path, collider) < std::pair(o.path, o.collider);
    }
};
std::vector<DiscriminatedCollider> discriminatedColliders(const Graph& g);

/// Inducing path between non-adjacent a and b (mixed graphs, ancestor form).
bool hasInducingPath(const Graph& g, NodeId a, NodeId b);
/// Possible inducing path: collider path with at least two interior nodes, all in PossAn({a, b}).
bool hasPossibleInducingPath(const Graph& g, NodeId a, NodeId b);
/// Mixed graphs: no inducing path. Partial mixed graphs: no possible inducing path.
bool isMaximal(const Graph& g);

struct AlmostColliderOptions {
    /// With exactly one interior node, require both the first-node and the
    /// last-node clause (true) or either of them (false).
    bool conjunctiveSingleInterior = true;
};

bool isAlmostColliderPath(const Graph& g, const Path& p, AlmostColliderOptions opt = {});
/// Paths <A, Q1..Qk, B>, k >= 2, with A not adjacent to B, Qi -> B for i < k
/// and p(A, Qk) an almost collider path.
std::vector<Path> almostDiscriminatingPaths(const Graph& g, NodeId qk, NodeId b,
                                            AlmostColliderOptions opt = {});
bool isAlmostDiscriminatingPath(const Graph& g, const Path& p, AlmostColliderOptions opt = {});

/// Unshielded possibly directed paths from a to b having at least `minNodes` nodes.
std::vector<Path> unshieldedPossiblyDirectedPaths(const Graph& g, NodeId a, NodeId b, int minNodes = 2);

/**
 * Depth-first walk over unshielded possibly directed paths that start with
 * the edge a-first. `visit` is called for every prefix (including <a, first>)
 * and returns true to stop the whole search. Returns true when stopped.
 */
bool walkUnshieldedPossiblyDirected(const Graph& g, NodeId a, NodeId first,
                                    const std::function<bool(const Path&)>& visit);
/// Whether an unshielded possibly directed path <a, first, ..., target> exists.
bool existsUnshieldedPossiblyDirected(const Graph& g, NodeId a, NodeId first, NodeId target);

/// Unshielded colliders a *-> b <-* c (a < c), sorted.
std::vector<std::array<NodeId, 3>> unshieldedColliders(const Graph& g);

}  // namespace eag

#endif  // EAG_PATHS_HPP
