#ifndef EAG_CHORDAL_HPP
#define EAG_CHORDAL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eag/graph.hpp"

namespace eag {

class NotChordal : public GraphError {
public:
    using GraphError::GraphError;
};

class NoSuchMag : public GraphError {
public:
    using GraphError::GraphError;
};

class InadmissibleRequest : public GraphError {
public:
    using GraphError::GraphError;
};

/// Sorted node set.
using Clique = NodeList;

enum class TreeDir { Undirected, Forward, Backward };

/// Edge a-b of a join tree with a < b. Forward means a -> b.
struct TreeEdge {
    int a, b;
    TreeDir dir = TreeDir::Undirected;
    bool operator==(const TreeEdge& o) const { return a == o.a && b == o.b && dir == o.dir; }
};

struct JoinTree {
    std::vector<Clique> cliques;  ///< sorted lexicographically
    std::vector<TreeEdge> edges;  ///< sorted by (a, b)

    bool hasEdge(int i, int j) const;
    /// True when the tree has the directed edge i -> j.
    bool points(int i, int j) const;
    bool undirected(int i, int j) const;
    std::vector<int> neighbors(int i) const;
    /// Unique tree path from i to j, both included.
    std::vector<int> path(int i, int j) const;
    int distance(int i, int j) const { return static_cast<int>(path(i, j).size()) - 1; }
    /// Cliques with a directed path into c (c included).
    std::vector<int> ancestorsOf(int c) const;
    int indexOf(const Clique& c) const;
};

bool isChordal(const Graph& g);
/// Maximal cliques of the skeleton via maximum cardinality search. Throws NotChordal.
std::vector<Clique> maximalCliques(const Graph& g);

struct GammaWitness {
    NodeId a, b;  ///< a in Ci \ Lambda, b in Lambda, arrowhead at b
};
std::optional<GammaWitness> gammaHolds(const Graph& g, const Clique& ci, const Clique& cj);

/// Sets every edge direction from the gamma relation on g.
void directByGamma(const Graph& g, JoinTree& t);
/// Tree with the given undirected edges, directed by gamma.
JoinTree makeJoinTree(const Graph& g, std::vector<Clique> cliques,
                      const std::vector<std::pair<int, int>>& edges);
/// Maximum weight spanning tree on the clique graph. Throws NotChordal, or
/// GraphError when the skeleton is disconnected.
JoinTree buildJoinTree(const Graph& g);
bool isTree(const JoinTree& t);
bool hasRunningIntersection(const JoinTree& t);

/// Directs t by gamma, then while some Ci -> Cj - Ck has the separator of Ci, Ck
/// equal to that of Cj, Ck and inside that of Ci, Cj, swaps Cj-Ck for Ci-Ck.
JoinTree transformTreeHelper(const Graph& g, JoinTree t);

struct RelevantPaths {
    /// C1 -> C2 - ... - Ck -> ... -> C0, k > 2
    std::vector<std::vector<int>> toAnchor;
    /// C1 -> C2 - ... - C(k-1) <- Ck, k > 3
    std::vector<std::vector<int>> colliding;
    bool empty() const { return toAnchor.empty() && colliding.empty(); }
};
/// Paths that keep t from being anchored at c0.
RelevantPaths relevantPaths(const JoinTree& t, int c0);
/// No C1 -> C2 - ... - Ck -> ... -> C0 path remains.
bool isAnchored(const JoinTree& t, int c0);
/// Any Ci -> Cj <- Ck in the tree.
bool hasTreeCollider(const JoinTree& t);

/// transformTreeHelper, then edge swaps until relevantPaths(t, c0) is empty.
JoinTree transformTree(const Graph& g, JoinTree t, int c0);
/// transformTree, then each undirected piece is directed away from one root
/// clique. The result has no undirected edges.
JoinTree orientTree(const Graph& g, JoinTree t, int c0);

/// Orientations induced by a directed join tree: for every ancestor Ci of Cj,
/// B -> C for B in Ci and Cj, C in Cj only. Throws OrientConflict.
Graph applyTreeOrientations(const Graph& g, const JoinTree& t);

/// Requested form of edge x-y.
enum class EdgeOrientation { Directed, Reverse, Bidirected };
const char* orientationName(EdgeOrientation m);
std::optional<EdgeOrientation> parseOrientation(std::string_view s);

/// Orients every circle mark inside clique c so that x-y takes form m. Throws InadmissibleRequest.
void orientWithinClique(Graph& g, const Clique& c, NodeId x, NodeId y, EdgeOrientation m);
/// Same for a graph that is one clique.
Graph orientCliqueToMag(const Graph& clique, NodeId x, NodeId y, EdgeOrientation m);

/**
 * A MAG represented by gp with x-y oriented as m. Each connected piece of the
 * circle-bearing edges is handled on its own and the merged graph is checked
 * against gp. Throws NoSuchMag when the check fails or m contradicts gp.
 */
Graph sampleMag(const Graph& gp, NodeId x, NodeId y, EdgeOrientation m);

/// Whether m carries all non-circle marks of gp and has the same skeleton and
/// minimal collider paths. std::nullopt means it does.
std::optional<std::string> representationProblem(const Graph& gp, const Graph& m);

}  // namespace eag

#endif  // EAG_CHORDAL_HPP
