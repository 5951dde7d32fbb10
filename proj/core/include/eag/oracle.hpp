#ifndef EAG_ORACLE_HPP
#define EAG_ORACLE_HPP

#include <vector>

#include "eag/graph.hpp"
#include "eag/knowledge.hpp"

namespace eag {

struct OracleOptions {
    int maxEdges = 12;
    /// markovEquivalent runs both deciders up to this many nodes.
    int crossCheckMaxNodes = 6;
};

class CapExceeded : public GraphError {
public:
    using GraphError::GraphError;
};

class InconsistentKnowledge : public GraphError {
public:
    using GraphError::GraphError;
};

/**
 * Every ancestral, maximal assignment of -->, <--, <-> to the edges of g's
 * skeleton whose marks agree with g's non-circle marks. Sorted by rendered text.
 * Throws CapExceeded above opt.maxEdges edges.
 */
std::vector<Graph> enumerateMags(const Graph& g, OracleOptions opt = {});

bool equivalentByMcp(const Graph& a, const Graph& b);
bool equivalentBySeparation(const Graph& a, const Graph& b);
/// Throws GraphError when both deciders run and disagree.
bool markovEquivalent(const Graph& a, const Graph& b, OracleOptions opt = {});

std::vector<Graph> mec(const Graph& m, OracleOptions opt = {});
/// MAGs with g's skeleton and minimal collider paths that carry g's non-circle marks.
std::vector<Graph> representedBy(const Graph& g, OracleOptions opt = {});
/// Keeps MAGs where every piece holds. Throws InconsistentKnowledge when none is left.
std::vector<Graph> restrictMec(const std::vector<Graph>& mags, const KnowledgeSet& k);
/// A mark is kept when every MAG agrees on it, otherwise it becomes a circle.
Graph essentialByIntersection(const std::vector<Graph>& mags);

}  // namespace eag

#endif  // EAG_ORACLE_HPP
