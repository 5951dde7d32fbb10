#ifndef EAG_ALGORITHMS_HPP
#define EAG_ALGORITHMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "eag/graph.hpp"
#include "eag/knowledge.hpp"
#include "eag/rules.hpp"

namespace eag {

/// Latent projection of a DAG onto its non-latent nodes.
Graph dagToMag(const Graph& dag, const NodeList& latents);

/// Essential graph of a MAG: skeleton, unshielded and discriminated colliders,
/// then closure under essentialRules(). Throws GraphError when m is not an ancestral, maximal mixed graph.
Graph magToEssential(const Graph& m, std::vector<TraceEntry>* trace = nullptr);

/// Returns std::nullopt when the piece is admissible for g, otherwise a reason.
std::optional<std::string> admissibilityProblem(const Graph& g, const KnowledgePiece& p);
inline bool isAdmissible(const Graph& g, const KnowledgePiece& p) {
    return !admissibilityProblem(g, p).has_value();
}
/// Orients the piece without running any rule. Throws GraphError when inadmissible.
Graph orientPiece(const Graph& g, const KnowledgePiece& p);

struct KnowledgeStep {
    KnowledgePiece piece;
    std::vector<TraceEntry> trace;  ///< closure firings after orienting the piece
};

struct AddBgResult {
    bool ok = true;
    Graph graph;  ///< final graph, or the state at the rejected piece
    std::vector<KnowledgeStep> steps;
    std::optional<std::size_t> failedIndex;
    std::string reason;
    bool conflict = false;  ///< failure came from the closure rather than admissibility
};

/// Orients each piece in turn and closes under opt.rules. Stops at the first
/// inadmissible piece or closure conflict.
AddBgResult addBgKnowledge(const Graph& g, const KnowledgeSet& k, const ClosureOptions& opt = {});

struct Theorem3Check {
    bool ok = true;
    std::string failure;
};

/// Whether g2 meets the conditions for being a restricted essential graph relative to essential g.
Theorem3Check checkTheorem3(const Graph& g, const Graph& g2);
inline bool satisfiesTheorem3(const Graph& g, const Graph& g2) { return checkTheorem3(g, g2).ok; }

/// A new unshielded collider or a new discriminated collider in g2 relative to g.
std::optional<std::string> newColliderProblem(const Graph& g, const Graph& g2);

/**
 * Search for a graph that contains g2's marks plus `pieces`, resolves every
 * o-> edge of g and passes checkTheorem3 relative to g.
 */
std::optional<Graph> findTheorem3Completion(const Graph& g, const Graph& g2, const KnowledgeSet& pieces);

struct EdgeResolution {
    NodeId a, b;  ///< a o-> b in g and in g'
    PieceForm form;  ///< Directed (a --> b) or ArrowAtX (a <-* b, giving a <-> b)
    bool found = false;
};

struct ResidueCheck {
    MarkTriple mark;  ///< invariant in every completion but variant in g'
    KnowledgePiece complement;
    bool found = false;
};

struct VerifyReport {
    bool verdict = true;
    /// g2 has g's skeleton and invariant marks, carries k and is closed under allRules().
    bool inputOk = true;
    std::vector<EdgeResolution> edges;
    std::vector<ResidueCheck> residue;
    bool finalCheckOk = true;
    std::string failure;
};

/// Completeness check for g2 = addBgKnowledge(g, k): every o-> edge of g still
/// o-> in g2 must admit both resolutions. A g2 that cannot be such an
/// output (see VerifyReport::inputOk) gets FALSE without running the search.
VerifyReport verifyCompleteness(const Graph& g, const KnowledgeSet& k, const Graph& g2);

}  // namespace eag

#endif  // EAG_ALGORITHMS_HPP
