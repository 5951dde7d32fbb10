#ifndef EAG_KNOWLEDGE_HPP
#define EAG_KNOWLEDGE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "eag/graph.hpp"

namespace eag {

/// Directed: x --> y. ReverseDirected: x <-- y. ArrowAtY: x *-> y. ArrowAtX: x <-* y.
enum class PieceForm { Directed, ReverseDirected, ArrowAtY, ArrowAtX };

struct KnowledgePiece {
    NodeId x, y;
    PieceForm form;
    bool operator==(const KnowledgePiece& o) const {
        return x == o.x && y == o.y && form == o.form;
    }
};

using KnowledgeSet = std::vector<KnowledgePiece>;

const char* pieceToken(PieceForm f);
std::optional<PieceForm> parsePieceToken(std::string_view tok);

/// Mark requirements of a piece as (x, y, mark) triples: mark at y on edge x-y.
struct MarkTriple {
    NodeId x, y;
    Mark mark;
    bool operator==(const MarkTriple& o) const { return x == o.x && y == o.y && mark == o.mark; }
    bool operator<(const MarkTriple& o) const {
        return std::tie(x, y, mark) < std::tie(o.x, o.y, o.mark);
    }
};
std::vector<MarkTriple> pieceMarks(const KnowledgePiece& p);

/// Parses "X tok Y" against the node names of g.
KnowledgePiece parsePiece(const Graph& g, std::string_view line);
/// One piece per line; '#' starts a comment. Throws ParseError with line numbers.
KnowledgeSet parseKnowledge(const Graph& g, std::string_view text);
std::string renderPiece(const Graph& g, const KnowledgePiece& p);
std::string renderKnowledge(const Graph& g, const KnowledgeSet& k);

/// True when the piece's marks hold in a graph with no circle marks on that edge.
bool pieceHolds(const Graph& m, const KnowledgePiece& p);

}  // namespace eag

#endif  // EAG_KNOWLEDGE_HPP
