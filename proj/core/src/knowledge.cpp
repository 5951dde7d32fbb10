#include "eag/knowledge.hpp"

#include <sstream>

namespace eag {

const char* pieceToken(PieceForm f) {
    switch (f) {
        case PieceForm::Directed: return "-->";
        case PieceForm::ReverseDirected: return "<--";
        case PieceForm::ArrowAtY: return "*->";
        case PieceForm::ArrowAtX: return "<-*";
    }
    return "?";
}

std::optional<PieceForm> parsePieceToken(std::string_view tok) {
    if (tok == "-->") return PieceForm::Directed;
    if (tok == "<--") return PieceForm::ReverseDirected;
    if (tok == "*->") return PieceForm::ArrowAtY;
    if (tok == "<-*") return PieceForm::ArrowAtX;
    return std::nullopt;
}

std::vector<MarkTriple> pieceMarks(const KnowledgePiece& p) {
    switch (p.form) {
        case PieceForm::Directed: return {{p.x, p.y, Mark::Arrow}, {p.y, p.x, Mark::Tail}};
        case PieceForm::ReverseDirected: return {{p.y, p.x, Mark::Arrow}, {p.x, p.y, Mark::Tail}};
        case PieceForm::ArrowAtY: return {{p.x, p.y, Mark::Arrow}};
        case PieceForm::ArrowAtX: return {{p.y, p.x, Mark::Arrow}};
    }
    return {};
}

namespace {

KnowledgePiece parseAt(const Graph& g, std::string_view line, int lineNo) {
    std::istringstream is{std::string(line)};
    std::string x, tok, y, extra;
    if (!(is >> x >> tok >> y) || (is >> extra))
        throw ParseError(lineNo, 1, "expected '<node> <token> <node>'");
    auto xi = g.find(x);
    if (!xi) throw ParseError(lineNo, 1, "unknown node '" + x + "'");
    auto yi = g.find(y);
    if (!yi) throw ParseError(lineNo, 1, "unknown node '" + y + "'");
    if (*xi == *yi) throw ParseError(lineNo, 1, "piece joins a node to itself");
    auto form = parsePieceToken(tok);
    if (!form) throw ParseError(lineNo, 1, "unknown knowledge token '" + tok + "'");
    return {*xi, *yi, *form};
}

}  // namespace

KnowledgePiece parsePiece(const Graph& g, std::string_view line) { return parseAt(g, line, 1); }

KnowledgeSet parseKnowledge(const Graph& g, std::string_view text) {
    KnowledgeSet out;
    std::istringstream is{std::string(text)};
    std::string line;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parseAt(g, line, lineNo));
    }
    return out;
}

std::string renderPiece(const Graph& g, const KnowledgePiece& p) {
    return g.name(p.x) + " " + pieceToken(p.form) + " " + g.name(p.y);
}

std::string renderKnowledge(const Graph& g, const KnowledgeSet& k) {
    std::string out;
    for (const auto& p : k) out += renderPiece(g, p) + "\n";
    return out;
}

bool pieceHolds(const Graph& m, const KnowledgePiece& p) {
    for (auto t : pieceMarks(p))
        if (m.mark(t.x, t.y) != t.mark) return false;
    return true;
}

}  // namespace eag
