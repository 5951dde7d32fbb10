#ifndef EAG_RULES_HPP
#define EAG_RULES_HPP

#include <functional>
#include <string>
#include <vector>

#include "eag/graph.hpp"
#include "eag/paths.hpp"

namespace eag {

enum class RuleId { R1, R2, R3, ZhaoR4, R4, R8, R9, R10, R11, R12, R13 };

const char* ruleName(RuleId r);
RuleId parseRuleName(const std::string& s);

/// Sets mark(x, y) to `mark`. Rules only ever target circle marks.
struct Command {
    NodeId x, y;
    Mark mark;
};

struct Firing {
    RuleId rule;
    Path witness;
    std::vector<Command> commands;
};

/// R1, R2, R3, Zhao's R4, R8, R9, R10: the MAG to essential graph completion.
std::vector<RuleId> essentialRules();
/// R1, R2, R4, R8, R10-R13: the background knowledge completion.
std::vector<RuleId> knowledgeRules();
/// R1-R3, R4, R8-R13: used when checking a candidate completion.
std::vector<RuleId> allRules();

/// Calls `emit` for each firing of rule r on g; stops early when emit returns true.
void forEachFiring(const Graph& g, RuleId r, const std::function<bool(const Firing&)>& emit,
                   AlmostColliderOptions opt = {});
std::vector<Firing> findFirings(const Graph& g, RuleId r, AlmostColliderOptions opt = {});
bool anyFiring(const Graph& g, const std::vector<RuleId>& rules, AlmostColliderOptions opt = {});

struct TraceEntry {
    RuleId rule;
    Path witness;
    NodeId x, y;  ///< mark at y on edge x-y was set
    Mark mark;
};

class ClosureConflict : public GraphError {
public:
    ClosureConflict(const TraceEntry& attempted, Mark existing, const std::string& what)
        : GraphError(what), attempted(attempted), existing(existing) {}
    TraceEntry attempted;
    Mark existing;
};

struct ClosureOptions {
    std::vector<RuleId> rules = knowledgeRules();
    AlmostColliderOptions almost;
};

/**
 * Applies the rules until none changes the graph. Each round collects every
 * firing of the first rule that fires, applies the batch and restarts from the
 * first rule. Throws ClosureConflict when a command meets a different non-circle mark.
 */
Graph closeUnder(Graph g, const ClosureOptions& opt = {}, std::vector<TraceEntry>* trace = nullptr);

/// One JSON object per line: {"rule", "witness", "edge", "mark"}.
std::string traceToJsonLines(const Graph& g, const std::vector<TraceEntry>& trace);

}  // namespace eag

#endif  // EAG_RULES_HPP
