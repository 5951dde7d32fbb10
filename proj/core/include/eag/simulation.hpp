#ifndef EAG_SIMULATION_HPP
#define EAG_SIMULATION_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "eag/graph.hpp"
#include "eag/knowledge.hpp"

namespace eag {

using Rng = std::mt19937_64;

/// splitmix64 of (master, index); gives each trial its own stream.
std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t index);

/// Random order, then each forward pair is an edge with probability p. Nodes X1..Xn.
Graph randomDag(int n, double p, Rng& rng);
Graph randomDag(int n, double p, std::uint64_t seed);

/// ceil(fraction * n) nodes drawn from the parentless ones, or all of them when
/// there are fewer. Sorted.
NodeList selectLatents(const Graph& dag, double fraction, Rng& rng);

/**
 * Draws round(percent% of the circle marks of g) marks and reads each from m.
 * An arrowhead becomes x *-> y; a tail at y becomes y --> x, which also
 * carries the arrowhead on that edge.
 */
KnowledgeSet revealKnowledge(const Graph& g, const Graph& m, int percent, Rng& rng);

struct TrialParams {
    int n = 10;
    double p = 0.1;
    int revealPercent = 30;
    std::uint64_t seed = 1;
    double latentFraction = 0.1;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    int n = 0;
    double p = 0;
    int revealPercent = 0;
    int latents = 0;
    int edges = 0;           ///< edges in the MAG
    int circArrowEdges = 0;  ///< o-> edges in the essential graph
    int circleMarks = 0;     ///< circle marks in the essential graph
    int pieces = 0;
    int circArrowAfter = 0;  ///< o-> edges of the essential graph still o-> after the knowledge
    int circleMarksAfter = 0;
    bool addBgOk = true;
    bool verdict = true;
    std::string failure;
    double msMag = 0, msEssential = 0, msAddBg = 0, msVerify = 0;

    /// Equality on everything except timings.
    bool sameOutcome(const TrialRecord& o) const;
};

/// randomDag, selectLatents, dagToMag, magToEssential, revealKnowledge,
/// addBgKnowledge and verifyCompleteness. The DAG depends only on the seed,
/// so records that differ only in revealPercent share the graph.
TrialRecord runTrial(const TrialParams& params);

struct SimulationConfig {
    std::vector<int> ns{8, 10, 12};
    std::vector<double> ps{0.05, 0.1, 0.25};
    std::vector<int> reveals{10, 30, 50, 80};
    int dagsPerCell = 10;  ///< DAGs per (n, p); each is run at every reveal level
    std::uint64_t seed = 1;
    unsigned threads = 0;  ///< 0 means hardware concurrency
};

/// Runs the grid on a worker pool. Records come back in grid order whatever the
/// schedule; `sink` sees them in that order as well.
std::vector<TrialRecord> runSimulation(const SimulationConfig& cfg,
                                       const std::function<void(const TrialRecord&)>& sink = {});

std::string recordToJson(const TrialRecord& r);
TrialRecord recordFromJson(std::string_view line);
/// One record per non-empty line.
std::vector<TrialRecord> readRecords(std::string_view jsonl);

struct SummaryRow {
    int n;
    double p;
    int revealPercent;
    int trials;
    double meanCirc2Arrow, medianCirc2Arrow, meanCircleMarks, verifyTrueRate, meanRuntimeMs;
};

/// One row per (n, p, revealPercent), sorted.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);
std::string summaryCsv(const std::vector<SummaryRow>& rows);

}  // namespace eag

#endif  // EAG_SIMULATION_HPP
