#include <benchmark/benchmark.h>

#include "eag/algorithms.hpp"
#include "eag/chordal.hpp"
#include "eag/oracle.hpp"
#include "eag/paths.hpp"
#include "eag/simulation.hpp"

using namespace eag;

namespace {

struct Instance {
    Graph mag, essential;
    KnowledgeSet k;
};

Instance makeInstance(int n, double p, int reveal, std::uint64_t seed) {
    Rng rng(seed);
    Graph dag = randomDag(n, p, rng);
    Graph m = dagToMag(dag, selectLatents(dag, 0.1, rng));
    Graph g = magToEssential(m);
    return {m, g, revealKnowledge(g, m, reveal, rng)};
}

void BM_AddBgKnowledge(benchmark::State& state) {
    auto inst = makeInstance(static_cast<int>(state.range(0)), 0.25, 30, 11);
    for (auto _ : state) benchmark::DoNotOptimize(addBgKnowledge(inst.essential, inst.k));
}
BENCHMARK(BM_AddBgKnowledge)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Closure(benchmark::State& state) {
    auto inst = makeInstance(static_cast<int>(state.range(0)), 0.25, 30, 13);
    Graph start = inst.essential;
    for (const auto& p : inst.k)
        if (isAdmissible(start, p)) start = orientPiece(start, p);
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(closeUnder(start));
        } catch (const ClosureConflict&) {
        }
    }
}
BENCHMARK(BM_Closure)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MinimalColliderPaths(benchmark::State& state) {
    auto inst = makeInstance(static_cast<int>(state.range(0)), 0.2, 0, 17);
    for (auto _ : state) benchmark::DoNotOptimize(minimalColliderPaths(inst.mag));
}
BENCHMARK(BM_MinimalColliderPaths)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_VerifyCompleteness(benchmark::State& state) {
    auto inst = makeInstance(static_cast<int>(state.range(0)), 0.25, 30, 19);
    auto r = addBgKnowledge(inst.essential, inst.k);
    if (!r.ok) {
        state.SkipWithError("addBgKnowledge failed");
        return;
    }
    for (auto _ : state) benchmark::DoNotOptimize(verifyCompleteness(inst.essential, inst.k, r.graph));
}
BENCHMARK(BM_VerifyCompleteness)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SampleMag(benchmark::State& state) {
    Graph g = parsePmg(
        "nodes: A B C D E F\nC o-o D\nF --> D\nF --> B\nB o-o C\nF --> C\nF --> A\nB o-o A\nE --> F\n");
    NodeId b = g.id("B"), c = g.id("C");
    for (auto _ : state) benchmark::DoNotOptimize(sampleMag(g, b, c, EdgeOrientation::Reverse));
}
BENCHMARK(BM_SampleMag)->Unit(benchmark::kMicrosecond);

void BM_OracleMec(benchmark::State& state) {
    Graph m = parsePmg("nodes: A B C D\nB --> A\nA --> C\nB --> C\nC --> D\nA --> D\n");
    for (auto _ : state) benchmark::DoNotOptimize(mec(m));
}
BENCHMARK(BM_OracleMec)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
