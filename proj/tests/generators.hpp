#ifndef EAG_TESTS_GENERATORS_HPP
#define EAG_TESTS_GENERATORS_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eag/algorithms.hpp"
#include "eag/chordal.hpp"
#include "eag/graph.hpp"
#include "eag/paths.hpp"

inline std::vector<std::string> letters(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
    return out;
}

/// Random partial mixed graph: each pair is an edge with probability p, carrying one of the six tokens.
inline eag::Graph randomPmg(int n, double p, std::mt19937_64& rng) {
    using eag::Mark;
    static const std::pair<Mark, Mark> tokens[] = {{Mark::Circle, Mark::Circle}, {Mark::Circle, Mark::Arrow},
                                                   {Mark::Arrow, Mark::Circle},  {Mark::Tail, Mark::Arrow},
                                                   {Mark::Arrow, Mark::Tail},    {Mark::Arrow, Mark::Arrow}};
    eag::Graph g(letters(n));
    std::bernoulli_distribution coin(p);
    std::uniform_int_distribution<int> tok(0, 5);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng)) {
                auto [ma, mb] = tokens[tok(rng)];
                g.addEdge(a, b, ma, mb);
            }
    return g;
}

/// Random DAG over n nodes: each forward pair (in a shuffled order) gets an edge with probability p.
inline eag::Graph randomTestDag(int n, double p, std::mt19937_64& rng) {
    eag::Graph g(letters(n));
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) g.addEdge(order[i], order[j], eag::Mark::Tail, eag::Mark::Arrow);
    return g;
}

/// Random MAG: a random DAG on n + latents nodes projected onto the first n.
inline eag::Graph randomTestMag(int n, int latents, double p, std::mt19937_64& rng) {
    eag::Graph dag = randomTestDag(n + latents, p, rng);
    eag::NodeList hidden;
    for (int i = n; i < n + latents; ++i) hidden.push_back(i);
    return eag::dagToMag(dag, hidden);
}

/**
 * Random MAG with a chordal skeleton and no unshielded collider: each new
 * node joins a random clique of the earlier ones, edges point to the new node,
 * and a few edges become bidirected when that keeps the graph a MAG without
 * minimal collider paths.
 */
inline eag::Graph randomChordalMag(int n, std::mt19937_64& rng) {
    eag::Graph g(letters(n));
    std::uniform_int_distribution<int> pick(0, 1 << 20);
    for (int v = 1; v < n; ++v) {
        // grow a clique among 0..v-1 greedily from a random start
        std::vector<int> cand(v);
        for (int i = 0; i < v; ++i) cand[i] = i;
        std::shuffle(cand.begin(), cand.end(), rng);
        std::vector<int> clique;
        int want = 1 + pick(rng) % 3;
        for (int c : cand) {
            if (static_cast<int>(clique.size()) >= want) break;
            if (std::all_of(clique.begin(), clique.end(), [&](int o) { return g.adjacent(o, c); })) clique.push_back(c);
        }
        for (int c : clique) g.addEdge(c, v, eag::Mark::Tail, eag::Mark::Arrow);
    }
    std::bernoulli_distribution coin(0.25);
    for (auto [a, b] : g.edges()) {
        if (!coin(rng)) continue;
        eag::Graph h = g;
        h.setMark(b, a, eag::Mark::Arrow);
        if (eag::isAncestral(h) && eag::isMaximal(h) && eag::minimalColliderPaths(h).empty()) g = h;
    }
    return g;
}

/// A restricted graph from a random chordal MAG: its essential graph with a few
/// true pieces added. Empty when the result has minimal collider paths.
inline std::optional<eag::Graph> eligibleChordalInstance(int n, std::mt19937_64& rng) {
    using namespace eag;
    Graph m = randomChordalMag(n, rng);
    Graph g = magToEssential(m);
    KnowledgeSet k;
    std::bernoulli_distribution coin(0.2);
    for (auto [a, b] : g.edges()) {
        if (!g.circleCircle(a, b) || !coin(rng)) continue;
        if (m.directed(a, b)) k.push_back({a, b, PieceForm::Directed});
        else if (m.directed(b, a)) k.push_back({b, a, PieceForm::Directed});
        else k.push_back({a, b, PieceForm::ArrowAtY});
    }
    auto r = addBgKnowledge(g, k);
    if (!r.ok || !minimalColliderPaths(r.graph).empty() || !isChordal(r.graph)) return std::nullopt;
    return r.graph;
}

#endif
