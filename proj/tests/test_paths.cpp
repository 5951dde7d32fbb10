#include <random>

#include "common.hpp"
#include "doctest.h"
#include "eag/paths.hpp"
#include "generators.hpp"

using namespace eag;

namespace {

NodeList ids(const Graph& g, std::initializer_list<const char*> names) {
    NodeList out;
    for (auto n : names) out.push_back(g.id(n));
    return out;
}

bool contains(const std::vector<Path>& ps, const Path& p) { return std::find(ps.begin(), ps.end(), p) != ps.end(); }

// The graph after the first knowledge step of the Fig 5 example: A <-> D, A --> B, E --> B.
Graph fig5Step() {
    Graph g = fixtureGraph("fig5a.pmg");
    NodeId A = g.id("A"), B = g.id("B"), D = g.id("D"), E = g.id("E");
    g = g.oriented(D, A, Mark::Arrow);
    g = g.oriented(B, A, Mark::Tail).oriented(E, B, Mark::Arrow).oriented(B, E, Mark::Tail);
    return g;
}

// Each interior node of an MCP is an unshielded collider or is discriminated
// by a subpath of the MCP.
bool mcpInteriorExplained(const Graph& g, const Path& p) {
    int k = static_cast<int>(p.size());
    for (int i = 1; i + 1 < k; ++i) {
        if (!g.adjacent(p[i - 1], p[i + 1])) continue;
        bool found = false;
        for (int l = 0; l + 2 <= i && !found; ++l)
            found = contains(discriminatingPaths(g, p[i], p[i + 1]), Path(p.begin() + l, p.begin() + i + 2));
        for (int r = i + 2; r < k && !found; ++r) {
            Path q(p.begin() + i - 1, p.begin() + r + 1);
            std::reverse(q.begin(), q.end());
            found = contains(discriminatingPaths(g, p[i], p[i - 1]), q);
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("m-separation on the Fig 1 MAG") {
    Graph m = fixtureGraph("fig1b_mag.pmg");
    NodeId A = m.id("A"), B = m.id("B"), C = m.id("C"), D = m.id("D");
    CHECK(mSeparated(m, B, D, {A, C}));
    CHECK_FALSE(mSeparated(m, A, D, {}));
    CHECK_FALSE(mSeparated(m, B, D, {C}));
    CHECK(mSeparatedMixed(m, B, D, {A, C}));
    CHECK_FALSE(mSeparatedMixed(m, B, D, {C}));
}

TEST_CASE("both m-separation routines agree on mixed graphs") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 60; ++i) {
        Graph m = randomTestMag(5, 1, 0.4, rng);
        int n = m.size();
        for (NodeId a = 0; a < n; ++a)
            for (NodeId b = a + 1; b < n; ++b)
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    if (mask & ((1u << a) | (1u << b))) continue;
                    NodeList z;
                    for (int v = 0; v < n; ++v)
                        if (mask & (1u << v)) z.push_back(v);
                    CHECK(mSeparated(m, a, b, z) == mSeparatedMixed(m, a, b, z));
                }
    }
}

TEST_CASE("minimal collider paths") {
    CHECK(minimalColliderPaths(fixtureGraph("fig1c_eag.pmg")).empty());

    Graph f3 = fixtureGraph("fig3a.pmg");
    CHECK(minimalColliderPaths(f3) == std::vector<Path>{ids(f3, {"B", "C", "D"})});

    Graph gs = fixtureGraph("fig5c_gstar.pmg");
    auto mcps = minimalColliderPaths(gs);
    Path q = ids(gs, {"B", "C", "E", "A", "D"});  // stored smaller endpoint first
    CHECK(contains(mcps, q));
    CHECK(isMinimalColliderPath(gs, q));
    for (const auto& p : mcps) CHECK(p.front() < p.back());
}

TEST_CASE("MCP interior nodes are unshielded or discriminated") {
    std::mt19937_64 rng(43);
    int seen = 0;
    for (int i = 0; i < 150; ++i) {
        Graph m = randomTestMag(6, 2, 0.45, rng);
        for (const auto& p : minimalColliderPaths(m)) {
            ++seen;
            CHECK(mcpInteriorExplained(m, p));
        }
    }
    CHECK(seen > 50);
}

TEST_CASE("discriminated colliders") {
    CHECK(discriminatedColliders(fixtureGraph("fig1c_eag.pmg")).empty());
    CHECK(discriminatedColliders(fixtureGraph("fig1b_mag.pmg")).empty());

    Graph g = parsePmg("nodes: A Q1 Q2 B\nA --> Q1\nQ1 <-> Q2\nQ2 <-> B\nQ1 --> B\n");
    auto dc = discriminatedColliders(g);
    REQUIRE(dc.size() == 1);
    CHECK(dc[0].path == ids(g, {"A", "Q1", "Q2", "B"}));
    CHECK(dc[0].collider == g.id("Q2"));

    // every discriminating path is also almost discriminating
    CHECK(contains(almostDiscriminatingPaths(g, g.id("Q2"), g.id("B")), dc[0].path));
}

TEST_CASE("inducing paths and maximality") {
    Graph gs = fixtureGraph("fig5c_gstar.pmg");
    CHECK(hasInducingPath(gs, gs.id("D"), gs.id("B")));
    CHECK_FALSE(isMaximal(gs));

    CHECK(isMaximal(parsePmg("nodes: A B C\nA --> B\nB <-> C\nA --> C\n")));
    CHECK(isMaximal(fixtureGraph("fig1b_mag.pmg")));

    // a non-adjacent pair of the Fig 1 MAG is separated by some set
    Graph m = fixtureGraph("fig1b_mag.pmg");
    CHECK(mSeparated(m, m.id("B"), m.id("D"), ids(m, {"A", "C"})));
}

TEST_CASE("almost collider paths") {
    Graph g = fig5Step();
    Path p = ids(g, {"D", "A", "E", "C"});
    CHECK(isAlmostColliderPath(g, p));

    Graph cut = g;
    cut.removeEdge(g.id("D"), g.id("E"));
    CHECK_FALSE(isAlmostColliderPath(cut, p));

    std::mt19937_64 rng(47);
    for (int i = 0; i < 60; ++i) {
        Graph m = randomTestMag(6, 2, 0.5, rng);
        for (const auto& q : minimalColliderPaths(m)) CHECK(isAlmostColliderPath(m, q));
    }
}

TEST_CASE("almost discriminating paths") {
    Graph g = fig5Step();
    auto ps = almostDiscriminatingPaths(g, g.id("C"), g.id("B"));
    CHECK(contains(ps, ids(g, {"D", "A", "E", "C", "B"})));
    CHECK(isAlmostDiscriminatingPath(g, ids(g, {"D", "A", "E", "C", "B"})));

    Graph c = fixtureGraph("fig1c_eag.pmg");
    for (NodeId x = 0; x < c.size(); ++x)
        for (NodeId y = 0; y < c.size(); ++y)
            if (x != y) CHECK(almostDiscriminatingPaths(c, x, y).empty());
}

TEST_CASE("discriminating implies almost discriminating on random MAGs") {
    std::mt19937_64 rng(53);
    int seen = 0;
    for (int i = 0; i < 200; ++i) {
        Graph m = randomTestMag(6, 2, 0.5, rng);
        for (const auto& d : discriminatedColliders(m)) {
            ++seen;
            NodeId b = d.path.back();
            CHECK(contains(almostDiscriminatingPaths(m, d.collider, b), d.path));
        }
    }
    CHECK(seen > 0);
}

TEST_CASE("the Fig 5 example does not depend on the single-interior-node reading") {
    Graph g = fig5Step();
    Path p = ids(g, {"D", "A", "E", "C"});
    CHECK(isAlmostColliderPath(g, p, AlmostColliderOptions{true}));
    CHECK(isAlmostColliderPath(g, p, AlmostColliderOptions{false}));
    CHECK(almostDiscriminatingPaths(g, g.id("C"), g.id("B"), AlmostColliderOptions{true}) ==
          almostDiscriminatingPaths(g, g.id("C"), g.id("B"), AlmostColliderOptions{false}));
}

TEST_CASE("unshielded possibly directed paths") {
    Graph c = fixtureGraph("fig1c_eag.pmg");
    NodeId A = c.id("A"), D = c.id("D");
    auto ps = unshieldedPossiblyDirectedPaths(c, A, D);
    CHECK_FALSE(contains(ps, ids(c, {"A", "B", "C", "D"})));
    CHECK(contains(ps, ids(c, {"A", "D"})));
    CHECK_FALSE(contains(unshieldedPossiblyDirectedPaths(c, A, D, 3), ids(c, {"A", "D"})));

    Graph f4 = fixtureGraph("fig4a.pmg");
    CHECK(contains(unshieldedPossiblyDirectedPaths(f4, f4.id("A"), f4.id("E")), ids(f4, {"A", "B", "E"})));

    Graph chain = parsePmg("nodes: A B C\nA o-o B\nB <-o C\n");
    CHECK(unshieldedPossiblyDirectedPaths(chain, 0, 2).empty());
    CHECK(existsUnshieldedPossiblyDirected(parsePmg("nodes: A B C\nA o-o B\nB o-o C\n"), 0, 1, 2));
}

TEST_CASE("unshielded colliders") {
    Graph f3 = fixtureGraph("fig3a.pmg");
    auto uc = unshieldedColliders(f3);
    REQUIRE(uc.size() == 1);
    CHECK(uc[0] == std::array<NodeId, 3>{f3.id("B"), f3.id("C"), f3.id("D")});
}
