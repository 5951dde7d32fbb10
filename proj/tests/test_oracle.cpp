#include <random>

#include "common.hpp"
#include "doctest.h"
#include "eag/algorithms.hpp"
#include "eag/oracle.hpp"
#include "generators.hpp"

using namespace eag;

namespace {

// Second enumerator: all 3^E assignments, kept when ancestral by a naive
// search and maximal by the separation criterion (every non-adjacent pair is
// m-separated by some set).
bool separableEverywhere(const Graph& g) {
    int n = g.size();
    for (NodeId x = 0; x < n; ++x)
        for (NodeId y = x + 1; y < n; ++y) {
            if (g.adjacent(x, y)) continue;
            NodeList rest;
            for (NodeId v = 0; v < n; ++v)
                if (v != x && v != y) rest.push_back(v);
            bool found = false;
            for (unsigned mask = 0; mask < (1u << rest.size()) && !found; ++mask) {
                NodeList z;
                for (std::size_t i = 0; i < rest.size(); ++i)
                    if (mask & (1u << i)) z.push_back(rest[i]);
                found = mSeparated(g, x, y, z);
            }
            if (!found) return false;
        }
    return true;
}

bool noCycles(const Graph& g) {
    int n = g.size();
    for (int s = 0; s < n; ++s) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (!g.directed(v, w) || seen[w]) continue;
                seen[w] = 1;
                stack.push_back(w);
            }
        }
        for (int w = 0; w < n; ++w)
            if (seen[w] && (w == s || (g.adjacent(s, w) && g.mark(w, s) == Mark::Arrow))) return false;
    }
    return true;
}

int countMagsNaively(const Graph& skel) {
    auto edges = skel.edges();
    const std::pair<Mark, Mark> forms[] = {{Mark::Tail, Mark::Arrow}, {Mark::Arrow, Mark::Tail}, {Mark::Arrow, Mark::Arrow}};
    int total = 1, count = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        Graph g(skel.names());
        int c = code;
        for (auto [a, b] : edges) {
            auto [atA, atB] = forms[c % 3];
            c /= 3;
            g.addEdge(a, b, atA, atB);
        }
        if (noCycles(g) && separableEverywhere(g)) ++count;
    }
    return count;
}

bool member(const std::vector<Graph>& mags, const Graph& m) {
    return std::find(mags.begin(), mags.end(), m) != mags.end();
}

}  // namespace

TEST_CASE("enumerateMags small cases") {
    CHECK(enumerateMags(parsePmg("nodes: A B\nA o-o B\n")).size() == 3);

    Graph c = fixtureGraph("fig1c_eag.pmg");
    auto all = enumerateMags(c);
    CHECK(all.size() >= 35);
    for (const auto& m : mec(fixtureGraph("fig1b_mag.pmg"))) CHECK(member(all, m));

    Graph path = parsePmg("nodes: A B C D\nA o-o B\nB o-o C\nC o-o D\n");
    CHECK(static_cast<int>(enumerateMags(path).size()) == countMagsNaively(path));
}

TEST_CASE("enumerateMags matches a naive enumerator on random skeletons") {
    std::mt19937_64 rng(107);
    for (int i = 0; i < 25; ++i) {
        Graph skel = skeleton(randomPmg(4 + i % 2, 0.6, rng));
        if (skel.edgeCount() > 7) continue;
        CHECK(static_cast<int>(enumerateMags(skel).size()) == countMagsNaively(skel));
    }
}

TEST_CASE("enumeration respects invariant marks and the cap") {
    Graph d = fixtureGraph("fig1d.pmg");
    for (const auto& m : enumerateMags(d)) {
        CHECK(m.directed(d.id("A"), d.id("D")));
        CHECK(m.mark(d.id("B"), d.id("C")) == Mark::Arrow);
    }
    Graph big(letters(6));
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) big.addEdge(a, b, Mark::Circle, Mark::Circle);
    CHECK_THROWS_AS(enumerateMags(big), CapExceeded);
    CHECK_NOTHROW(enumerateMags(parsePmg("nodes: A B C\nA o-o B\nB o-o C\n"), OracleOptions{2}));
    CHECK_THROWS_AS(enumerateMags(parsePmg("nodes: A B C\nA o-o B\nB o-o C\n"), OracleOptions{1}), CapExceeded);
}

TEST_CASE("Markov equivalence") {
    Graph m = fixtureGraph("fig1b_mag.pmg");
    CHECK(markovEquivalent(m, m));
    auto cls = mec(m);
    REQUIRE(cls.size() >= 2);
    CHECK(markovEquivalent(cls.front(), cls.back()));
    Graph chain = parsePmg("nodes: A B C\nA --> B\nB --> C\n");
    Graph collider = parsePmg("nodes: A B C\nA --> B\nB <-- C\n");
    CHECK_FALSE(markovEquivalent(chain, collider));
    CHECK_FALSE(equivalentByMcp(chain, collider));
    CHECK_FALSE(equivalentBySeparation(chain, collider));
}

TEST_CASE("the Fig 1 class shrinks from 35 to 13") {
    Graph m = fixtureGraph("fig1b_mag.pmg");
    Graph c = fixtureGraph("fig1c_eag.pmg");
    auto cls = mec(m);
    CHECK(cls.size() == 35);
    CHECK(representedBy(c).size() == 35);
    KnowledgeSet k = parseKnowledge(c, readFixture("k_fig1.txt"));
    auto restricted = restrictMec(cls, k);
    CHECK(restricted.size() == 13);
    CHECK(essentialByIntersection(restricted) == fixtureGraph("fig1d.pmg"));
    CHECK(essentialByIntersection(cls) == c);
    CHECK(representedBy(fixtureGraph("fig1d.pmg")) == restricted);

    KnowledgeSet contradictory{{c.id("A"), c.id("B"), PieceForm::Directed}, {c.id("B"), c.id("A"), PieceForm::Directed}};
    CHECK_THROWS_AS(restrictMec(cls, contradictory), InconsistentKnowledge);
}

TEST_CASE("restricted classes satisfy every piece") {
    std::mt19937_64 rng(109);
    int done = 0;
    while (done < 40) {
        Graph m = randomTestMag(5, 1, 0.5, rng);
        if (m.edgeCount() > 9) continue;
        Graph g = magToEssential(m);
        KnowledgeSet k;
        for (auto [a, b] : g.edges()) {
            if (!g.circleCircle(a, b)) continue;
            if (m.directed(a, b)) k.push_back({a, b, PieceForm::Directed});
            else k.push_back({a, b, PieceForm::ArrowAtX});
            if (k.size() == 2) break;
        }
        ++done;
        for (const auto& r : restrictMec(mec(m), k))
            for (const auto& p : k)
                for (const auto& t : pieceMarks(p)) CHECK(r.mark(t.x, t.y) == t.mark);
    }
}

TEST_CASE("magToEssential equals the intersection of the class") {
    std::mt19937_64 rng(113);
    int done = 0;
    while (done < 60) {
        Graph m = randomTestMag(4 + done % 3, 1, 0.45, rng);
        if (m.edgeCount() > 9) continue;
        ++done;
        CHECK(essentialByIntersection(mec(m)) == magToEssential(m));
    }
}

TEST_CASE("MCP and separation deciders agree on pairs of a skeleton") {
    std::mt19937_64 rng(127);
    int pairs = 0, equivalent = 0;
    for (int i = 0; i < 12; ++i) {
        Graph skel = skeleton(randomPmg(4 + i % 2, 0.6, rng));
        if (skel.edgeCount() > 7) continue;
        auto all = enumerateMags(skel);
        // every MAG against a spread of at most 30 others
        std::size_t stride = std::max<std::size_t>(1, all.size() / 30);
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = (a % stride) + stride; b < all.size(); b += stride) {
                if (b == a) continue;
                ++pairs;
                bool byMcp = equivalentByMcp(all[a], all[b]);
                if (byMcp) ++equivalent;
                CHECK(byMcp == equivalentBySeparation(all[a], all[b]));
            }
    }
    CHECK(pairs > 100);
    CHECK(equivalent > 0);
}

TEST_CASE("discriminated colliders are colliders in every MAG of the class") {
    std::mt19937_64 rng(131);
    int seen = 0;
    for (int i = 0; i < 3000 && seen < 10; ++i) {
        Graph m = randomTestMag(5 + i % 3, 2, 0.4, rng);
        if (m.edgeCount() > 10) continue;
        auto dcs = discriminatedColliders(m);
        if (dcs.empty()) continue;
        auto cls = mec(m);
        for (const auto& d : dcs) {
            ++seen;
            NodeId q = d.path[d.path.size() - 3], qk = d.collider, b = d.path.back();
            for (const auto& o : cls) CHECK(isCollider(o, q, qk, b));
        }
    }
    CHECK(seen > 0);
}
