#include "eag/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "eag/algorithms.hpp"
#include "json.hpp"

namespace eag {

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int countCircArrow(const Graph& g) {
    int c = 0;
    for (auto [a, b] : g.edges())
        c += (g.mark(a, b) == Mark::Circle && g.mark(b, a) == Mark::Arrow) ||
             (g.mark(b, a) == Mark::Circle && g.mark(a, b) == Mark::Arrow);
    return c;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

}  // namespace

std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Graph randomDag(int n, double p, Rng& rng) {
    if (n < 2) throw GraphError("randomDag needs at least two nodes");
    if (!(p > 0 && p < 1)) throw GraphError("edge probability must lie in (0, 1)");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
    Graph g(names);
    std::vector<NodeId> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) g.addEdge(order[i], order[j], Mark::Tail, Mark::Arrow);
    return g;
}

Graph randomDag(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    return randomDag(n, p, rng);
}

NodeList selectLatents(const Graph& dag, double fraction, Rng& rng) {
    NodeList sources;
    for (NodeId v = 0; v < dag.size(); ++v)
        if (parents(dag, v).empty()) sources.push_back(v);
    auto want = static_cast<std::size_t>(std::ceil(fraction * dag.size()));
    std::shuffle(sources.begin(), sources.end(), rng);
    if (sources.size() > want) sources.resize(want);
    std::sort(sources.begin(), sources.end());
    return sources;
}

KnowledgeSet revealKnowledge(const Graph& g, const Graph& m, int percent, Rng& rng) {
    std::vector<std::pair<NodeId, NodeId>> circles;  // mark at .second on edge .first-.second
    for (auto [a, b] : g.edges()) {
        if (g.mark(a, b) == Mark::Circle) circles.emplace_back(a, b);
        if (g.mark(b, a) == Mark::Circle) circles.emplace_back(b, a);
    }
    auto take = static_cast<std::size_t>(std::lround(percent / 100.0 * static_cast<double>(circles.size())));
    std::shuffle(circles.begin(), circles.end(), rng);
    circles.resize(std::min(take, circles.size()));
    std::sort(circles.begin(), circles.end());
    KnowledgeSet out;
    auto add = [&](KnowledgePiece p) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    };
    for (auto [x, y] : circles) {
        if (m.mark(x, y) == Mark::Arrow) add({x, y, PieceForm::ArrowAtY});
        else add({y, x, PieceForm::Directed});
    }
    // a tail piece already states the arrowhead; drop the bare arrowhead duplicate
    KnowledgeSet pruned;
    for (const auto& p : out) {
        if (p.form == PieceForm::ArrowAtY &&
            std::find(out.begin(), out.end(), KnowledgePiece{p.x, p.y, PieceForm::Directed}) != out.end())
            continue;
        pruned.push_back(p);
    }
    return pruned;
}

bool TrialRecord::sameOutcome(const TrialRecord& o) const {
    return std::tie(seed, n, p, revealPercent, latents, edges, circArrowEdges, circleMarks, pieces, circArrowAfter,
                    circleMarksAfter, addBgOk, verdict, failure) ==
           std::tie(o.seed, o.n, o.p, o.revealPercent, o.latents, o.edges, o.circArrowEdges, o.circleMarks,
                    o.pieces, o.circArrowAfter, o.circleMarksAfter, o.addBgOk, o.verdict, o.failure);
}

TrialRecord runTrial(const TrialParams& params) {
    TrialRecord r;
    r.seed = params.seed;
    r.n = params.n;
    r.p = params.p;
    r.revealPercent = params.revealPercent;

    Rng rng(params.seed);
    Graph dag = randomDag(params.n, params.p, rng);
    NodeList latents = selectLatents(dag, params.latentFraction, rng);
    r.latents = static_cast<int>(latents.size());

    auto t0 = Clock::now();
    Graph m = dagToMag(dag, latents);
    r.msMag = msSince(t0);
    r.edges = m.edgeCount();

    t0 = Clock::now();
    Graph g = magToEssential(m);
    r.msEssential = msSince(t0);
    r.circArrowEdges = countCircArrow(g);
    r.circleMarks = g.circleCount();

    Rng revealRng(deriveSeed(params.seed, static_cast<std::uint64_t>(params.revealPercent)));
    KnowledgeSet k = revealKnowledge(g, m, params.revealPercent, revealRng);
    r.pieces = static_cast<int>(k.size());

    t0 = Clock::now();
    auto res = addBgKnowledge(g, k);
    r.msAddBg = msSince(t0);
    r.addBgOk = res.ok;
    if (!res.ok) {
        r.verdict = false;
        r.failure = "addBgKnowledge failed: " + res.reason;
        return r;
    }
    int left = 0;
    for (auto [a, b] : g.edges())
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
            if (g.mark(y, x) == Mark::Circle && g.mark(x, y) == Mark::Arrow && res.graph.mark(y, x) == Mark::Circle)
                ++left;
    r.circArrowAfter = left;
    r.circleMarksAfter = res.graph.circleCount();

    t0 = Clock::now();
    auto rep = verifyCompleteness(g, k, res.graph);
    r.msVerify = msSince(t0);
    r.verdict = rep.verdict;
    r.failure = rep.failure;
    return r;
}

std::vector<TrialRecord> runSimulation(const SimulationConfig& cfg,
                                       const std::function<void(const TrialRecord&)>& sink) {
    std::vector<TrialParams> grid;
    std::uint64_t dagIndex = 0;
    for (int n : cfg.ns)
        for (double p : cfg.ps)
            for (int d = 0; d < cfg.dagsPerCell; ++d, ++dagIndex)
                for (int k : cfg.reveals) {
                    TrialParams t;
                    t.n = n;
                    t.p = p;
                    t.revealPercent = k;
                    t.seed = deriveSeed(cfg.seed, dagIndex);
                    grid.push_back(t);
                }
    std::vector<TrialRecord> out(grid.size());
    std::vector<char> ready(grid.size(), 0);
    std::size_t flushed = 0;
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            TrialRecord r = runTrial(grid[i]);
            std::lock_guard lock(mu);
            out[i] = std::move(r);
            ready[i] = 1;
            while (flushed < grid.size() && ready[flushed]) {
                if (sink) sink(out[flushed]);
                ++flushed;
            }
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, grid.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

std::string recordToJson(const TrialRecord& r) {
    nlohmann::json j{{"seed", r.seed},
                     {"n", r.n},
                     {"p", r.p},
                     {"revealPercent", r.revealPercent},
                     {"latents", r.latents},
                     {"edges", r.edges},
                     {"circArrowEdges", r.circArrowEdges},
                     {"circleMarks", r.circleMarks},
                     {"pieces", r.pieces},
                     {"circArrowAfter", r.circArrowAfter},
                     {"circleMarksAfter", r.circleMarksAfter},
                     {"addBgOk", r.addBgOk},
                     {"verdict", r.verdict},
                     {"failure", r.failure},
                     {"ms", {{"mag", r.msMag}, {"essential", r.msEssential}, {"addBg", r.msAddBg}, {"verify", r.msVerify}}}};
    return j.dump();
}

TrialRecord recordFromJson(std::string_view line) {
    auto j = nlohmann::json::parse(line);
    TrialRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n = j.at("n").get<int>();
    r.p = j.at("p").get<double>();
    r.revealPercent = j.at("revealPercent").get<int>();
    r.latents = j.at("latents").get<int>();
    r.edges = j.at("edges").get<int>();
    r.circArrowEdges = j.at("circArrowEdges").get<int>();
    r.circleMarks = j.at("circleMarks").get<int>();
    r.pieces = j.at("pieces").get<int>();
    r.circArrowAfter = j.at("circArrowAfter").get<int>();
    r.circleMarksAfter = j.at("circleMarksAfter").get<int>();
    r.addBgOk = j.at("addBgOk").get<bool>();
    r.verdict = j.at("verdict").get<bool>();
    r.failure = j.at("failure").get<std::string>();
    const auto& ms = j.at("ms");
    r.msMag = ms.at("mag").get<double>();
    r.msEssential = ms.at("essential").get<double>();
    r.msAddBg = ms.at("addBg").get<double>();
    r.msVerify = ms.at("verify").get<double>();
    return r;
}

std::vector<TrialRecord> readRecords(std::string_view jsonl) {
    std::vector<TrialRecord> out;
    std::size_t pos = 0;
    while (pos < jsonl.size()) {
        std::size_t end = jsonl.find('\n', pos);
        if (end == std::string_view::npos) end = jsonl.size();
        auto line = jsonl.substr(pos, end - pos);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(recordFromJson(line));
        pos = end + 1;
    }
    return out;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    std::map<std::tuple<int, double, int>, std::vector<const TrialRecord*>> cells;
    for (const auto& r : records) cells[{r.n, r.p, r.revealPercent}].push_back(&r);
    std::vector<SummaryRow> out;
    for (const auto& [key, rs] : cells) {
        SummaryRow row{std::get<0>(key), std::get<1>(key), std::get<2>(key), static_cast<int>(rs.size()), 0, 0, 0, 0, 0};
        std::vector<double> arrows;
        double circles = 0, trues = 0, ms = 0;
        for (const auto* r : rs) {
            arrows.push_back(r->circArrowEdges);
            circles += r->circleMarks;
            trues += r->verdict;
            ms += r->msVerify;
        }
        double cnt = static_cast<double>(rs.size());
        double sum = 0;
        for (double a : arrows) sum += a;
        row.meanCirc2Arrow = sum / cnt;
        row.medianCirc2Arrow = median(arrows);
        row.meanCircleMarks = circles / cnt;
        row.verifyTrueRate = trues / cnt;
        row.meanRuntimeMs = ms / cnt;
        out.push_back(row);
    }
    return out;
}

std::string summaryCsv(const std::vector<SummaryRow>& rows) {
    std::ostringstream s;
    s << "n,p,revealPercent,meanCirc2Arrow,medianCirc2Arrow,meanCircleMarks,verifyTrueRate,meanRuntimeMs\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%g,%d,%.4f,%g,%.4f,%.4f,%.4f\n", r.n, r.p, r.revealPercent, r.meanCirc2Arrow,
                      r.medianCirc2Arrow, r.meanCircleMarks, r.verifyTrueRate, r.meanRuntimeMs);
        s << buf;
    }
    return s.str();
}

}  // namespace eag
