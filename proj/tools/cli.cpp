#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "eag/algorithms.hpp"
#include "eag/chordal.hpp"
#include "eag/oracle.hpp"
#include "eag/simulation.hpp"
#include "json.hpp"
#include "service.hpp"

namespace eag {

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Graph readGraph(const std::string& path) { return parsePmg(slurp(path)); }

bool hasCircles(const Graph& g) { return g.circleCount() > 0; }

void writeFile(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
}

}  // namespace

int cliMain(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Essential ancestral graphs with expert knowledge", "eag"};
    app.require_subcommand(1);

    std::string graphPath, knowledgePath, restrictPath, edgeSpec, markSpec, outDir = ".";
    std::string mecMode;
    auto* mag2eag = app.add_subcommand("mag2eag", "essential graph of a MAG");
    mag2eag->add_option("mag", graphPath, "MAG in .pmg form")->required();

    auto* addbg = app.add_subcommand("addbg", "add background knowledge to an essential graph");
    addbg->add_option("eag", graphPath)->required();
    addbg->add_option("knowledge", knowledgePath)->required();

    auto* verify = app.add_subcommand("verify", "check that addbg gives the restricted essential graph");
    verify->add_option("eag", graphPath)->required();
    verify->add_option("knowledge", knowledgePath)->required();

    auto* mecCmd = app.add_subcommand("mec", "count or list the MAGs of a class");
    mecCmd->add_option("mode", mecMode)->required()->check(CLI::IsMember({"count", "enumerate"}));
    mecCmd->add_option("graph", graphPath, "a MAG, or an essential graph")->required();
    mecCmd->add_option("--restrict", restrictPath, "knowledge file");

    auto* sample = app.add_subcommand("sample-mag", "a MAG of the class with one edge oriented as asked");
    sample->add_option("eag", graphPath)->required();
    sample->add_option("--edge", edgeSpec, "A,B")->required();
    sample->add_option("--mark", markSpec, "dir, rev or bidir")->required();

    SimulationConfig sim;
    auto* simulate = app.add_subcommand("simulate", "random DAG experiment");
    simulate->add_option("--n", sim.ns, "node counts")->delimiter(',');
    simulate->add_option("--p", sim.ps, "edge probabilities")->delimiter(',');
    simulate->add_option("--reveal", sim.reveals, "percent of circle marks revealed")->delimiter(',');
    simulate->add_option("--trials", sim.dagsPerCell, "DAGs per (n, p)");
    simulate->add_option("--seed", sim.seed);
    simulate->add_option("--out", outDir, "directory for results.jsonl and summary.csv");
    simulate->add_option("--threads", sim.threads);

    int port = 8080;
    std::string host = "127.0.0.1";
    auto* serveCmd = app.add_subcommand("serve", "HTTP session service");
    serveCmd->add_option("--port", port);
    serveCmd->add_option("--host", host);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*mag2eag) {
            out << renderPmg(magToEssential(readGraph(graphPath)));
            return 0;
        }
        if (*addbg || *verify) {
            Graph g = readGraph(graphPath);
            KnowledgeSet k = parseKnowledge(g, slurp(knowledgePath));
            auto r = addBgKnowledge(g, k);
            if (*addbg) {
                if (!r.ok) {
                    out << "FAIL\n";
                    err << r.reason << "\n";
                    return 1;
                }
                out << renderPmg(r.graph);
                return 0;
            }
            if (!r.ok) {
                out << "FALSE\n";
                err << r.reason << "\n";
                return 1;
            }
            auto rep = verifyCompleteness(g, k, r.graph);
            out << (rep.verdict ? "TRUE" : "FALSE") << "\n";
            if (!rep.verdict) err << rep.failure << "\n";
            return rep.verdict ? 0 : 1;
        }
        if (*mecCmd) {
            Graph g = readGraph(graphPath);
            auto mags = hasCircles(g) ? representedBy(g) : mec(g);
            if (!restrictPath.empty()) {
                try {
                    mags = restrictMec(mags, parseKnowledge(g, slurp(restrictPath)));
                } catch (const InconsistentKnowledge&) {
                    mags.clear();
                }
            }
            if (mecMode == "count") {
                out << mags.size() << "\n";
            } else {
                nlohmann::json j{{"size", mags.size()}, {"graphs", nlohmann::json::array()}};
                for (const auto& m : mags) j["graphs"].push_back(renderPmg(m));
                out << j.dump(2) << "\n";
            }
            return 0;
        }
        if (*sample) {
            Graph g = readGraph(graphPath);
            auto comma = edgeSpec.find(',');
            if (comma == std::string::npos) throw Usage("--edge expects A,B");
            auto m = parseOrientation(markSpec);
            if (!m) throw Usage("--mark expects dir, rev or bidir");
            NodeId x = g.id(edgeSpec.substr(0, comma)), y = g.id(edgeSpec.substr(comma + 1));
            try {
                out << renderPmg(sampleMag(g, x, y, *m));
            } catch (const NoSuchMag& e) {
                out << "FAIL\n";
                err << e.what() << "\n";
                return 1;
            }
            return 0;
        }
        if (*simulate) {
            std::filesystem::create_directories(outDir);
            std::ostringstream jsonl;
            runSimulation(sim, [&](const TrialRecord& r) { jsonl << recordToJson(r) << "\n"; });
            std::filesystem::path dir(outDir);
            writeFile(dir / "results.jsonl", jsonl.str());
            // the summary is rebuilt from the file so the two cannot drift
            auto records = readRecords(slurp((dir / "results.jsonl").string()));
            std::string csv = summaryCsv(summarize(records));
            writeFile(dir / "summary.csv", csv);
            out << csv;
            for (const auto& r : records)
                if (!r.verdict) return 1;
            return 0;
        }
        if (*serveCmd) {
            Service svc;
            err << "listening on " << host << ":" << port << "\n";
            serve(svc, host, port);
            return 0;
        }
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace eag
