#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "vizlocal/engine.hpp"
#include "vizlocal/error.hpp"

namespace {

using namespace vizlocal;

constexpr int kExitVerify = 1;
constexpr int kExitFreeze = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << content;
}

Algorithm parse_alg(const std::string& s) {
    if (s == "alg1") return Algorithm::kAlg1;
    if (s == "alg2") return Algorithm::kAlg2;
    if (s == "alg4") return Algorithm::kAlg4;
    throw UsageError("unknown algorithm " + s);
}

StrategyKind parse_strategy(const std::string& s) {
    if (s == "uniform") return StrategyKind::kUniformRandom;
    if (s == "empty") return StrategyKind::kRandomEmpty;
    if (s == "greedy") return StrategyKind::kGreedyPotential;
    throw UsageError("unknown strategy " + s);
}

AssertLevel parse_assert(const std::string& s) {
    if (s == "debug") return AssertLevel::kDebug;
    if (s == "standard") return AssertLevel::kStandard;
    if (s == "fast") return AssertLevel::kFast;
    throw UsageError("unknown assertion level " + s);
}

struct CellSpec {
    std::string source;  // generator spec or @path
    Algorithm alg;
    StrategyKind strategy;
    double lambda;
    std::uint64_t seed;
};

struct CellRow {
    std::string text;
};

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int cmd_generate(const std::string& gen, std::uint64_t seed, const std::string& out) {
    Graph g = generate_from_spec(gen, seed);
    write_output(out, save_edge_list(g));
    return 0;
}

int cmd_run(const std::string& graph_path, const std::string& gen, Algorithm alg,
            StrategyKind strategy, const std::string& t_mode, double lambda,
            std::uint64_t seed, AssertLevel level, bool strict, const std::string& out,
            const std::string& dump_path) {
    Graph g = graph_path.empty() ? generate_from_spec(gen, seed)
                                 : load_edge_list(read_file(graph_path));
    RunConfig cfg;
    cfg.algorithm = alg;
    cfg.strategy.kind = strategy;
    cfg.strategy.lambda = lambda;
    cfg.strategy.strict_freeze = strict;
    cfg.seed = seed;
    cfg.assert_level = level;
    if (t_mode != "paper") {
        cfg.explicit_T = true;
        cfg.T = std::stoll(t_mode);
    }
    RunResult result = run(g, cfg);
    write_output(out, report_to_json(result.report));
    if (!dump_path.empty()) write_output(dump_path, save_coloring(result.coloring));
    if (result.report.failed) return kExitFreeze;
    if (!result.coloring.verify_proper().empty() || !result.coloring.fully_colored())
        return kExitVerify;
    return 0;
}

int cmd_verify(const std::string& graph_path, const std::string& coloring_path) {
    Graph g = load_edge_list(read_file(graph_path));
    std::vector<int> colors = load_coloring(g, read_file(coloring_path));
    std::vector<Violation> violations = verify_colors(g, colors);
    int uncolored = 0;
    for (int c : colors)
        if (c == kUncolored) ++uncolored;
    for (const Violation& v : violations)
        std::cout << "conflict: edges " << v.edge_a << " and " << v.edge_b << " share color "
                  << v.color << " at vertex " << v.at << "\n";
    if (uncolored > 0) std::cout << uncolored << " edges uncolored\n";
    if (!violations.empty() || uncolored > 0) return kExitVerify;
    std::cout << "ok\n";
    return 0;
}

CellRow run_cell(const CellSpec& cell, const std::string& t_mode, AssertLevel level,
                 bool strict, bool timing) {
    std::ostringstream row;
    row << cell.source << ',';
    std::string status = "ok";
    std::string metrics;
    double wall_ms = 0.0;
    try {
        Graph g = cell.source.rfind("@", 0) == 0
                      ? load_edge_list(read_file(cell.source.substr(1)))
                      : generate_from_spec(cell.source, cell.seed);
        RunConfig cfg;
        cfg.algorithm = cell.alg;
        cfg.strategy.kind = cell.strategy;
        cfg.strategy.lambda = cell.lambda;
        cfg.strategy.strict_freeze = strict;
        cfg.seed = cell.seed;
        cfg.assert_level = level;
        if (t_mode != "paper") {
            cfg.explicit_T = true;
            cfg.T = std::stoll(t_mode);
        }
        auto t0 = std::chrono::steady_clock::now();
        RunResult result = run(g, cfg);
        auto t1 = std::chrono::steady_clock::now();
        wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (result.report.failed) status = "freeze";
        const RunReport& r = result.report;
        std::ostringstream m;
        m << r.n << ',' << r.m << ',' << r.delta << ',' << r.algorithm << ',' << r.strategy
          << ',' << r.T_mode << ',' << r.T << ',' << format_double(r.lambda) << ',' << r.seed
          << ',' << r.colors_used << ',' << r.ell_G << ',' << r.iterations.size() << ','
          << r.repair_executions << ',' << format_double(r.ledger.total());
        metrics = m.str();
    } catch (const std::exception& e) {
        status = std::string("error:") + e.what();
        std::ostringstream m;
        m << ",,," << to_string(cell.alg) << ',' << to_string(cell.strategy) << ',' << t_mode
          << ",," << format_double(cell.lambda) << ',' << cell.seed << ",,,,,";
        metrics = m.str();
    }
    row << metrics << ',' << status << ',' << (timing ? format_double(wall_ms) : "0");
    return {row.str()};
}

int cmd_bench(const std::vector<std::string>& gens, const std::vector<std::string>& graphs,
              const std::vector<std::string>& algs, const std::vector<std::string>& strategies,
              const std::vector<double>& lambdas, const std::vector<std::uint64_t>& seeds,
              const std::string& t_mode, AssertLevel level, bool strict, int threads,
              bool timing, const std::string& out) {
    std::vector<std::string> sources = gens;
    for (const std::string& p : graphs) sources.push_back("@" + p);
    if (sources.empty()) throw UsageError("bench needs at least one --gen or --graph");
    std::vector<CellSpec> cells;
    for (const std::string& src : sources)
        for (const std::string& a : algs)
            for (const std::string& s : strategies)
                for (double l : lambdas)
                    for (std::uint64_t seed : seeds)
                        cells.push_back({src, parse_alg(a), parse_strategy(s), l, seed});

    std::vector<CellRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            rows[i] = run_cell(cells[i], t_mode, level, strict, timing);
        }
    };
    int pool = std::max(1, threads);
    std::vector<std::thread> team;
    for (int i = 1; i < pool; ++i) team.emplace_back(worker);
    worker();
    for (auto& t : team) t.join();

    std::ostringstream csv;
    csv << "source,n,m,delta,algorithm,strategy,T_mode,T,lambda,seed,colors_used,ell_G,"
           "iterations,repair_executions,ledger_total,status,wall_ms\n";
    for (const CellRow& r : rows) csv << r.text << '\n';
    write_output(out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed-style edge coloring via fan repair and blocked alternating paths"};
    app.require_subcommand(1);

    std::string gen, graph_path, out = "-", dump_path, coloring_path;
    std::string alg = "alg1", strategy = "empty", t_mode = "paper", assert_level = "standard";
    double lambda = 2.0;
    std::uint64_t seed = 0;
    bool strict = false;

    auto* g_cmd = app.add_subcommand("generate", "write a generated graph as an edge list");
    g_cmd->add_option("--gen", gen, "generator spec, e.g. gnp:50,0.1")->required();
    auto* g_seed = g_cmd->add_option("--seed", seed, "generator seed");
    g_cmd->add_option("--out", out, "output path or -");

    auto* r_cmd = app.add_subcommand("run", "color a graph and write the JSON run report");
    r_cmd->add_option("--graph", graph_path, "edge-list file");
    r_cmd->add_option("--gen", gen, "generator spec");
    r_cmd->add_option("--alg", alg, "alg1|alg2|alg4");
    r_cmd->add_option("--strategy", strategy, "uniform|empty|greedy");
    r_cmd->add_option("--T", t_mode, "paper or an explicit truncation length");
    r_cmd->add_option("--lambda", lambda, "load-balancing parameter (> 1)");
    auto* r_seed = r_cmd->add_option("--seed", seed, "run seed");
    r_cmd->add_option("--assert", assert_level, "debug|standard|fast");
    r_cmd->add_flag("--strict-freeze", strict, "freeze below the |E0| < T/15 threshold");
    r_cmd->add_option("--out", out, "report path or -");
    r_cmd->add_option("--dump-coloring", dump_path, "write the final coloring dump");

    auto* v_cmd = app.add_subcommand("verify", "check a coloring dump against a graph");
    v_cmd->add_option("--graph", graph_path, "edge-list file")->required();
    v_cmd->add_option("--coloring", coloring_path, "coloring dump file")->required();

    std::vector<std::string> bench_gens, bench_graphs;
    std::vector<std::string> bench_algs{"alg1"}, bench_strategies{"empty"};
    std::vector<double> bench_lambdas{2.0};
    std::vector<std::uint64_t> bench_seeds{1};
    int threads = 1;
    auto* b_cmd = app.add_subcommand("bench", "sweep a grid of runs into CSV");
    b_cmd->add_option("--gen", bench_gens, "generator specs (repeatable)");
    b_cmd->add_option("--graph", bench_graphs, "edge-list files (repeatable)");
    b_cmd->add_option("--alg", bench_algs, "algorithms (repeatable)");
    b_cmd->add_option("--strategy", bench_strategies, "strategies (repeatable)");
    b_cmd->add_option("--lambda", bench_lambdas, "lambdas (repeatable)");
    b_cmd->add_option("--seeds", bench_seeds, "seeds (repeatable)");
    b_cmd->add_option("--T", t_mode, "paper or an explicit truncation length");
    b_cmd->add_option("--assert", assert_level, "debug|standard|fast");
    b_cmd->add_flag("--strict-freeze", strict, "strict freeze threshold");
    b_cmd->add_option("--threads", threads, "parallel cells");
    bool no_timing = false;
    b_cmd->add_flag("--no-timing", no_timing, "zero the wall_ms column for byte-stable output");
    b_cmd->add_option("--out", out, "CSV path or -");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (g_cmd->parsed()) {
            if (g_seed->count() == 0) throw UsageError("generate requires --seed");
            return cmd_generate(gen, seed, out);
        }
        if (r_cmd->parsed()) {
            if (graph_path.empty() == gen.empty())
                throw UsageError("run needs exactly one of --graph or --gen");
            StrategyKind kind = parse_strategy(strategy);
            bool randomized = kind != StrategyKind::kGreedyPotential;
            if (r_seed->count() == 0 && (randomized || !gen.empty()))
                throw UsageError("--seed is required for randomized strategies and generators");
            return cmd_run(graph_path, gen, parse_alg(alg), kind, t_mode, lambda, seed,
                           parse_assert(assert_level), strict, out, dump_path);
        }
        if (v_cmd->parsed()) return cmd_verify(graph_path, coloring_path);
        if (b_cmd->parsed())
            return cmd_bench(bench_gens, bench_graphs, bench_algs, bench_strategies,
                             bench_lambdas, bench_seeds, t_mode, parse_assert(assert_level),
                             strict, threads, !no_timing, out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitVerify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    }
    return 0;
}
