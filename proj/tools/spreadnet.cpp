// spreadnet: influence analysis on directed graphs.
//
// Subcommands: stats (topology summary), rank (centrality / voting-election
// rankings), sir (Monte Carlo spreading evaluation), grid (method tournament
// over a parameter grid). Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spreadnet/centrality.hpp"
#include "spreadnet/experiment.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/io.hpp"
#include "spreadnet/parallel.hpp"
#include "spreadnet/sir.hpp"
#include "spreadnet/voterank.hpp"

namespace {

using namespace spreadnet;

struct CommonOpts {
    std::string graph_path;
    bool reverse_arcs = false;
    bool verbose = false;
};

DirectedGraph load_graph(const CommonOpts& common) {
    LoadOptions options;
    options.reverse_arcs = common.reverse_arcs;
    LoadReport report;
    DirectedGraph g = load_edge_list_file(common.graph_path, options, &report);
    if (common.verbose) {
        std::cerr << "loaded " << common.graph_path << ": " << g.node_count() << " nodes, "
                  << g.arc_count() << " arcs";
        if (report.self_loops_dropped > 0 || report.duplicate_arcs_dropped > 0)
            std::cerr << " (dropped " << report.self_loops_dropped << " self-loops, "
                      << report.duplicate_arcs_dropped << " duplicate arcs)";
        std::cerr << '\n';
    }
    return g;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    atomic_write_file(out_path, content);
}

std::size_t resolve_spreader_count(NodeId n, std::optional<std::uint64_t> count,
                                   std::optional<double> fraction, std::size_t fallback) {
    if (count.has_value()) {
        if (*count < 1 || *count > n)
            throw std::runtime_error("count must be between 1 and the node count (" +
                                     std::to_string(n) + ")");
        return static_cast<std::size_t>(*count);
    }
    if (fraction.has_value()) return spreader_count_from_fraction(n, *fraction);
    return fallback;
}

std::vector<NodeId> read_spreaders_file(const DirectedGraph& g, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open spreaders file: " + path);
    std::vector<NodeId> spreaders;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string label = line;
        if (const auto hash = label.find('#'); hash != std::string::npos) label.resize(hash);
        while (!label.empty() && (label.back() == ' ' || label.back() == '\t' || label.back() == '\r'))
            label.pop_back();
        while (!label.empty() && (label.front() == ' ' || label.front() == '\t'))
            label.erase(label.begin());
        if (label.empty()) continue;
        const auto id = g.find(label);
        if (!id)
            throw std::runtime_error("spreaders file line " + std::to_string(line_no) +
                                     ": unknown node label '" + label + "'");
        spreaders.push_back(*id);
    }
    if (spreaders.empty()) throw std::runtime_error("spreaders file lists no nodes: " + path);
    return spreaders;
}

// --- subcommand bodies ---------------------------------------------------

struct RankOpts {
    CommonOpts common;
    std::string method = "voterank";
    std::optional<std::uint64_t> count;
    std::optional<double> fraction;
    std::string out_path;
};

void run_rank(const RankOpts& opt) {
    const DirectedGraph g = load_graph(opt.common);
    const Method method = *method_from_name(opt.method);  // names validated by the parser
    const std::size_t count =
        resolve_spreader_count(g.node_count(), opt.count, opt.fraction, g.node_count());
    std::string csv;
    switch (method) {
        case Method::voterank:
            csv = election_rank_csv(g, run_election(g, VoteVariant::original, count));
            break;
        case Method::voterank_lred:
            csv = election_rank_csv(g, run_election(g, VoteVariant::lred, count));
            break;
        case Method::voterank_xred:
            csv = election_rank_csv(g, run_election(g, VoteVariant::xred, count));
            break;
        case Method::closeness: {
            const CentralityScores scores = closeness_centrality(g, Direction::out);
            csv = centrality_rank_csv(g, scores, top_k(scores, count));
            break;
        }
        case Method::degree: {
            const CentralityScores scores = degree_centrality(g, DegreeMode::out);
            csv = centrality_rank_csv(g, scores, top_k(scores, count));
            break;
        }
        case Method::betweenness: {
            const CentralityScores scores = betweenness_centrality(g);
            csv = centrality_rank_csv(g, scores, top_k(scores, count));
            break;
        }
    }
    emit(csv, opt.out_path);
}

struct SirOpts {
    CommonOpts common;
    std::string spreaders_file;
    std::string method;
    std::optional<std::uint64_t> count;
    std::optional<double> fraction;
    double mu = 0.0;
    double beta = 0.0;
    std::uint64_t runs = 1000;
    std::uint64_t seed = 0;
    std::uint64_t max_turns = 0;
    std::string out_path;
    std::string rt_csv_path;
};

void run_sir_command(const SirOpts& opt) {
    const DirectedGraph g = load_graph(opt.common);
    std::vector<NodeId> spreaders;
    if (!opt.spreaders_file.empty()) {
        spreaders = read_spreaders_file(g, opt.spreaders_file);
    } else {
        const std::size_t count =
            resolve_spreader_count(g.node_count(), opt.count, opt.fraction, 0);
        if (opt.method.empty() || count == 0)
            throw CLI::ValidationError(
                "sir needs --spreaders-file, or --method with --count/--fraction");
        spreaders = select_for_method(g, *method_from_name(opt.method), count);
    }
    SirParams params;
    params.mu = opt.mu;
    params.beta = opt.beta;
    params.seed = opt.seed;
    params.max_turns = opt.max_turns;
    const bool want_trajectory = !opt.rt_csv_path.empty();
    const SirSummary summary = run_many(g, spreaders, params, opt.runs, want_trajectory);
    if (want_trajectory) atomic_write_file(opt.rt_csv_path, rt_curve_csv(summary.mean_trajectory));
    emit(sir_summary_json(summary, params, spreaders.size()), opt.out_path);
}

struct GridOpts {
    CommonOpts common;  // graph path unused; the plan names the graph
    std::string plan_path;
    std::string out_dir;
    unsigned workers = 0;
    std::optional<double> psweep_mu, psweep_beta;
    std::optional<double> bsweep_p, bsweep_mu;
};

void run_grid(const GridOpts& opt) {
    const ExperimentPlan plan = parse_plan_file(opt.plan_path);

    // A relative graph_path is resolved against the plan file's directory,
    // so a plan and its graph can travel together.
    std::filesystem::path graph_path(plan.graph_path);
    if (graph_path.is_relative())
        graph_path = std::filesystem::path(opt.plan_path).parent_path() / graph_path;
    CommonOpts load_opts = opt.common;
    load_opts.graph_path = graph_path.string();
    const DirectedGraph g = load_graph(load_opts);

    const unsigned workers = opt.workers > 0 ? opt.workers : default_worker_count();
    if (opt.common.verbose) {
        const std::size_t cells = plan.p_values.size() * plan.mu_values.size() *
                                  plan.beta_values.size() * plan.methods.size();
        std::cerr << "grid: " << cells << " cells x " << plan.runs << " runs, " << workers
                  << " workers\n";
    }
    const PlanOutcome outcome = run_plan(g, plan, workers);

    std::filesystem::create_directories(opt.out_dir);
    const std::filesystem::path dir(opt.out_dir);
    atomic_write_file(dir / "victory_table.csv", victory_table_csv(outcome.victories));
    atomic_write_file(dir / "raw_results.csv", raw_results_csv(outcome.raw));

    if (opt.psweep_mu.has_value()) {
        const SweepTable t = p_sweep(g, plan.methods, plan.p_values, *opt.psweep_mu,
                                     *opt.psweep_beta, plan.runs, plan.seed, workers);
        atomic_write_file(dir / "p_sweep.csv", sweep_csv(t));
    }
    if (opt.bsweep_p.has_value()) {
        const SweepTable t = beta_sweep(g, plan.methods, *opt.bsweep_p, *opt.bsweep_mu,
                                        plan.beta_values, plan.runs, plan.seed, workers);
        atomic_write_file(dir / "beta_sweep.csv", sweep_csv(t));
    }
    if (opt.common.verbose) std::cerr << "grid: results written to " << opt.out_dir << '\n';
}

void add_common(CLI::App* sub, CommonOpts& common, bool with_graph = true) {
    if (with_graph)
        sub->add_option("--graph", common.graph_path, "Edge-list file (one 'source target' arc per line)")
            ->required();
    sub->add_flag("--reverse-arcs", common.reverse_arcs,
                  "Swap source and target of every input arc");
    sub->add_flag("-v,--verbose", common.verbose, "Progress notes on the error stream");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Influence analysis on directed graphs: rankings, SIR spreading, tournaments"};
    app.require_subcommand(1);

    const std::vector<std::string> method_names = {"closeness", "degree",        "betweenness",
                                                   "voterank",  "voterank-lred", "voterank-xred"};

    CommonOpts stats_opts;
    std::string stats_out;
    CLI::App* stats_cmd = app.add_subcommand("stats", "Topology statistics as JSON");
    add_common(stats_cmd, stats_opts);
    stats_cmd->add_option("-o,--out", stats_out, "Write to this file instead of standard output");

    RankOpts rank_opts;
    CLI::App* rank_cmd = app.add_subcommand("rank", "Rank nodes by a selection method");
    add_common(rank_cmd, rank_opts.common);
    rank_cmd->add_option("--method", rank_opts.method, "Selection method")
        ->required()
        ->check(CLI::IsMember(method_names));
    CLI::Option* rank_count =
        rank_cmd->add_option("--count", rank_opts.count, "Number of nodes to rank");
    CLI::Option* rank_fraction =
        rank_cmd->add_option("--fraction", rank_opts.fraction, "Fraction of nodes to rank")
            ->check(CLI::Range(1e-12, 1.0));
    rank_count->excludes(rank_fraction);
    rank_cmd->add_option("-o,--out", rank_opts.out_path, "Write CSV here instead of standard output");

    SirOpts sir_opts;
    CLI::App* sir_cmd = app.add_subcommand("sir", "Monte Carlo SIR spreading evaluation");
    add_common(sir_cmd, sir_opts.common);
    CLI::Option* sir_file = sir_cmd->add_option("--spreaders-file", sir_opts.spreaders_file,
                                                "File with one seed node label per line");
    CLI::Option* sir_method = sir_cmd->add_option("--method", sir_opts.method, "Selection method")
                                  ->check(CLI::IsMember(method_names));
    sir_file->excludes(sir_method);
    sir_method->excludes(sir_file);
    CLI::Option* sir_count =
        sir_cmd->add_option("--count", sir_opts.count, "Number of spreaders")->needs(sir_method);
    CLI::Option* sir_fraction =
        sir_cmd->add_option("--fraction", sir_opts.fraction, "Fraction of nodes as spreaders")
            ->check(CLI::Range(1e-12, 1.0))
            ->needs(sir_method);
    sir_count->excludes(sir_fraction);
    sir_cmd->add_option("--mu", sir_opts.mu, "Infection probability per contact per turn")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    sir_cmd->add_option("--beta", sir_opts.beta, "Recovery probability per turn")
        ->required()
        ->check(CLI::Range(1e-12, 1.0));
    sir_cmd->add_option("--runs", sir_opts.runs, "Independent simulations")->check(CLI::Range(1u, 100000000u));
    sir_cmd->add_option("--seed", sir_opts.seed, "Master seed");
    sir_cmd->add_option("--max-turns", sir_opts.max_turns, "Safety cap per run (0 = 10n)");
    sir_cmd->add_option("-o,--out", sir_opts.out_path, "Write JSON here instead of standard output");
    sir_cmd->add_option("--rt-csv", sir_opts.rt_csv_path, "Also write the mean R(t) curve as CSV");

    GridOpts grid_opts;
    CLI::App* grid_cmd = app.add_subcommand("grid", "Method tournament over a (p, mu, beta) grid");
    add_common(grid_cmd, grid_opts.common, /*with_graph=*/false);
    grid_cmd->add_option("--plan", grid_opts.plan_path, "Plan JSON file")->required();
    grid_cmd->add_option("--out", grid_opts.out_dir, "Output directory")->required();
    grid_cmd->add_option("--workers", grid_opts.workers,
                         "Worker threads (default: SPREADNET_WORKERS or hardware)");
    CLI::Option* psweep_mu =
        grid_cmd->add_option("--psweep-mu", grid_opts.psweep_mu, "Also sweep p at this mu");
    CLI::Option* psweep_beta =
        grid_cmd->add_option("--psweep-beta", grid_opts.psweep_beta, "...and this beta");
    psweep_mu->needs(psweep_beta);
    psweep_beta->needs(psweep_mu);
    CLI::Option* bsweep_p =
        grid_cmd->add_option("--bsweep-p", grid_opts.bsweep_p, "Also sweep beta at this p");
    CLI::Option* bsweep_mu =
        grid_cmd->add_option("--bsweep-mu", grid_opts.bsweep_mu, "...and this mu");
    bsweep_p->needs(bsweep_mu);
    bsweep_mu->needs(bsweep_p);

    stats_cmd->callback([&] { emit(stats_json(topology_stats(load_graph(stats_opts))), stats_out); });
    rank_cmd->callback([&] { run_rank(rank_opts); });
    sir_cmd->callback([&] { run_sir_command(sir_opts); });
    grid_cmd->callback([&] { run_grid(grid_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;  // data error (parse/validation/IO)
    }
    return 0;
}
