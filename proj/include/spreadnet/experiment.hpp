#ifndef SPREADNET_EXPERIMENT_HPP
#define SPREADNET_EXPERIMENT_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spreadnet/centrality.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/parallel.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/sir.hpp"
#include "spreadnet/voterank.hpp"

namespace spreadnet {

enum class Method : std::uint8_t {
    closeness,
    degree,
    betweenness,
    voterank,
    voterank_lred,
    voterank_xred,
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::closeness: return "closeness";
        case Method::degree: return "degree";
        case Method::betweenness: return "betweenness";
        case Method::voterank: return "voterank";
        case Method::voterank_lred: return "voterank-lred";
        case Method::voterank_xred: return "voterank-xred";
    }
    return "?";
}

inline std::optional<Method> method_from_name(std::string_view name) {
    for (Method m : {Method::closeness, Method::degree, Method::betweenness, Method::voterank,
                     Method::voterank_lred, Method::voterank_xred})
        if (name == method_name(m)) return m;
    return std::nullopt;
}

inline std::vector<Method> all_methods() {
    return {Method::closeness, Method::degree,        Method::betweenness,
            Method::voterank,  Method::voterank_lred, Method::voterank_xred};
}

// The first `count` nodes of the method's ranking. Rankings are prefix
// stable: the k-best list is a prefix of the (k+1)-best list both for sorted
// centrality scores and for the greedy voting elections, so callers needing
// several set sizes can slice one call made with the largest count.
inline std::vector<NodeId> select_for_method(const DirectedGraph& g, Method method,
                                             std::size_t count) {
    switch (method) {
        case Method::closeness: return top_k(closeness_centrality(g, Direction::out), count);
        case Method::degree: return top_k(degree_centrality(g, DegreeMode::out), count);
        case Method::betweenness: return top_k(betweenness_centrality(g), count);
        case Method::voterank: return select_spreaders(g, VoteVariant::original, count);
        case Method::voterank_lred: return select_spreaders(g, VoteVariant::lred, count);
        case Method::voterank_xred: return select_spreaders(g, VoteVariant::xred, count);
    }
    throw std::logic_error("select_for_method: unknown method");
}

inline std::vector<double> default_p_values() {
    return {0.0001, 0.0005, 0.0008, 0.001, 0.002, 0.003, 0.005, 0.008,
            0.01,   0.015,  0.02,   0.025, 0.03,  0.035, 0.04};
}
inline std::vector<double> default_mu_values() {
    return {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55};
}
inline std::vector<double> default_beta_values() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}; }

struct ExperimentPlan {
    std::string graph_path;  // provenance only; callers load the graph themselves
    std::vector<Method> methods = all_methods();
    std::vector<double> p_values = default_p_values();
    std::vector<double> mu_values = default_mu_values();
    std::vector<double> beta_values = default_beta_values();
    std::uint64_t runs = 1000;
    std::uint64_t seed = 0;
};

inline void validate(const ExperimentPlan& plan) {
    if (plan.methods.empty()) throw std::invalid_argument("plan: methods list is empty");
    if (plan.p_values.empty()) throw std::invalid_argument("plan: p_values is empty");
    if (plan.mu_values.empty()) throw std::invalid_argument("plan: mu_values is empty");
    if (plan.beta_values.empty()) throw std::invalid_argument("plan: beta_values is empty");
    if (plan.runs < 1) throw std::invalid_argument("plan: runs must be >= 1");
    for (double p : plan.p_values)
        if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("plan: p values must be in (0, 1]");
    for (double mu : plan.mu_values)
        if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("plan: mu values must be in [0, 1]");
    for (double beta : plan.beta_values)
        if (!(beta > 0.0 && beta <= 1.0))
            throw std::invalid_argument("plan: beta values must be in (0, 1]");
}

struct CellStats {
    double mean_final_spread = 0.0;
    double stddev = 0.0;
};

// Per-cell means for every (p, mu, beta, method) combination of a plan.
struct RawResults {
    std::vector<Method> methods;
    std::vector<double> p_values, mu_values, beta_values;
    std::uint64_t runs = 0;
    std::vector<CellStats> cells;

    std::size_t cell_index(std::size_t pi, std::size_t mi, std::size_t bi, std::size_t qi) const {
        return ((pi * mu_values.size() + mi) * beta_values.size() + bi) * methods.size() + qi;
    }
    const CellStats& cell(std::size_t pi, std::size_t mi, std::size_t bi, std::size_t qi) const {
        return cells[cell_index(pi, mi, bi, qi)];
    }
};

struct VictoryRow {
    double p = 0.0;
    std::vector<std::uint64_t> wins;  // aligned with VictoryTable::methods
    std::uint64_t ties = 0;           // cells where no method was a strict winner

    bool operator==(const VictoryRow&) const = default;
};

struct VictoryTable {
    std::vector<Method> methods;
    std::vector<VictoryRow> rows;

    bool operator==(const VictoryTable&) const = default;
};

// A cell is won by the method with the strictly highest mean final spread;
// cells whose maximum is shared go to nobody and count as one tie.
inline VictoryTable victory_from_results(const RawResults& r) {
    VictoryTable table;
    table.methods = r.methods;
    const std::size_t q_count = r.methods.size();
    for (std::size_t pi = 0; pi < r.p_values.size(); ++pi) {
        VictoryRow row;
        row.p = r.p_values[pi];
        row.wins.assign(q_count, 0);
        for (std::size_t mi = 0; mi < r.mu_values.size(); ++mi)
            for (std::size_t bi = 0; bi < r.beta_values.size(); ++bi) {
                std::size_t best = 0;
                std::size_t best_count = 1;
                for (std::size_t qi = 1; qi < q_count; ++qi) {
                    const double mean = r.cell(pi, mi, bi, qi).mean_final_spread;
                    const double top = r.cell(pi, mi, bi, best).mean_final_spread;
                    if (mean > top) {
                        best = qi;
                        best_count = 1;
                    } else if (mean == top) {
                        ++best_count;
                    }
                }
                if (best_count == 1)
                    ++row.wins[best];
                else
                    ++row.ties;
            }
        table.rows.push_back(std::move(row));
    }
    return table;
}

struct PlanOutcome {
    RawResults raw;
    VictoryTable victories;
};

// Deterministic per-cell seed: a hash chain over the master seed and the
// cell's coordinates. Any cell (and any single run inside it, via
// seed_combine(cell_seed, run)) can be reproduced in isolation.
inline std::uint64_t cell_seed(std::uint64_t master, std::size_t p_idx, std::size_t mu_idx,
                               std::size_t beta_idx, std::size_t method_idx) {
    std::uint64_t s = seed_combine(master, p_idx);
    s = seed_combine(s, mu_idx);
    s = seed_combine(s, beta_idx);
    return seed_combine(s, method_idx);
}

// Runs the full tournament: every method picks its spreader sets once per p,
// then every (p, mu, beta, method) cell is simulated `runs` times. Cells are
// independent work items with their own seeds, so any worker count yields
// identical results. Selection failures surface before any simulation runs.
inline PlanOutcome run_plan(const DirectedGraph& g, const ExperimentPlan& plan,
                            unsigned workers = 1) {
    validate(plan);
    const NodeId n = g.node_count();

    std::vector<std::size_t> counts(plan.p_values.size());
    std::size_t max_count = 0;
    for (std::size_t pi = 0; pi < plan.p_values.size(); ++pi) {
        counts[pi] = spreader_count_from_fraction(n, plan.p_values[pi]);
        max_count = std::max(max_count, counts[pi]);
    }

    // selections[qi][pi] = spreader set of method qi at fraction p_values[pi]
    std::vector<std::vector<std::vector<NodeId>>> selections(plan.methods.size());
    for (std::size_t qi = 0; qi < plan.methods.size(); ++qi) {
        const std::vector<NodeId> prefix = select_for_method(g, plan.methods[qi], max_count);
        selections[qi].resize(plan.p_values.size());
        for (std::size_t pi = 0; pi < plan.p_values.size(); ++pi)
            selections[qi][pi].assign(prefix.begin(), prefix.begin() + counts[pi]);
    }

    PlanOutcome outcome;
    outcome.raw.methods = plan.methods;
    outcome.raw.p_values = plan.p_values;
    outcome.raw.mu_values = plan.mu_values;
    outcome.raw.beta_values = plan.beta_values;
    outcome.raw.runs = plan.runs;

    const std::size_t mu_n = plan.mu_values.size();
    const std::size_t beta_n = plan.beta_values.size();
    const std::size_t q_n = plan.methods.size();
    const std::size_t total = plan.p_values.size() * mu_n * beta_n * q_n;
    outcome.raw.cells.resize(total);

    parallel_for(total, workers, [&](std::size_t flat) {
        const std::size_t qi = flat % q_n;
        const std::size_t bi = (flat / q_n) % beta_n;
        const std::size_t mi = (flat / (q_n * beta_n)) % mu_n;
        const std::size_t pi = flat / (q_n * beta_n * mu_n);
        SirParams params;
        params.mu = plan.mu_values[mi];
        params.beta = plan.beta_values[bi];
        params.seed = cell_seed(plan.seed, pi, mi, bi, qi);
        const SirSummary s =
            run_many(g, selections[qi][pi], params, plan.runs, /*collect_trajectory=*/false);
        outcome.raw.cells[flat] = {s.mean_final_spread, s.stddev_final_spread};
    });

    outcome.victories = victory_from_results(outcome.raw);
    return outcome;
}

// Mean R(t) curve for one method at one operating point.
inline std::vector<double> rt_curve(const DirectedGraph& g, Method method, double p, double mu,
                                    double beta, std::uint64_t runs, std::uint64_t seed) {
    const std::size_t count = spreader_count_from_fraction(g.node_count(), p);
    const std::vector<NodeId> spreaders = select_for_method(g, method, count);
    SirParams params;
    params.mu = mu;
    params.beta = beta;
    params.seed = seed;
    return run_many(g, spreaders, params, runs, /*collect_trajectory=*/true).mean_trajectory;
}

// Long-format sweep table: means[i][qi] = mean final spread of method qi at
// axis value i.
struct SweepTable {
    std::string axis_name;
    std::vector<double> axis;
    std::vector<Method> methods;
    std::vector<std::vector<double>> means;
};

inline SweepTable p_sweep(const DirectedGraph& g, const std::vector<Method>& methods,
                          const std::vector<double>& p_values, double mu, double beta,
                          std::uint64_t runs, std::uint64_t seed, unsigned workers = 1) {
    ExperimentPlan plan;
    plan.methods = methods;
    plan.p_values = p_values;
    plan.mu_values = {mu};
    plan.beta_values = {beta};
    plan.runs = runs;
    plan.seed = seed;
    const PlanOutcome outcome = run_plan(g, plan, workers);
    SweepTable t;
    t.axis_name = "p";
    t.axis = p_values;
    t.methods = methods;
    t.means.assign(p_values.size(), std::vector<double>(methods.size(), 0.0));
    for (std::size_t pi = 0; pi < p_values.size(); ++pi)
        for (std::size_t qi = 0; qi < methods.size(); ++qi)
            t.means[pi][qi] = outcome.raw.cell(pi, 0, 0, qi).mean_final_spread;
    return t;
}

inline SweepTable beta_sweep(const DirectedGraph& g, const std::vector<Method>& methods,
                             double p, double mu, const std::vector<double>& beta_values,
                             std::uint64_t runs, std::uint64_t seed, unsigned workers = 1) {
    ExperimentPlan plan;
    plan.methods = methods;
    plan.p_values = {p};
    plan.mu_values = {mu};
    plan.beta_values = beta_values;
    plan.runs = runs;
    plan.seed = seed;
    const PlanOutcome outcome = run_plan(g, plan, workers);
    SweepTable t;
    t.axis_name = "beta";
    t.axis = beta_values;
    t.methods = methods;
    t.means.assign(beta_values.size(), std::vector<double>(methods.size(), 0.0));
    for (std::size_t bi = 0; bi < beta_values.size(); ++bi)
        for (std::size_t qi = 0; qi < methods.size(); ++qi)
            t.means[bi][qi] = outcome.raw.cell(0, 0, bi, qi).mean_final_spread;
    return t;
}

}  // namespace spreadnet

#endif  // SPREADNET_EXPERIMENT_HPP
