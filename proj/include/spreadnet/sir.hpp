#ifndef SPREADNET_SIR_HPP
#define SPREADNET_SIR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spreadnet/graph.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

struct SirParams {
    double mu = 0.1;              // infection probability per infected->susceptible contact per turn
    double beta = 1.0;            // recovery probability per infected node per turn
    std::uint64_t max_turns = 0;  // safety cap; 0 means 10 * n
    std::uint64_t seed = 0;
};

inline void validate(const SirParams& p) {
    if (!(p.mu >= 0.0 && p.mu <= 1.0)) throw std::invalid_argument("sir: mu must be in [0, 1]");
    if (!(p.beta > 0.0 && p.beta <= 1.0)) throw std::invalid_argument("sir: beta must be in (0, 1]");
}

struct SirOutcome {
    std::vector<double> trajectory;  // recovered fraction R(t) after each turn
    double final_spread = 0.0;       // last trajectory value
    std::uint64_t turns = 0;
    bool truncated = false;  // hit max_turns with infected nodes remaining
};

struct SirSummary {
    std::uint64_t runs = 0;
    double mean_final_spread = 0.0;
    double stddev_final_spread = 0.0;  // population stddev, 0 for a single run
    std::vector<double> mean_trajectory;  // per turn, shorter runs padded with their final value
    std::uint64_t truncated_runs = 0;
};

// Optional per-turn census for invariant checks: filled by scanning the full
// state array after each turn, so it reflects ground truth rather than the
// simulator's own bookkeeping.
struct SirTurnLog {
    std::vector<std::uint32_t> susceptible, infected, recovered;
};

// One synchronous SIR realization. Each turn: (1) every node infected at the
// start of the turn flips one coin per susceptible out-neighbor, infecting it
// with probability mu (a node hit by several attempts in one turn becomes
// infected once, but each attempt still consumes a coin); (2) every node
// infected at the start of the turn recovers with probability beta. Newly
// infected nodes start acting the following turn. The coin order is fixed --
// infection coins for infected nodes in ascending id and neighbors in
// adjacency order, then recovery coins in ascending id -- so a seed fully
// determines the trajectory.
inline SirOutcome run_sir(const DirectedGraph& g, std::vector<NodeId> spreaders,
                          const SirParams& params, SirTurnLog* log = nullptr) {
    validate(params);
    const NodeId n = g.node_count();
    if (spreaders.empty()) throw std::invalid_argument("sir: spreader set is empty");
    for (NodeId v : spreaders)
        if (v >= n) throw std::out_of_range("sir: spreader id out of range");
    std::sort(spreaders.begin(), spreaders.end());
    spreaders.erase(std::unique(spreaders.begin(), spreaders.end()), spreaders.end());

    const std::uint64_t max_turns =
        params.max_turns > 0 ? params.max_turns : 10 * static_cast<std::uint64_t>(n);

    enum : std::uint8_t { S, I, R };
    std::vector<std::uint8_t> state(n, S);
    std::vector<char> pending(n, 0);
    std::vector<NodeId> infected = spreaders;  // kept sorted ascending
    for (NodeId v : infected) state[v] = I;

    SplitMix64 rng(params.seed);
    SirOutcome out;
    std::uint64_t recovered = 0;
    std::vector<NodeId> newly, survivors, merged;

    while (!infected.empty() && out.turns < max_turns) {
        ++out.turns;
        newly.clear();
        survivors.clear();

        for (NodeId u : infected)
            for (NodeId v : g.out_neighbors(u)) {
                if (state[v] != S) continue;
                if (rng.bernoulli(params.mu) && !pending[v]) {
                    pending[v] = 1;
                    newly.push_back(v);
                }
            }
        for (NodeId u : infected) {
            if (rng.bernoulli(params.beta)) {
                state[u] = R;
                ++recovered;
            } else {
                survivors.push_back(u);
            }
        }
        std::sort(newly.begin(), newly.end());
        for (NodeId v : newly) {
            state[v] = I;
            pending[v] = 0;
        }
        merged.clear();
        std::merge(survivors.begin(), survivors.end(), newly.begin(), newly.end(),
                   std::back_inserter(merged));
        infected.swap(merged);

        out.trajectory.push_back(static_cast<double>(recovered) / static_cast<double>(n));
        if (log != nullptr) {
            std::uint32_t counts[3] = {0, 0, 0};
            for (NodeId v = 0; v < n; ++v) ++counts[state[v]];
            log->susceptible.push_back(counts[S]);
            log->infected.push_back(counts[I]);
            log->recovered.push_back(counts[R]);
        }
    }
    out.truncated = !infected.empty();
    out.final_spread = out.trajectory.back();
    return out;
}

// Aggregates `runs` independent realizations. Run i draws from its own stream
// seeded by seed_combine(params.seed, i), so the aggregate does not depend on
// execution order and any run can be reproduced in isolation. Aggregation is
// sequential in run order. Pass collect_trajectory = false to skip the mean
// trajectory when only the final spread matters.
inline SirSummary run_many(const DirectedGraph& g, const std::vector<NodeId>& spreaders,
                           const SirParams& params, std::uint64_t runs,
                           bool collect_trajectory = true) {
    validate(params);
    if (runs < 1) throw std::invalid_argument("sir: runs must be >= 1");

    SirSummary summary;
    summary.runs = runs;
    std::vector<double> finals;
    finals.reserve(runs);
    std::vector<double> turn_sums;  // sum over processed runs of padded R(t)
    double final_sum = 0.0;

    for (std::uint64_t i = 0; i < runs; ++i) {
        SirParams run_params = params;
        run_params.seed = seed_combine(params.seed, i);
        const SirOutcome out = run_sir(g, spreaders, run_params);
        finals.push_back(out.final_spread);
        if (out.truncated) ++summary.truncated_runs;
        if (collect_trajectory) {
            // Earlier, shorter runs contribute their final value to every
            // turn beyond their end; extending the sums with the running
            // final total applies that padding retroactively.
            if (out.trajectory.size() > turn_sums.size())
                turn_sums.resize(out.trajectory.size(), final_sum);
            for (std::size_t t = 0; t < turn_sums.size(); ++t)
                turn_sums[t] += t < out.trajectory.size() ? out.trajectory[t] : out.final_spread;
        }
        final_sum += out.final_spread;
    }

    summary.mean_final_spread = final_sum / static_cast<double>(runs);
    double var_sum = 0.0;
    for (double x : finals) {
        const double d = x - summary.mean_final_spread;
        var_sum += d * d;
    }
    summary.stddev_final_spread = std::sqrt(var_sum / static_cast<double>(runs));
    if (collect_trajectory) {
        summary.mean_trajectory.resize(turn_sums.size());
        for (std::size_t t = 0; t < turn_sums.size(); ++t)
            summary.mean_trajectory[t] = turn_sums[t] / static_cast<double>(runs);
    }
    return summary;
}

}  // namespace spreadnet

#endif  // SPREADNET_SIR_HPP
