#ifndef SPREADNET_VOTERANK_HPP
#define SPREADNET_VOTERANK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spreadnet/graph.hpp"

namespace spreadnet {

enum class VoteVariant { original, lred, xred };

inline const char* variant_name(VoteVariant v) {
    switch (v) {
        case VoteVariant::original: return "voterank";
        case VoteVariant::lred: return "voterank-lred";
        case VoteVariant::xred: return "voterank-xred";
    }
    return "?";
}

// How much voting ability a node at hop distance d from a freshly elected
// spreader loses. All three variants subtract f = 1/<k> at distance 1; they
// differ in how the suppression decays farther out and how far it reaches.
struct ReductionKernel {
    VoteVariant variant = VoteVariant::original;
    double avg_degree = 0.0;  // <k>: avg out-degree (directed) or avg degree (undirected)
    double f = 0.0;           // 1/<k>, the suppression at distance 1
    std::int32_t horizon = 1; // max hop distance that suppression reaches

    double delta(std::int32_t d) const {
        if (d < 1 || d > horizon) return 0.0;
        switch (variant) {
            case VoteVariant::original:
                return d == 1 ? f : 0.0;
            case VoteVariant::lred:
                return f / static_cast<double>(d);
            case VoteVariant::xred: {
                double value = f;
                for (std::int32_t i = 1; i < d; ++i) value *= f;
                return value;
            }
        }
        return 0.0;
    }
};

// horizon_override is for experiments and tests (e.g. forcing h=1 collapses
// lred/xred onto the original method); by default the horizon is 1 for the
// original variant and ceil(<k>) for the decaying ones.
inline ReductionKernel make_kernel(VoteVariant variant, const DirectedGraph& g,
                                   GraphMode mode = GraphMode::directed,
                                   std::optional<std::int32_t> horizon_override = std::nullopt) {
    const double n = static_cast<double>(g.node_count());
    const double m = static_cast<double>(g.arc_count());
    const double k = mode == GraphMode::directed ? m / n : 2.0 * m / n;
    if (!(k > 0.0)) throw std::invalid_argument("make_kernel: graph has no arcs");
    ReductionKernel kernel;
    kernel.variant = variant;
    kernel.avg_degree = k;
    kernel.f = 1.0 / k;
    if (horizon_override.has_value()) {
        if (*horizon_override < 1) throw std::invalid_argument("make_kernel: horizon must be >= 1");
        kernel.horizon = *horizon_override;
    } else {
        kernel.horizon =
            variant == VoteVariant::original ? 1 : static_cast<std::int32_t>(std::ceil(k));
    }
    return kernel;
}

// Mutable election state. `score` caches the current voting score of every
// unelected node; elected nodes hold va = score = 0 permanently.
struct VoteState {
    std::vector<double> va;
    std::vector<double> score;
    std::vector<NodeId> elected;
    std::vector<char> is_elected;
};

// Fresh voting score of v: the sum of voting abilities of its out-neighbors,
// accumulated in adjacency order.
inline double voting_score(const DirectedGraph& g, const VoteState& state, NodeId v) {
    double s = 0.0;
    for (NodeId u : g.out_neighbors(v)) s += state.va[u];
    return s;
}

inline VoteState make_vote_state(const DirectedGraph& g) {
    VoteState state;
    state.va.assign(g.node_count(), 1.0);
    state.is_elected.assign(g.node_count(), 0);
    state.score.resize(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) state.score[v] = voting_score(g, state, v);
    return state;
}

// Elects the highest-scoring unelected node (ties to the smallest id), zeroes
// it out, and suppresses the voting ability of every node within the kernel
// horizon of it (following out-arcs, each node charged once at its BFS
// distance). Cached scores are then refreshed from scratch for exactly the
// nodes with an out-neighbor whose va changed; every other cached value is
// already bit-identical to a full recompute, which keeps this incremental
// scheme exactly equivalent to rescoring everything each round.
inline NodeId elect_one(const DirectedGraph& g, VoteState& state, const ReductionKernel& kernel) {
    const NodeId n = g.node_count();
    NodeId winner = n;
    for (NodeId v = 0; v < n; ++v) {
        if (state.is_elected[v]) continue;
        if (winner == n || state.score[v] > state.score[winner]) winner = v;
    }
    if (winner == n) throw std::logic_error("elect_one: no unelected node left");

    state.is_elected[winner] = 1;
    state.elected.push_back(winner);

    std::vector<NodeId> changed;
    auto set_va = [&](NodeId v, double value) {
        if (state.va[v] != value) {
            state.va[v] = value;
            changed.push_back(v);
        }
    };
    set_va(winner, 0.0);
    state.score[winner] = 0.0;

    // Layered BFS out of the winner, suppressing each layer as it is found.
    std::vector<std::int32_t> dist(n, -1);
    dist[winner] = 0;
    std::vector<NodeId> frontier{winner}, next;
    for (std::int32_t d = 1; d <= kernel.horizon && !frontier.empty(); ++d) {
        const double reduction = kernel.delta(d);
        next.clear();
        for (NodeId u : frontier)
            for (NodeId v : g.out_neighbors(u)) {
                if (dist[v] >= 0) continue;
                dist[v] = d;
                next.push_back(v);
                set_va(v, std::max(0.0, state.va[v] - reduction));
            }
        std::swap(frontier, next);
    }

    // Refresh the cached score of every in-neighbor of a changed node.
    std::vector<char> dirty(n, 0);
    for (NodeId v : changed)
        for (NodeId u : g.in_neighbors(v)) dirty[u] = 1;
    for (NodeId u = 0; u < n; ++u)
        if (dirty[u] && !state.is_elected[u]) state.score[u] = voting_score(g, state, u);

    return winner;
}

struct Election {
    std::vector<NodeId> spreaders;     // in election order
    std::vector<double> round_scores;  // winner's voting score at its election
};

// Runs `count` elections from a fresh state. For undirected mode the graph is
// symmetrized first and <k> becomes the average total degree.
inline Election run_election(const DirectedGraph& g, VoteVariant variant, std::size_t count,
                             GraphMode mode = GraphMode::directed,
                             std::optional<std::int32_t> horizon_override = std::nullopt) {
    if (count < 1 || count > g.node_count())
        throw std::invalid_argument("run_election: count must be in [1, n]");
    const ReductionKernel kernel = make_kernel(variant, g, mode, horizon_override);
    const DirectedGraph* effective = &g;
    DirectedGraph sym;
    if (mode == GraphMode::undirected) {
        sym = g.symmetrized();
        effective = &sym;
    }
    VoteState state = make_vote_state(*effective);
    Election result;
    result.spreaders.reserve(count);
    result.round_scores.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // Find the argmax up front so the winner's score can be recorded
        // before elect_one zeroes it. elect_one repeats the scan; the
        // duplication is O(n) and keeps its interface minimal.
        NodeId best = effective->node_count();
        for (NodeId v = 0; v < effective->node_count(); ++v) {
            if (state.is_elected[v]) continue;
            if (best == effective->node_count() || state.score[v] > state.score[best]) best = v;
        }
        result.round_scores.push_back(state.score[best]);
        const NodeId elected = elect_one(*effective, state, kernel);
        result.spreaders.push_back(elected);
    }
    return result;
}

inline std::vector<NodeId> select_spreaders(const DirectedGraph& g, VoteVariant variant,
                                            std::size_t count,
                                            GraphMode mode = GraphMode::directed,
                                            std::optional<std::int32_t> horizon_override =
                                                std::nullopt) {
    return run_election(g, variant, count, mode, horizon_override).spreaders;
}

// Number of spreaders for fraction p of n nodes: round half up, at least 1.
inline std::size_t spreader_count_from_fraction(std::size_t n, double p) {
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("spreader fraction must be in (0, 1]");
    const double rounded = std::floor(p * static_cast<double>(n) + 0.5);
    return std::max<std::size_t>(1, static_cast<std::size_t>(rounded));
}

}  // namespace spreadnet

#endif  // SPREADNET_VOTERANK_HPP
