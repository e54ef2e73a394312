#ifndef SPREADNET_GENERATORS_HPP
#define SPREADNET_GENERATORS_HPP

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "spreadnet/graph.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

// Uniform random simple digraph with exactly m distinct arcs (no self
// loops). Isolated nodes are possible; suitable for in-memory oracle tests.
inline DirectedGraph random_digraph(NodeId n, std::uint64_t m, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_digraph: need at least one node");
    const std::uint64_t max_arcs =
        static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(n) - 1);
    if (m > max_arcs) throw std::invalid_argument("random_digraph: too many arcs requested");
    SplitMix64 rng(seed);
    std::unordered_set<std::uint64_t> used;
    std::vector<DirectedGraph::Arc> arcs;
    arcs.reserve(m);
    while (arcs.size() < m) {
        const NodeId u = static_cast<NodeId>(rng.next_below(n));
        const NodeId v = static_cast<NodeId>(rng.next_below(n));
        if (u == v) continue;
        const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        if (used.insert(key).second) arcs.emplace_back(u, v);
    }
    return DirectedGraph::from_arcs(n, std::move(arcs));
}

// Preferential-attachment digraph: node i >= 1 first sends one arc to an
// earlier node chosen with probability proportional to in-degree + 1, then
// the remaining m - (n - 1) arcs are placed the same way from uniform random
// sources. The result is weakly connected with a heavy-tailed in-degree
// distribution and no isolated nodes, so it survives edge-list round trips.
inline DirectedGraph scale_free_digraph(NodeId n, std::uint64_t m, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("scale_free_digraph: need at least two nodes");
    const std::uint64_t max_arcs =
        static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(n) - 1);
    if (m < n - 1 || m > max_arcs)
        throw std::invalid_argument("scale_free_digraph: m must be in [n-1, n*(n-1)]");

    SplitMix64 rng(seed);
    // Each node appears once at creation and once more per incoming arc, so a
    // uniform pick from the bag is a pick proportional to in-degree + 1.
    std::vector<NodeId> bag;
    bag.reserve(1 + 2 * m);
    bag.push_back(0);
    std::unordered_set<std::uint64_t> used;
    std::vector<DirectedGraph::Arc> arcs;
    arcs.reserve(m);

    auto add_arc = [&](NodeId u, NodeId v) {
        used.insert((static_cast<std::uint64_t>(u) << 32) | v);
        arcs.emplace_back(u, v);
        bag.push_back(v);
    };

    for (NodeId i = 1; i < n; ++i) {
        const NodeId target = bag[rng.next_below(bag.size())];
        add_arc(i, target);
        bag.push_back(i);
    }
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap = 1000 * m + 1000;
    while (arcs.size() < m) {
        if (++attempts > attempt_cap)
            throw std::runtime_error("scale_free_digraph: arc placement did not converge");
        const NodeId u = static_cast<NodeId>(rng.next_below(n));
        const NodeId v = bag[rng.next_below(bag.size())];
        if (u == v) continue;
        if (used.contains((static_cast<std::uint64_t>(u) << 32) | v)) continue;
        add_arc(u, v);
    }
    return DirectedGraph::from_arcs(n, std::move(arcs));
}

}  // namespace spreadnet

#endif  // SPREADNET_GENERATORS_HPP
