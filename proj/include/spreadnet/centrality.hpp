#ifndef SPREADNET_CENTRALITY_HPP
#define SPREADNET_CENTRALITY_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "spreadnet/graph.hpp"

namespace spreadnet {

struct CentralityScores {
    std::string measure;
    std::vector<double> values;  // indexed by NodeId
};

// Node ids ordered by descending score, ties by ascending id.
using Ranking = std::vector<NodeId>;

enum class DegreeMode { total, in, out };

inline CentralityScores degree_centrality(const DirectedGraph& g, DegreeMode mode = DegreeMode::out) {
    CentralityScores s;
    s.values.resize(g.node_count());
    switch (mode) {
        case DegreeMode::total:
            s.measure = "degree";
            for (NodeId v = 0; v < g.node_count(); ++v)
                s.values[v] = static_cast<double>(g.degree(v));
            break;
        case DegreeMode::in:
            s.measure = "in_degree";
            for (NodeId v = 0; v < g.node_count(); ++v)
                s.values[v] = static_cast<double>(g.in_degree(v));
            break;
        case DegreeMode::out:
            s.measure = "out_degree";
            for (NodeId v = 0; v < g.node_count(); ++v)
                s.values[v] = static_cast<double>(g.out_degree(v));
            break;
    }
    return s;
}

// Reachability-corrected closeness: with r nodes reachable from v (excluding
// v itself) at total hop distance S, score(v) = (r / (n-1)) * (r / S). Nodes
// reaching nothing score 0. On connected graphs this reduces to the classic
// (n-1)/S.
inline CentralityScores closeness_centrality(const DirectedGraph& g,
                                             Direction direction = Direction::out) {
    const NodeId n = g.node_count();
    CentralityScores s;
    s.measure = "closeness";
    s.values.assign(n, 0.0);
    if (n <= 1) return s;
    for (NodeId v = 0; v < n; ++v) {
        const std::vector<std::int32_t> dist = bfs_distances(g, v, direction);
        std::uint64_t reachable = 0;
        std::uint64_t total = 0;
        for (NodeId u = 0; u < n; ++u) {
            if (u == v || dist[u] < 0) continue;
            ++reachable;
            total += static_cast<std::uint64_t>(dist[u]);
        }
        if (reachable == 0) continue;
        const double r = static_cast<double>(reachable);
        s.values[v] = (r / static_cast<double>(n - 1)) * (r / static_cast<double>(total));
    }
    return s;
}

// Directed shortest-path betweenness (Brandes), unnormalized: score(v) is the
// sum over ordered pairs (x, y), x != y != v, of the fraction of shortest
// x->y paths passing through v.
inline CentralityScores betweenness_centrality(const DirectedGraph& g) {
    const NodeId n = g.node_count();
    CentralityScores s;
    s.measure = "betweenness";
    s.values.assign(n, 0.0);

    std::vector<NodeId> order;            // BFS visitation order
    std::vector<std::int32_t> dist(n);
    std::vector<double> sigma(n);         // shortest-path counts from the source
    std::vector<double> delta(n);         // accumulated dependencies
    std::vector<std::vector<NodeId>> preds(n);

    for (NodeId src = 0; src < n; ++src) {
        order.clear();
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();

        dist[src] = 0;
        sigma[src] = 1.0;
        order.push_back(src);
        std::size_t head = 0;
        while (head < order.size()) {
            const NodeId u = order[head++];
            for (NodeId w : g.out_neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[u] + 1) {
                    sigma[w] += sigma[u];
                    preds[w].push_back(u);
                }
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            const NodeId w = order[i];
            const double coeff = (1.0 + delta[w]) / sigma[w];
            for (NodeId u : preds[w]) delta[u] += sigma[u] * coeff;
            if (w != src) s.values[w] += delta[w];
        }
    }
    return s;
}

// The k highest scorers, descending by score, ties by ascending node id.
inline Ranking top_k(const CentralityScores& scores, std::size_t k) {
    const std::size_t n = scores.values.size();
    if (k < 1 || k > n) throw std::invalid_argument("top_k: k must be in [1, n]");
    Ranking ids(n);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    std::stable_sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
        if (scores.values[a] != scores.values[b]) return scores.values[a] > scores.values[b];
        return a < b;
    });
    ids.resize(k);
    return ids;
}

inline Ranking full_ranking(const CentralityScores& scores) {
    return top_k(scores, scores.values.size());
}

}  // namespace spreadnet

#endif  // SPREADNET_CENTRALITY_HPP
