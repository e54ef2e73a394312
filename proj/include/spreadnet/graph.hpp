#ifndef SPREADNET_GRAPH_HPP
#define SPREADNET_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spreadnet {

// Dense node index, 0..n-1, assigned in first-seen order at load time.
using NodeId = std::uint32_t;

enum class Direction { out, in, undirected };

// Whether an algorithm follows arcs or treats them as symmetric edges.
enum class GraphMode { directed, undirected };

// Malformed edge-list input. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct LoadOptions {
    std::string comment_prefix = "#";
    bool reverse_arcs = false;  // input lines are target<-source (e.g. raw citation dumps)
};

struct LoadReport {
    std::size_t lines_read = 0;
    std::size_t comment_lines = 0;
    std::size_t blank_lines = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_arcs_dropped = 0;
};

// Immutable simple digraph in CSR form, with both out- and in-adjacency and a
// label table. Construction cleans the arc list: self-loops and duplicate
// arcs are dropped, and adjacency lists come out sorted ascending, so two
// loads of the same input produce identical objects.
class DirectedGraph {
public:
    using Arc = std::pair<NodeId, NodeId>;

    static DirectedGraph from_arcs(std::vector<std::string> labels, std::vector<Arc> arcs,
                                   LoadReport* report = nullptr) {
        DirectedGraph g;
        g.build(std::move(labels), std::move(arcs), report);
        return g;
    }

    // Convenience for generated/test graphs: labels are decimal node indices.
    static DirectedGraph from_arcs(NodeId node_count, std::vector<Arc> arcs,
                                   LoadReport* report = nullptr) {
        std::vector<std::string> labels;
        labels.reserve(node_count);
        for (NodeId v = 0; v < node_count; ++v) labels.push_back(std::to_string(v));
        return from_arcs(std::move(labels), std::move(arcs), report);
    }

    NodeId node_count() const { return static_cast<NodeId>(labels_.size()); }
    std::uint64_t arc_count() const { return static_cast<std::uint64_t>(out_targets_.size()); }

    std::span<const NodeId> out_neighbors(NodeId v) const {
        return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
    }
    std::span<const NodeId> in_neighbors(NodeId v) const {
        return {in_targets_.data() + in_offsets_[v], in_targets_.data() + in_offsets_[v + 1]};
    }

    std::size_t out_degree(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
    std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }
    std::size_t degree(NodeId v) const { return out_degree(v) + in_degree(v); }

    const std::string& label(NodeId v) const { return labels_[v]; }

    std::optional<NodeId> find(std::string_view label) const {
        auto it = label_to_id_.find(std::string(label));
        if (it == label_to_id_.end()) return std::nullopt;
        return it->second;
    }

    // Graph with every arc mirrored (u->v and v->u), deduplicated. Used by
    // undirected modes of the sum-based algorithms, where each neighbor must
    // be counted exactly once.
    DirectedGraph symmetrized() const {
        std::vector<Arc> arcs;
        arcs.reserve(out_targets_.size() * 2);
        for (NodeId u = 0; u < node_count(); ++u)
            for (NodeId v : out_neighbors(u)) {
                arcs.emplace_back(u, v);
                arcs.emplace_back(v, u);
            }
        return from_arcs(labels_, std::move(arcs));
    }

    bool operator==(const DirectedGraph& other) const {
        return labels_ == other.labels_ && out_offsets_ == other.out_offsets_ &&
               out_targets_ == other.out_targets_;
    }

    // One "source target" line per arc, in adjacency order. Note isolated
    // nodes cannot be represented in this format.
    void write_edge_list(std::ostream& os) const {
        for (NodeId u = 0; u < node_count(); ++u)
            for (NodeId v : out_neighbors(u)) os << labels_[u] << ' ' << labels_[v] << '\n';
    }

private:
    void build(std::vector<std::string>&& labels, std::vector<Arc>&& arcs, LoadReport* report) {
        labels_ = std::move(labels);
        const std::size_t n = labels_.size();
        if (n == 0) throw std::runtime_error("graph has no nodes");
        for (const Arc& a : arcs)
            if (a.first >= n || a.second >= n) throw std::out_of_range("arc endpoint out of range");

        std::size_t self_loops = 0;
        std::erase_if(arcs, [&](const Arc& a) {
            if (a.first == a.second) {
                ++self_loops;
                return true;
            }
            return false;
        });
        std::sort(arcs.begin(), arcs.end());
        const std::size_t before = arcs.size();
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        if (report != nullptr) {
            report->self_loops_dropped += self_loops;
            report->duplicate_arcs_dropped += before - arcs.size();
        }

        const std::size_t m = arcs.size();
        out_offsets_.assign(n + 1, 0);
        in_offsets_.assign(n + 1, 0);
        for (const Arc& a : arcs) {
            ++out_offsets_[a.first + 1];
            ++in_offsets_[a.second + 1];
        }
        for (std::size_t v = 0; v < n; ++v) {
            out_offsets_[v + 1] += out_offsets_[v];
            in_offsets_[v + 1] += in_offsets_[v];
        }
        out_targets_.resize(m);
        in_targets_.resize(m);
        std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
        // Arcs are sorted by (source, target): out-lists fill in target order
        // and in-lists pick up sources in ascending order as a side effect.
        std::size_t k = 0;
        for (const Arc& a : arcs) {
            out_targets_[k++] = a.second;
            in_targets_[cursor[a.second]++] = a.first;
        }

        label_to_id_.reserve(n);
        for (NodeId v = 0; v < n; ++v) label_to_id_.emplace(labels_[v], v);
        if (label_to_id_.size() != n) throw std::runtime_error("duplicate node labels");
    }

    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> label_to_id_;
    std::vector<std::size_t> out_offsets_, in_offsets_;
    std::vector<NodeId> out_targets_, in_targets_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// Parses an edge-list stream: one arc per line, two whitespace- or
// comma-separated tokens "source target", comment lines starting with the
// configured prefix. Node ids are assigned densely in first-seen token order.
// Self-loops and duplicate arcs are dropped (counted in the report). A line
// with any other token count is a ParseError; an input with no nodes is an
// error.
inline DirectedGraph load_edge_list(std::istream& is, const LoadOptions& options = {},
                                    LoadReport* report = nullptr) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<DirectedGraph::Arc> arcs;
    LoadReport local;

    auto intern = [&](std::string_view token) -> NodeId {
        auto it = ids.find(std::string(token));
        if (it != ids.end()) return it->second;
        const NodeId id = static_cast<NodeId>(labels.size());
        labels.emplace_back(token);
        ids.emplace(labels.back(), id);
        return id;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        ++local.lines_read;
        std::string_view body = detail::trim(line);
        if (body.empty()) {
            ++local.blank_lines;
            continue;
        }
        if (!options.comment_prefix.empty() && body.starts_with(options.comment_prefix)) {
            ++local.comment_lines;
            continue;
        }
        std::string normalized(body);
        std::replace(normalized.begin(), normalized.end(), ',', ' ');
        std::istringstream tok(normalized);
        std::string a, b, extra;
        if (!(tok >> a >> b)) throw ParseError("expected two tokens", line_no);
        if (tok >> extra) throw ParseError("expected two tokens, found more", line_no);
        NodeId u = intern(a);
        NodeId v = intern(b);
        if (options.reverse_arcs) std::swap(u, v);
        arcs.emplace_back(u, v);
    }
    if (labels.empty()) throw std::runtime_error("edge list is empty: no nodes found");

    DirectedGraph g = DirectedGraph::from_arcs(std::move(labels), std::move(arcs), &local);
    if (report != nullptr) *report = local;
    return g;
}

inline DirectedGraph load_edge_list_file(const std::string& path, const LoadOptions& options = {},
                                         LoadReport* report = nullptr) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open graph file: " + path);
    return load_edge_list(is, options, report);
}

// Hop distances from source following the requested direction. Unreachable
// nodes (or nodes beyond max_depth, when max_depth >= 0) are marked -1.
inline std::vector<std::int32_t> bfs_distances(const DirectedGraph& g, NodeId source,
                                               Direction direction = Direction::out,
                                               std::int32_t max_depth = -1) {
    if (source >= g.node_count()) throw std::out_of_range("bfs source out of range");
    std::vector<std::int32_t> dist(g.node_count(), -1);
    std::vector<NodeId> queue;
    queue.reserve(64);
    queue.push_back(source);
    dist[source] = 0;
    std::size_t head = 0;
    while (head < queue.size()) {
        const NodeId u = queue[head++];
        const std::int32_t du = dist[u];
        if (max_depth >= 0 && du >= max_depth) continue;
        auto visit = [&](NodeId v) {
            if (dist[v] < 0) {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        };
        if (direction == Direction::out || direction == Direction::undirected)
            for (NodeId v : g.out_neighbors(u)) visit(v);
        if (direction == Direction::in || direction == Direction::undirected)
            for (NodeId v : g.in_neighbors(u)) visit(v);
    }
    return dist;
}

// Largest weakly connected component, as a sorted node list. Ties between
// equal-sized components go to the one containing the smallest node id.
inline std::vector<NodeId> giant_component(const DirectedGraph& g) {
    const NodeId n = g.node_count();
    std::vector<bool> seen(n, false);
    std::vector<NodeId> best, current, queue;
    for (NodeId start = 0; start < n; ++start) {
        if (seen[start]) continue;
        current.clear();
        queue.clear();
        queue.push_back(start);
        seen[start] = true;
        std::size_t head = 0;
        while (head < queue.size()) {
            const NodeId u = queue[head++];
            current.push_back(u);
            auto visit = [&](NodeId v) {
                if (!seen[v]) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            };
            for (NodeId v : g.out_neighbors(u)) visit(v);
            for (NodeId v : g.in_neighbors(u)) visit(v);
        }
        // Scanning starts ascending, so the first component of a given size
        // is the one with the smallest minimum id.
        if (current.size() > best.size()) best = current;
    }
    std::sort(best.begin(), best.end());
    return best;
}

struct TopologyStats {
    std::uint64_t nodes = 0;
    std::uint64_t arcs = 0;
    double density = 0.0;           // m / (n * (n - 1)); 0 for a single node
    double avg_degree = 0.0;        // 2m / n
    double avg_out_degree = 0.0;    // m / n
    std::uint64_t giant_component_nodes = 0;
    double giant_component_fraction = 0.0;
};

inline TopologyStats topology_stats(const DirectedGraph& g) {
    TopologyStats s;
    const double n = static_cast<double>(g.node_count());
    const double m = static_cast<double>(g.arc_count());
    s.nodes = g.node_count();
    s.arcs = g.arc_count();
    s.density = g.node_count() > 1 ? m / (n * (n - 1.0)) : 0.0;
    s.avg_degree = 2.0 * m / n;
    s.avg_out_degree = m / n;
    s.giant_component_nodes = giant_component(g).size();
    s.giant_component_fraction = static_cast<double>(s.giant_component_nodes) / n;
    return s;
}

}  // namespace spreadnet

#endif  // SPREADNET_GRAPH_HPP
