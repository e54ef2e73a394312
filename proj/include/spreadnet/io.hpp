#ifndef SPREADNET_IO_HPP
#define SPREADNET_IO_HPP

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "spreadnet/experiment.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/sir.hpp"

namespace spreadnet {

// Fixed 6-decimal rendering, the precision used in human-facing tables.
inline std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

// Shortest representation that parses back to the identical double. Used in
// raw result exports, which must reload losslessly.
inline std::string shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::runtime_error("bad number: '" + std::string(text) + "'");
    return value;
}

inline std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::runtime_error("bad integer: '" + std::string(text) + "'");
    return value;
}

// Writes content to a sibling temp file and renames it into place, so a
// failure mid-write never leaves a partial file at the destination.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open for writing: " + tmp.string());
        os << content;
        os.flush();
        if (!os) {
            os.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot move " + tmp.string() + " into place");
    }
}

// --- JSON emission -----------------------------------------------------
// Keys are emitted in sorted order with fixed 6-decimal floats, so equal
// inputs always produce byte-equal documents.

inline std::string stats_json(const TopologyStats& s) {
    std::ostringstream os;
    os << "{\n"
       << "  \"arcs\": " << s.arcs << ",\n"
       << "  \"avg_degree\": " << fixed6(s.avg_degree) << ",\n"
       << "  \"avg_out_degree\": " << fixed6(s.avg_out_degree) << ",\n"
       << "  \"density\": " << fixed6(s.density) << ",\n"
       << "  \"giant_component_fraction\": " << fixed6(s.giant_component_fraction) << ",\n"
       << "  \"giant_component_nodes\": " << s.giant_component_nodes << ",\n"
       << "  \"nodes\": " << s.nodes << "\n"
       << "}\n";
    return os.str();
}

inline std::string sir_summary_json(const SirSummary& s, const SirParams& params,
                                    std::size_t spreader_count) {
    std::ostringstream os;
    os << "{\n"
       << "  \"beta\": " << fixed6(params.beta) << ",\n"
       << "  \"mean_final_spread\": " << fixed6(s.mean_final_spread) << ",\n"
       << "  \"mu\": " << fixed6(params.mu) << ",\n"
       << "  \"runs\": " << s.runs << ",\n"
       << "  \"seed\": " << params.seed << ",\n"
       << "  \"spreader_count\": " << spreader_count << ",\n"
       << "  \"stddev_final_spread\": " << fixed6(s.stddev_final_spread) << ",\n"
       << "  \"truncated_runs\": " << s.truncated_runs << "\n"
       << "}\n";
    return os.str();
}

// --- CSV emission -------------------------------------------------------
// Edge-list labels cannot contain separators (commas split tokens at load),
// so no quoting is needed anywhere.

inline std::string centrality_rank_csv(const DirectedGraph& g, const CentralityScores& scores,
                                       const Ranking& ranking) {
    std::ostringstream os;
    os << "node_label,score,rank\n";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const NodeId v = ranking[i];
        os << g.label(v) << ',' << fixed6(scores.values[v]) << ',' << i + 1 << '\n';
    }
    return os.str();
}

inline std::string election_rank_csv(const DirectedGraph& g, const Election& election) {
    std::ostringstream os;
    os << "rank,node_label,election_round_score\n";
    for (std::size_t i = 0; i < election.spreaders.size(); ++i)
        os << i + 1 << ',' << g.label(election.spreaders[i]) << ','
           << fixed6(election.round_scores[i]) << '\n';
    return os.str();
}

inline std::string rt_curve_csv(const std::vector<double>& mean_trajectory) {
    std::ostringstream os;
    os << "turn,mean_R\n";
    for (std::size_t t = 0; t < mean_trajectory.size(); ++t)
        os << t + 1 << ',' << fixed6(mean_trajectory[t]) << '\n';
    return os.str();
}

inline std::string victory_table_csv(const VictoryTable& table) {
    std::ostringstream os;
    os << "p,method,wins,ties\n";
    for (const VictoryRow& row : table.rows)
        for (std::size_t qi = 0; qi < table.methods.size(); ++qi)
            os << fixed6(row.p) << ',' << method_name(table.methods[qi]) << ',' << row.wins[qi]
               << ',' << row.ties << '\n';
    return os.str();
}

inline std::string sweep_csv(const SweepTable& t) {
    std::ostringstream os;
    os << t.axis_name << ",method,mean_final_spread\n";
    for (std::size_t i = 0; i < t.axis.size(); ++i)
        for (std::size_t qi = 0; qi < t.methods.size(); ++qi)
            os << fixed6(t.axis[i]) << ',' << method_name(t.methods[qi]) << ','
               << fixed6(t.means[i][qi]) << '\n';
    return os.str();
}

// Raw per-cell results, full precision so that reloading reconstructs the
// exact same numbers (and therefore the exact same victory table).
inline std::string raw_results_csv(const RawResults& r) {
    std::ostringstream os;
    os << "p,mu,beta,method,mean_final_spread,stddev,runs\n";
    for (std::size_t pi = 0; pi < r.p_values.size(); ++pi)
        for (std::size_t mi = 0; mi < r.mu_values.size(); ++mi)
            for (std::size_t bi = 0; bi < r.beta_values.size(); ++bi)
                for (std::size_t qi = 0; qi < r.methods.size(); ++qi) {
                    const CellStats& c = r.cell(pi, mi, bi, qi);
                    os << shortest(r.p_values[pi]) << ',' << shortest(r.mu_values[mi]) << ','
                       << shortest(r.beta_values[bi]) << ',' << method_name(r.methods[qi]) << ','
                       << shortest(c.mean_final_spread) << ',' << shortest(c.stddev) << ','
                       << r.runs << '\n';
                }
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <typename T>
std::size_t intern_axis(std::vector<T>& axis, const T& value) {
    for (std::size_t i = 0; i < axis.size(); ++i)
        if (axis[i] == value) return i;
    axis.push_back(value);
    return axis.size() - 1;
}

}  // namespace detail

// Inverse of raw_results_csv. Axis values appear in first-seen order; the
// writer emits them in plan order, so a write/read cycle preserves layout.
inline RawResults read_raw_results(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("raw results: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "p,mu,beta,method,mean_final_spread,stddev,runs")
        throw std::runtime_error("raw results: unexpected header");

    RawResults r;
    struct Row {
        std::size_t pi, mi, bi, qi;
        CellStats stats;
    };
    std::vector<Row> rows;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> f = detail::split_csv_line(line);
        if (f.size() != 7) throw std::runtime_error("raw results: malformed row: " + line);
        const auto method = method_from_name(f[3]);
        if (!method) throw std::runtime_error("raw results: unknown method: " + f[3]);
        Row row;
        row.pi = detail::intern_axis(r.p_values, parse_double(f[0]));
        row.mi = detail::intern_axis(r.mu_values, parse_double(f[1]));
        row.bi = detail::intern_axis(r.beta_values, parse_double(f[2]));
        row.qi = detail::intern_axis(r.methods, *method);
        row.stats = {parse_double(f[4]), parse_double(f[5])};
        const std::uint64_t runs = parse_u64(f[6]);
        if (first) {
            r.runs = runs;
            first = false;
        } else if (runs != r.runs) {
            throw std::runtime_error("raw results: inconsistent run counts");
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw std::runtime_error("raw results: no data rows");

    const std::size_t total =
        r.p_values.size() * r.mu_values.size() * r.beta_values.size() * r.methods.size();
    if (rows.size() != total)
        throw std::runtime_error("raw results: incomplete grid (" + std::to_string(rows.size()) +
                                 " rows for " + std::to_string(total) + " cells)");
    r.cells.resize(total);
    std::vector<char> seen(total, 0);
    for (const Row& row : rows) {
        const std::size_t idx = r.cell_index(row.pi, row.mi, row.bi, row.qi);
        if (seen[idx]) throw std::runtime_error("raw results: duplicate cell");
        seen[idx] = 1;
        r.cells[idx] = row.stats;
    }
    return r;
}

// --- Plan files ----------------------------------------------------------
// JSON object; graph_path is required, everything else falls back to the
// defaults in ExperimentPlan. Unknown keys are rejected to catch typos.

inline ExperimentPlan parse_plan(std::istream& is) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("plan: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("plan: top level must be a JSON object");

    ExperimentPlan plan;
    for (const auto& [key, value] : j.items()) {
        if (key == "graph_path") {
            if (!value.is_string()) throw std::runtime_error("plan: graph_path must be a string");
            plan.graph_path = value.get<std::string>();
        } else if (key == "methods") {
            if (!value.is_array() || value.empty())
                throw std::runtime_error("plan: methods must be a non-empty array");
            plan.methods.clear();
            for (const auto& name : value) {
                if (!name.is_string())
                    throw std::runtime_error("plan: method names must be strings");
                const auto m = method_from_name(name.get<std::string>());
                if (!m)
                    throw std::runtime_error("plan: unknown method: " + name.get<std::string>());
                plan.methods.push_back(*m);
            }
        } else if (key == "p_values" || key == "mu_values" || key == "beta_values") {
            if (!value.is_array() || value.empty())
                throw std::runtime_error("plan: " + key + " must be a non-empty array");
            std::vector<double> values;
            for (const auto& x : value) {
                if (!x.is_number()) throw std::runtime_error("plan: " + key + " must be numeric");
                values.push_back(x.get<double>());
            }
            if (key == "p_values")
                plan.p_values = std::move(values);
            else if (key == "mu_values")
                plan.mu_values = std::move(values);
            else
                plan.beta_values = std::move(values);
        } else if (key == "runs") {
            if (!value.is_number_unsigned() && !value.is_number_integer())
                throw std::runtime_error("plan: runs must be an integer");
            const std::int64_t runs = value.get<std::int64_t>();
            if (runs < 1) throw std::runtime_error("plan: runs must be >= 1");
            plan.runs = static_cast<std::uint64_t>(runs);
        } else if (key == "seed") {
            if (!value.is_number_unsigned() && !value.is_number_integer())
                throw std::runtime_error("plan: seed must be an integer");
            plan.seed = value.get<std::uint64_t>();
        } else {
            throw std::runtime_error("plan: unknown key: " + key);
        }
    }
    if (plan.graph_path.empty()) throw std::runtime_error("plan: graph_path is required");
    validate(plan);
    return plan;
}

inline ExperimentPlan parse_plan_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open plan file: " + path);
    return parse_plan(is);
}

}  // namespace spreadnet

#endif  // SPREADNET_IO_HPP
