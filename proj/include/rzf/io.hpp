#ifndef RZF_IO_HPP
#define RZF_IO_HPP

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rzf/estimate.hpp"
#include "rzf/exact.hpp"
#include "rzf/graph.hpp"

namespace rzf {

/// Malformed input data; carries the 1-based line number when known.
struct DataError : std::runtime_error {
    int line = 0;
    DataError(const std::string& what, int line_no = 0)
        : std::runtime_error(line_no > 0 ? what + " (line " + std::to_string(line_no) + ")"
                                         : what),
          line(line_no) {}
};

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& row) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(row);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!row.empty() && row.back() == ',') cells.push_back("");
    return cells;
}

inline std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline double parse_weight(const std::string& cell, int line) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(strip(cell), &used);
    } catch (const std::exception&) {
        throw DataError("not a number: '" + cell + "'", line);
    }
    if (used != strip(cell).size()) throw DataError("not a number: '" + cell + "'", line);
    return value;
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

}  // namespace detail

/// Edge-list CSV with the exact header `source,target,weight`. Vertex names
/// are arbitrary strings and get dense ids in first-appearance order.
inline WeightedDigraph ingest_edge_csv(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);
    if (lines.empty() || detail::strip(lines[0]) != "source,target,weight")
        throw DataError("expected header 'source,target,weight'", 1);
    std::vector<std::string> labels;
    std::map<std::string, int> ids;
    auto id_of = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        const int id = static_cast<int>(labels.size());
        ids.emplace(name, id);
        labels.push_back(name);
        return id;
    };
    std::vector<EdgeSpec> edges;
    std::map<std::pair<int, int>, int> seen;  // edge -> first line
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        if (detail::strip(lines[i]).empty()) continue;
        const std::vector<std::string> cells = detail::split_csv_row(lines[i]);
        if (cells.size() != 3) throw DataError("expected 3 columns", line_no);
        const std::string source = detail::strip(cells[0]);
        const std::string target = detail::strip(cells[1]);
        if (source.empty() || target.empty()) throw DataError("empty vertex name", line_no);
        const double weight = detail::parse_weight(cells[2], line_no);
        if (weight < 0.0) throw DataError("negative weight", line_no);
        const int u = id_of(source), v = id_of(target);
        if (!seen.emplace(std::make_pair(u, v), line_no).second)
            throw DataError("duplicate edge " + source + " -> " + target, line_no);
        edges.push_back({u, v, weight});
    }
    if (labels.empty()) throw DataError("no edges in file: " + path);
    return WeightedDigraph(static_cast<int>(labels.size()), edges, labels);
}

/// Square input-output matrix CSV: first row and first column carry the same
/// labels, every positive cell (i,j) becomes the edge i -> j, diagonal cells
/// become self-loops.
inline WeightedDigraph ingest_io_matrix(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);
    if (lines.empty()) throw DataError("empty file: " + path);
    std::vector<std::string> header = detail::split_csv_row(lines[0]);
    if (header.size() < 2) throw DataError("matrix header needs at least one label", 1);
    std::vector<std::string> labels;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const std::string label = detail::strip(header[c]);
        if (label.empty()) throw DataError("empty column label", 1);
        if (std::find(labels.begin(), labels.end(), label) != labels.end())
            throw DataError("duplicate label '" + label + "'", 1);
        labels.push_back(label);
    }
    const int n = static_cast<int>(labels.size());
    std::vector<std::string> body;
    for (std::size_t i = 1; i < lines.size(); ++i)
        if (!detail::strip(lines[i]).empty()) body.push_back(lines[i]);
    if (static_cast<int>(body.size()) != n)
        throw DataError("matrix is not square: " + std::to_string(n) + " columns but " +
                        std::to_string(body.size()) + " rows");
    std::vector<EdgeSpec> edges;
    for (int r = 0; r < n; ++r) {
        const int line_no = r + 2;
        const std::vector<std::string> cells = detail::split_csv_row(body[static_cast<std::size_t>(r)]);
        if (static_cast<int>(cells.size()) != n + 1)
            throw DataError("expected " + std::to_string(n + 1) + " cells", line_no);
        if (detail::strip(cells[0]) != labels[static_cast<std::size_t>(r)])
            throw DataError("row label '" + detail::strip(cells[0]) +
                                "' does not match column label '" +
                                labels[static_cast<std::size_t>(r)] + "'",
                            line_no);
        for (int c = 0; c < n; ++c) {
            const double value = detail::parse_weight(cells[static_cast<std::size_t>(c) + 1], line_no);
            if (value < 0.0) throw DataError("negative cell", line_no);
            if (value > 0.0) edges.push_back({r, c, value});
        }
    }
    return WeightedDigraph(n, edges, labels);
}

/// Writes the graph back out as an edge-list CSV (the ingest format).
inline void emit_edge_csv(const WeightedDigraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << "source,target,weight\n";
    char buf[64];
    for (const EdgeSpec& e : g.edge_list()) {
        std::snprintf(buf, sizeof buf, "%.17g", e.weight);
        out << g.label(e.from) << ',' << g.label(e.to) << ',' << buf << '\n';
    }
}

// ---------------------------------------------------------------------------
// Singleton ranking
// ---------------------------------------------------------------------------

enum class RankMethod { automatic, exact, monte_carlo };

struct RankRow {
    std::string label;
    VertexId vertex = 0;
    EptValue ept;
    double inverse_ept = 0.0;
    int rank = 0;
};

/// Per-vertex singleton EPT with the inverse-EPT centrality column; rows are
/// sorted ascending with infinite entries last.
struct RankReport {
    std::vector<RankRow> rows;
    std::string method;  // "exact" or "monte_carlo"
    std::uint64_t seed = 0;
    std::uint64_t runs = 0;
    int limit = kDefaultDpLimit;
};

inline RankReport rank_vertices(const WeightedDigraph& g, RankMethod method,
                                std::uint64_t runs = 100000, std::uint64_t seed = 1,
                                int limit = kDefaultDpLimit) {
    const bool exact = method == RankMethod::exact ||
                       (method == RankMethod::automatic && g.order() <= limit);
    if (method == RankMethod::exact && g.order() > limit)
        throw std::invalid_argument(
            "rank: graph exceeds the exact state-space limit; use --method mc");
    RankReport report;
    report.method = exact ? "exact" : "monte_carlo";
    report.seed = seed;
    report.runs = exact ? 0 : runs;
    report.limit = limit;
    for (int v = 0; v < g.order(); ++v) {
        RankRow row;
        row.label = g.label(v);
        row.vertex = v;
        const BlueSet start = BlueSet::of(g.order(), {v});
        if (exact) {
            row.ept = exact_ept(g, start, limit);
        } else if (is_finite_ept(g, start)) {
            row.ept = EptValue::finite(
                mc_ept(g, start, runs, derive_stream(seed, static_cast<std::uint64_t>(v))).mean);
        } else {
            row.ept = EptValue::infinite();
        }
        row.inverse_ept = row.ept.is_finite() && row.ept.value > 0.0 ? 1.0 / row.ept.value : 0.0;
        report.rows.push_back(std::move(row));
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const RankRow& a, const RankRow& b) {
        if (a.ept.is_finite() != b.ept.is_finite()) return a.ept.is_finite();
        if (a.ept.is_finite() && a.ept.value != b.ept.value) return a.ept.value < b.ept.value;
        return a.vertex < b.vertex;
    });
    for (std::size_t i = 0; i < report.rows.size(); ++i)
        report.rows[i].rank = static_cast<int>(i) + 1;
    return report;
}

namespace detail {

inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace detail

/// CSV rendering: columns label,ept,inverse_ept,rank; EPT fixed to 6 decimals,
/// infinity spelled `inf`; LF line endings.
inline std::string report_to_csv(const RankReport& report) {
    std::string out = "label,ept,inverse_ept,rank\n";
    for (const RankRow& row : report.rows) {
        out += row.label;
        out += ',';
        out += row.ept.is_finite() ? detail::fixed6(row.ept.value) : "inf";
        out += ',';
        out += detail::fixed6(row.inverse_ept);
        out += ',';
        out += std::to_string(row.rank);
        out += '\n';
    }
    return out;
}

/// JSON rendering with sorted keys; infinite entries carry ept null and the
/// explicit `infinite` flag.
inline std::string report_to_json(const RankReport& report) {
    nlohmann::json j;
    j["method"] = report.method;
    j["seed"] = report.seed;
    j["runs"] = report.runs;
    j["limit"] = report.limit;
    j["vertices"] = nlohmann::json::array();
    for (const RankRow& row : report.rows) {
        nlohmann::json v;
        v["label"] = row.label;
        v["infinite"] = !row.ept.is_finite();
        if (row.ept.is_finite())
            v["ept"] = detail::round6(row.ept.value);
        else
            v["ept"] = nullptr;
        v["inverse_ept"] = detail::round6(row.inverse_ept);
        v["rank"] = row.rank;
        j["vertices"].push_back(v);
    }
    return j.dump(2) + "\n";
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

/// Resolves a vertex by label, falling back to numeric ids ("3" or "v3").
inline VertexId resolve_vertex(const WeightedDigraph& g, const std::string& name) {
    for (int v = 0; v < g.order(); ++v)
        if (g.label(v) == name) return v;
    std::string digits = name;
    if (!digits.empty() && (digits[0] == 'v' || digits[0] == 'V')) digits.erase(0, 1);
    try {
        std::size_t used = 0;
        const int v = std::stoi(digits, &used);
        if (used == digits.size() && v >= 0 && v < g.order()) return v;
    } catch (const std::exception&) {
    }
    throw DataError("cannot resolve vertex '" + name + "'");
}

}  // namespace rzf

#endif  // RZF_IO_HPP
