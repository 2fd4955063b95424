#ifndef RZF_GRAPH_HPP
#define RZF_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rzf {

using VertexId = int;

/// Subset of vertices in bitmask encoding. This is the Markov state of the
/// process: once a vertex is inserted it is never removed.
class BlueSet {
public:
    BlueSet() = default;

    explicit BlueSet(int universe)
        : n_(universe), words_(static_cast<std::size_t>((universe + 63) / 64), 0) {
        if (universe < 0) throw std::invalid_argument("BlueSet: negative universe");
    }

    static BlueSet all(int universe) {
        BlueSet s(universe);
        for (int v = 0; v < universe; ++v) s.set(v);
        return s;
    }

    static BlueSet of(int universe, std::initializer_list<VertexId> vs) {
        BlueSet s(universe);
        for (VertexId v : vs) s.set(v);
        return s;
    }

    static BlueSet from_mask(int universe, std::uint64_t mask) {
        BlueSet s(universe);
        for (int v = 0; v < universe && v < 64; ++v)
            if (mask >> v & 1) s.set(v);
        return s;
    }

    int universe() const { return n_; }

    bool test(VertexId v) const {
        check(v);
        return words_[static_cast<std::size_t>(v) / 64] >> (v % 64) & 1;
    }

    BlueSet& set(VertexId v) {
        check(v);
        words_[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
        return *this;
    }

    int count() const {
        int c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool none() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    bool all_set() const { return count() == n_; }

    /// True when this set is a superset of (or equal to) `other`.
    bool contains(const BlueSet& other) const {
        if (other.n_ != n_) throw std::invalid_argument("BlueSet: universe mismatch");
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (other.words_[i] & ~words_[i]) return false;
        return true;
    }

    std::uint32_t mask32() const {
        if (n_ > 32) throw std::logic_error("BlueSet: mask32 needs universe <= 32");
        return words_.empty() ? 0u : static_cast<std::uint32_t>(words_[0]);
    }

    std::vector<VertexId> members() const {
        std::vector<VertexId> out;
        for (int v = 0; v < n_; ++v)
            if (test(v)) out.push_back(v);
        return out;
    }

    friend bool operator==(const BlueSet& a, const BlueSet& b) = default;

private:
    void check(VertexId v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("BlueSet: vertex out of range");
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct EdgeSpec {
    VertexId from;
    VertexId to;
    double weight;
};

/// Immutable weighted directed graph. Only positive-weight edges are stored
/// (zero weights behave exactly like absent edges in the dynamics), adjacency
/// is kept both ways, and total incoming weight per vertex is cached since the
/// color-change rule divides by it on every query.
class WeightedDigraph {
public:
    struct Arc {
        VertexId vertex;  // the other endpoint
        double weight;
    };

    WeightedDigraph(int n, const std::vector<EdgeSpec>& edges,
                    std::vector<std::string> labels = {})
        : n_(n), out_(static_cast<std::size_t>(std::max(n, 0))),
          in_(static_cast<std::size_t>(std::max(n, 0))), labels_(std::move(labels)) {
        if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
        if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
            throw std::invalid_argument("label count does not match vertex count");
        std::vector<std::pair<VertexId, VertexId>> seen;
        seen.reserve(edges.size());
        for (const EdgeSpec& e : edges) {
            if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
                throw std::invalid_argument("edge endpoint out of range: (" +
                                            std::to_string(e.from) + "," + std::to_string(e.to) +
                                            ")");
            if (e.weight < 0.0)
                throw std::invalid_argument("negative weight on edge (" + std::to_string(e.from) +
                                            "," + std::to_string(e.to) + ")");
            seen.emplace_back(e.from, e.to);
        }
        std::sort(seen.begin(), seen.end());
        auto dup = std::adjacent_find(seen.begin(), seen.end());
        if (dup != seen.end())
            throw std::invalid_argument("duplicate edge (" + std::to_string(dup->first) + "," +
                                        std::to_string(dup->second) + ")");
        for (const EdgeSpec& e : edges) {
            if (e.weight == 0.0) continue;  // zero weight == absent
            out_[static_cast<std::size_t>(e.from)].push_back({e.to, e.weight});
            in_[static_cast<std::size_t>(e.to)].push_back({e.from, e.weight});
            ++edge_count_;
        }
        for (auto& arcs : out_)
            std::sort(arcs.begin(), arcs.end(),
                      [](const Arc& a, const Arc& b) { return a.vertex < b.vertex; });
        for (auto& arcs : in_)
            std::sort(arcs.begin(), arcs.end(),
                      [](const Arc& a, const Arc& b) { return a.vertex < b.vertex; });
        in_weight_.resize(static_cast<std::size_t>(n), 0.0);
        for (int v = 0; v < n; ++v) {
            double total = 0.0;
            for (const Arc& a : in_[static_cast<std::size_t>(v)]) total += a.weight;
            in_weight_[static_cast<std::size_t>(v)] = total;
        }
    }

    int order() const { return n_; }
    int edge_count() const { return edge_count_; }

    std::span<const Arc> out_arcs(VertexId v) const { return out_[index(v)]; }
    std::span<const Arc> in_arcs(VertexId v) const { return in_[index(v)]; }
    int in_degree(VertexId v) const { return static_cast<int>(in_[index(v)].size()); }
    int out_degree(VertexId v) const { return static_cast<int>(out_[index(v)].size()); }

    /// Total incoming weight; the denominator of the color-change rule.
    double in_weight(VertexId v) const { return in_weight_[index(v)]; }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::string label(VertexId v) const {
        index(v);
        return labels_.empty() ? "v" + std::to_string(v) : labels_[static_cast<std::size_t>(v)];
    }

    std::vector<EdgeSpec> edge_list() const {
        std::vector<EdgeSpec> out;
        out.reserve(static_cast<std::size_t>(edge_count_));
        for (int v = 0; v < n_; ++v)
            for (const Arc& a : out_[static_cast<std::size_t>(v)])
                out.push_back({v, a.vertex, a.weight});
        return out;
    }

private:
    std::size_t index(VertexId v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
        return static_cast<std::size_t>(v);
    }

    int n_ = 0;
    int edge_count_ = 0;
    std::vector<std::vector<Arc>> out_;
    std::vector<std::vector<Arc>> in_;
    std::vector<double> in_weight_;
    std::vector<std::string> labels_;
};

inline WeightedDigraph build_graph(int n, const std::vector<EdgeSpec>& edges,
                                   std::vector<std::string> labels = {}) {
    return WeightedDigraph(n, edges, std::move(labels));
}

/// Same vertex set, only the positive-weight edges. Construction already drops
/// zero weights, so this cannot change a graph coming out of build_graph.
inline WeightedDigraph positive_subgraph(const WeightedDigraph& g) {
    std::vector<EdgeSpec> kept;
    for (const EdgeSpec& e : g.edge_list())
        if (e.weight > 0.0) kept.push_back(e);
    return WeightedDigraph(g.order(), kept, g.labels());
}

/// Vertices reachable from S along positive-weight directed paths.
inline BlueSet reachable_set(const WeightedDigraph& g, const BlueSet& start) {
    if (start.universe() != g.order())
        throw std::invalid_argument("reachable_set: universe mismatch");
    if (start.none()) throw std::invalid_argument("reachable_set: start set is empty");
    BlueSet seen = start;
    std::vector<VertexId> queue = start.members();
    while (!queue.empty()) {
        VertexId v = queue.back();
        queue.pop_back();
        for (const auto& arc : g.out_arcs(v)) {
            if (!seen.test(arc.vertex)) {
                seen.set(arc.vertex);
                queue.push_back(arc.vertex);
            }
        }
    }
    return seen;
}

/// Finite expected propagation time iff every vertex is reachable from S in
/// the positive subgraph.
inline bool is_finite_ept(const WeightedDigraph& g, const BlueSet& start) {
    return reachable_set(g, start).count() == g.order();
}

namespace detail {

inline std::vector<int> bfs_distances(const WeightedDigraph& g, VertexId source) {
    std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
    dist[static_cast<std::size_t>(source)] = 0;
    std::vector<VertexId> frontier{source};
    int d = 0;
    while (!frontier.empty()) {
        std::vector<VertexId> next;
        ++d;
        for (VertexId v : frontier)
            for (const auto& arc : g.out_arcs(v))
                if (dist[static_cast<std::size_t>(arc.vertex)] < 0) {
                    dist[static_cast<std::size_t>(arc.vertex)] = d;
                    next.push_back(arc.vertex);
                }
        frontier = std::move(next);
    }
    return dist;
}

}  // namespace detail

/// Max directed distance from v, or nullopt when some vertex is unreachable.
/// Distances ignore weights: the dynamics care about weights, distances do not.
inline std::optional<int> eccentricity(const WeightedDigraph& g, VertexId v) {
    std::vector<int> dist = detail::bfs_distances(g, v);
    int worst = 0;
    for (int d : dist) {
        if (d < 0) return std::nullopt;
        worst = std::max(worst, d);
    }
    return worst;
}

inline std::optional<int> radius(const WeightedDigraph& g) {
    std::optional<int> best;
    for (int v = 0; v < g.order(); ++v) {
        auto ecc = eccentricity(g, v);
        if (ecc && (!best || *ecc < *best)) best = ecc;
    }
    return best;
}

/// True iff every directed cycle of G passes through v, i.e. G - v is acyclic.
inline bool every_cycle_through(const WeightedDigraph& g, VertexId v) {
    const int n = g.order();
    if (v < 0 || v >= n) throw std::out_of_range("vertex out of range");
    // Kahn's algorithm on the graph with v deleted. Self-loops are cycles.
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    int remaining = 0;
    for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        ++remaining;
        for (const auto& arc : g.in_arcs(u))
            if (arc.vertex != v) ++indeg[static_cast<std::size_t>(u)];
    }
    std::vector<VertexId> queue;
    for (int u = 0; u < n; ++u)
        if (u != v && indeg[static_cast<std::size_t>(u)] == 0) queue.push_back(u);
    int removed = 0;
    while (!queue.empty()) {
        VertexId u = queue.back();
        queue.pop_back();
        ++removed;
        for (const auto& arc : g.out_arcs(u)) {
            if (arc.vertex == v || arc.vertex == u) continue;
            if (--indeg[static_cast<std::size_t>(arc.vertex)] == 0) queue.push_back(arc.vertex);
        }
    }
    return removed == remaining;
}

/// The unique maximal fort contained in X: repeatedly discard members with no
/// positive-weight in-neighbor left inside the set. May come back empty.
inline BlueSet maximal_fort(const WeightedDigraph& g, const BlueSet& candidate) {
    if (candidate.universe() != g.order())
        throw std::invalid_argument("maximal_fort: universe mismatch");
    std::vector<char> inside(static_cast<std::size_t>(g.order()), 0);
    for (VertexId v : candidate.members()) inside[static_cast<std::size_t>(v)] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.order(); ++v) {
            if (!inside[static_cast<std::size_t>(v)]) continue;
            bool supported = false;
            for (const auto& arc : g.in_arcs(v))
                if (inside[static_cast<std::size_t>(arc.vertex)]) {
                    supported = true;
                    break;
                }
            if (!supported) {
                inside[static_cast<std::size_t>(v)] = 0;
                changed = true;
            }
        }
    }
    BlueSet fort(g.order());
    for (int v = 0; v < g.order(); ++v)
        if (inside[static_cast<std::size_t>(v)]) fort.set(v);
    return fort;
}

/// True when every member of `fort` has a positive-weight in-neighbor inside it.
inline bool is_fort(const WeightedDigraph& g, const BlueSet& fort) {
    for (VertexId v : fort.members()) {
        bool supported = false;
        for (const auto& arc : g.in_arcs(v))
            if (fort.test(arc.vertex)) {
                supported = true;
                break;
            }
        if (!supported) return false;
    }
    return true;
}

namespace detail {

// Kosaraju strongly connected components; returns component id per vertex.
inline std::vector<int> scc_ids(const WeightedDigraph& g, int& count) {
    const int n = g.order();
    std::vector<VertexId> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        // iterative DFS with explicit post-order
        std::vector<std::pair<VertexId, std::size_t>> stack{{s, 0}};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            VertexId v = stack.back().first;
            std::size_t i = stack.back().second;
            auto arcs = g.out_arcs(v);
            if (i < arcs.size()) {
                stack.back().second = i + 1;
                VertexId w = arcs[i].vertex;
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    count = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[static_cast<std::size_t>(*it)] >= 0) continue;
        std::vector<VertexId> stack{*it};
        comp[static_cast<std::size_t>(*it)] = count;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (const auto& arc : g.in_arcs(v))
                if (comp[static_cast<std::size_t>(arc.vertex)] < 0) {
                    comp[static_cast<std::size_t>(arc.vertex)] = count;
                    stack.push_back(arc.vertex);
                }
        }
        ++count;
    }
    return comp;
}

// Greedy fort growth from a seed: keep adding an in-neighbor for the first
// unsupported member until closed. Fails where a member has no in-arc at all.
inline std::optional<BlueSet> grow_fort(const WeightedDigraph& g, VertexId seed) {
    std::vector<char> inside(static_cast<std::size_t>(g.order()), 0);
    inside[static_cast<std::size_t>(seed)] = 1;
    std::vector<VertexId> todo{seed};
    while (!todo.empty()) {
        VertexId v = todo.back();
        todo.pop_back();
        bool supported = false;
        for (const auto& arc : g.in_arcs(v))
            if (inside[static_cast<std::size_t>(arc.vertex)]) {
                supported = true;
                break;
            }
        if (supported) continue;
        if (g.in_arcs(v).empty()) return std::nullopt;
        VertexId pick = g.in_arcs(v).front().vertex;
        inside[static_cast<std::size_t>(pick)] = 1;
        todo.push_back(pick);
        todo.push_back(v);
    }
    BlueSet fort(g.order());
    for (int v = 0; v < g.order(); ++v)
        if (inside[static_cast<std::size_t>(v)]) fort.set(v);
    return fort;
}

}  // namespace detail

/// Best-effort search for two disjoint nonempty forts. Tries small strongly
/// connected components first, then grows a fort greedily around each vertex.
/// An absent result means "not found", not "none exist".
inline std::optional<std::pair<BlueSet, BlueSet>> find_disjoint_forts(const WeightedDigraph& g) {
    const int n = g.order();
    auto complete_pair = [&](const BlueSet& f1) -> std::optional<std::pair<BlueSet, BlueSet>> {
        if (f1.none() || f1.count() == n) return std::nullopt;
        BlueSet rest(n);
        for (int v = 0; v < n; ++v)
            if (!f1.test(v)) rest.set(v);
        BlueSet f2 = maximal_fort(g, rest);
        if (f2.none()) return std::nullopt;
        return std::make_pair(f1, f2);
    };

    int count = 0;
    std::vector<int> comp = detail::scc_ids(g, count);
    std::vector<int> size(static_cast<std::size_t>(count), 0);
    for (int v = 0; v < n; ++v) ++size[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    std::vector<int> order(static_cast<std::size_t>(count));
    for (int c = 0; c < count; ++c) order[static_cast<std::size_t>(c)] = c;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return size[static_cast<std::size_t>(a)] < size[static_cast<std::size_t>(b)];
    });
    for (int c : order) {
        BlueSet candidate(n);
        for (int v = 0; v < n; ++v)
            if (comp[static_cast<std::size_t>(v)] == c) candidate.set(v);
        BlueSet f1 = maximal_fort(g, candidate);
        if (auto pair = complete_pair(f1)) return pair;
    }
    for (int v = 0; v < n; ++v) {
        auto grown = detail::grow_fort(g, v);
        if (!grown) continue;
        if (auto pair = complete_pair(*grown)) return pair;
    }
    return std::nullopt;
}

/// Multiplies every incoming weight of v by lambda > 0. The dynamics only see
/// relative incoming weights, so this never changes the process.
inline WeightedDigraph scale_incoming(const WeightedDigraph& g, VertexId v, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("scale_incoming: lambda must be positive");
    std::vector<EdgeSpec> edges = g.edge_list();
    for (EdgeSpec& e : edges)
        if (e.to == v) e.weight *= lambda;
    return WeightedDigraph(g.order(), edges, g.labels());
}

/// True iff every vertex has all of its (positive) incoming weights equal, in
/// which case the weighted process coincides with the unweighted one.
inline bool is_effectively_unweighted(const WeightedDigraph& g) {
    for (int v = 0; v < g.order(); ++v) {
        auto arcs = g.in_arcs(v);
        for (const auto& arc : arcs)
            if (arc.weight != arcs.front().weight) return false;
    }
    return true;
}

}  // namespace rzf

#endif  // RZF_GRAPH_HPP
