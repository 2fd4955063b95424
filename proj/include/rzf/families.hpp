#ifndef RZF_FAMILIES_HPP
#define RZF_FAMILIES_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rzf/exact.hpp"
#include "rzf/graph.hpp"
#include "rzf/rng.hpp"

namespace rzf {

enum class FamilyKind {
    unipath,
    bipath,
    unicycle,
    bicycle,
    star,
    weighted_star,
    spider,
    sun,
    complete,
    complete_bipartite,
    kary_tree_uni,
    kary_tree_bi,
    arborescence,
    quad_construction,
    maxdeg_construction,
    weight_construction,
    fort_weighting,
    join_paths,
    edge_join_sharp,
};

/// Parameters for one generated instance. Field use is per kind; the canonical
/// vertex numbering of every generator is documented at its builder.
struct FamilySpec {
    FamilyKind kind = FamilyKind::unipath;
    int n = 0;                     // order / leg length / depth
    int k = 0;                     // legs, arity, blue-arc length, path count
    int m = 0;                     // leaves; quad/edge-join size parameter
    int d = 0;                     // degree parameter
    int side_a = 0, side_b = 0;    // complete_bipartite part sizes
    int start_leaf = 1;            // weighted_star: starting leaf (1-based)
    double w = 1.0;                // minimum-weight / join edge weight
    double p = 1.0, q = 1.0;       // cycle weights (clockwise / counterclockwise)
    double fort_target = 0.0;      // fort_weighting: requested lower bound
    bool weighted = false;         // edge_join_sharp: weighted variant
    std::vector<double> leaf_in;   // weighted_star a_i (leaf -> center)
    std::vector<double> leaf_out;  // weighted_star b_i (center -> leaf)
    std::vector<double> fwd, bwd;  // bipath edge weights
    std::vector<int> lengths;      // join_paths leg lengths
    std::uint64_t seed = 1;        // arborescence shape
};

enum class OracleKind { none, exact, lower_bound, upper_bound, band };

struct FamilyOracle {
    OracleKind kind = OracleKind::none;
    double value = 0.0;       // exact or one-sided bound
    double low = 0.0, high = 0.0;  // band endpoints
};

struct GeneratedGraph {
    WeightedDigraph graph;
    BlueSet start;
    FamilyOracle oracle;
};

enum class StartRole { canonical, center, leaf, root, left_end, right_end };

/// Expected absorption time of the one-dimensional blue-count chain that the
/// complete bidirected graph reduces to: with s of n vertices blue, each white
/// vertex independently succeeds with probability s/(n-1) per round.
inline EptValue complete_graph_chain_ept(int n) {
    if (n < 2) throw std::invalid_argument("complete_graph_chain_ept: order must be at least 2");
    std::vector<double> t(static_cast<std::size_t>(n + 1), 0.0);
    for (int s = n - 1; s >= 1; --s) {
        const double p = static_cast<double>(s) / static_cast<double>(n - 1);
        const int whites = n - s;
        // binomial transition over the number of simultaneous successes
        double acc = 0.0;
        double coeff = 1.0;
        for (int j = 1; j <= whites; ++j) {
            coeff = coeff * static_cast<double>(whites - j + 1) / static_cast<double>(j);
            acc += coeff * std::pow(p, j) * std::pow(1.0 - p, whites - j) *
                   t[static_cast<std::size_t>(s + j)];
        }
        const double stay = std::pow(1.0 - p, whites);
        t[static_cast<std::size_t>(s)] = (1.0 + acc) / (1.0 - stay);
    }
    return EptValue::finite(t[1]);
}

/// Bracket for the mean of the maximum of n independent Geom(p) variables:
/// [H_n / ln(1/(1-p)), 1 + H_n / ln(1/(1-p))].
inline std::pair<double, double> max_geometric_expectation_bounds(int n, double p) {
    if (n < 1) throw std::invalid_argument("max_geometric_expectation_bounds: n must be >= 1");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("max_geometric_expectation_bounds: p must lie in (0,1)");
    double harmonic = 0.0;
    for (int j = 1; j <= n; ++j) harmonic += 1.0 / static_cast<double>(j);
    const double low = harmonic / -std::log1p(-p);
    return {low, low + 1.0};
}

namespace detail {

inline void add_bidirected(std::vector<EdgeSpec>& edges, VertexId u, VertexId v, double w = 1.0) {
    edges.push_back({u, v, w});
    edges.push_back({v, u, w});
}

inline double harmonic_number(double x) {
    if (x <= 1e6) {
        double h = 0.0;
        for (long long j = 1; j <= static_cast<long long>(x); ++j)
            h += 1.0 / static_cast<double>(j);
        return h;
    }
    constexpr double euler_gamma = 0.57721566490153286;
    return std::log(x) + euler_gamma + 0.5 / x;
}

[[noreturn]] inline void reject(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace detail

/// Builds the requested family instance with its canonical start set and the
/// oracle value the instance is known to satisfy.
///
/// Canonical numbering: paths/cycles left to right (cycle index modulo n);
/// stars and spiders put the center at 0 with leaves/legs consecutive;
/// trees are numbered breadth-first from the root 0; the two-block
/// constructions keep the driving chain first.
inline GeneratedGraph generate(const FamilySpec& spec) {
    using detail::add_bidirected;
    using detail::reject;
    std::vector<EdgeSpec> edges;
    switch (spec.kind) {
        case FamilyKind::unipath: {
            if (spec.n < 1) reject("unipath: order must be >= 1");
            for (int i = 0; i + 1 < spec.n; ++i) edges.push_back({i, i + 1, 1.0});
            return {WeightedDigraph(spec.n, edges), BlueSet::of(spec.n, {0}),
                    {OracleKind::exact, static_cast<double>(spec.n - 1)}};
        }
        case FamilyKind::bipath: {
            if (spec.n < 2) reject("bipath: order must be >= 2");
            std::vector<double> fwd = spec.fwd, bwd = spec.bwd;
            if (fwd.empty()) fwd.assign(static_cast<std::size_t>(spec.n - 1), 1.0);
            if (bwd.empty()) bwd.assign(static_cast<std::size_t>(spec.n - 1), 1.0);
            if (static_cast<int>(fwd.size()) != spec.n - 1 ||
                static_cast<int>(bwd.size()) != spec.n - 1)
                reject("bipath: need one weight per edge and direction");
            for (double x : fwd)
                if (!(x > 0.0)) reject("bipath: forward weights must be positive");
            for (double x : bwd)
                if (!(x > 0.0)) reject("bipath: backward weights must be positive");
            for (int i = 0; i + 1 < spec.n; ++i) {
                edges.push_back({i, i + 1, fwd[static_cast<std::size_t>(i)]});
                edges.push_back({i + 1, i, bwd[static_cast<std::size_t>(i)]});
            }
            double total = 1.0;
            for (int t = 1; t <= spec.n - 2; ++t)
                total += (fwd[static_cast<std::size_t>(t - 1)] + bwd[static_cast<std::size_t>(t)]) /
                         fwd[static_cast<std::size_t>(t - 1)];
            return {WeightedDigraph(spec.n, edges), BlueSet::of(spec.n, {0}),
                    {OracleKind::exact, total}};
        }
        case FamilyKind::unicycle: {
            if (spec.n < 2) reject("unicycle: order must be >= 2");
            for (int i = 0; i < spec.n; ++i) edges.push_back({i, (i + 1) % spec.n, 1.0});
            return {WeightedDigraph(spec.n, edges), BlueSet::of(spec.n, {0}),
                    {OracleKind::exact, static_cast<double>(spec.n - 1)}};
        }
        case FamilyKind::bicycle: {
            if (spec.n < 3) reject("bicycle: order must be >= 3");
            if (!(spec.p > 0.0 && spec.q > 0.0)) reject("bicycle: weights must be positive");
            const int arc = spec.k > 0 ? spec.k : 1;
            if (arc > spec.n) reject("bicycle: initial arc longer than the cycle");
            for (int i = 0; i < spec.n; ++i) {
                edges.push_back({i, (i + 1) % spec.n, spec.p});
                edges.push_back({(i + 1) % spec.n, i, spec.q});
            }
            BlueSet start(spec.n);
            for (int i = 0; i < arc; ++i) start.set(i);
            return {WeightedDigraph(spec.n, edges), start,
                    {OracleKind::exact, static_cast<double>(spec.n - arc)}};
        }
        case FamilyKind::star: {
            if (spec.m < 1) reject("star: need at least one leaf");
            const int n = spec.m + 1;
            for (int leaf = 1; leaf <= spec.m; ++leaf) add_bidirected(edges, 0, leaf);
            // m + 1 needs a leaf left to color after the center; one leaf means
            // the center is the last vertex
            const double oracle = spec.m == 1 ? 1.0 : static_cast<double>(spec.m + 1);
            return {WeightedDigraph(n, edges), BlueSet::of(n, {1}),
                    {OracleKind::exact, oracle}};
        }
        case FamilyKind::weighted_star: {
            const int m = static_cast<int>(spec.leaf_in.size());
            if (m < 1) reject("weighted_star: need leaf weights");
            std::vector<double> out = spec.leaf_out;
            if (out.empty()) out.assign(static_cast<std::size_t>(m), 1.0);
            if (static_cast<int>(out.size()) != m)
                reject("weighted_star: leaf_out size must match leaf_in");
            if (spec.start_leaf < 1 || spec.start_leaf > m)
                reject("weighted_star: start leaf out of range");
            double sum = 0.0;
            for (double x : spec.leaf_in) {
                if (!(x > 0.0)) reject("weighted_star: weights must be positive");
                sum += x;
            }
            for (double x : out)
                if (!(x > 0.0)) reject("weighted_star: weights must be positive");
            const int n = m + 1;
            for (int leaf = 1; leaf <= m; ++leaf) {
                edges.push_back({leaf, 0, spec.leaf_in[static_cast<std::size_t>(leaf - 1)]});
                edges.push_back({0, leaf, out[static_cast<std::size_t>(leaf - 1)]});
            }
            const double finish = m == 1 ? 0.0 : 1.0;  // no white leaf remains when m = 1
            const double oracle =
                finish + sum / spec.leaf_in[static_cast<std::size_t>(spec.start_leaf - 1)];
            return {WeightedDigraph(n, edges), BlueSet::of(n, {spec.start_leaf}),
                    {OracleKind::exact, oracle}};
        }
        case FamilyKind::spider: {
            if (spec.k < 1) reject("spider: need at least one leg");
            if (spec.n < 1) reject("spider: legs need at least one vertex");
            const int n = 1 + spec.k * spec.n;
            for (int leg = 0; leg < spec.k; ++leg) {
                int prev = 0;
                for (int j = 0; j < spec.n; ++j) {
                    const int v = 1 + leg * spec.n + j;
                    add_bidirected(edges, prev, v);
                    prev = v;
                }
            }
            const double low = 2.0 * spec.n - 1.0;
            const double high =
                low + 10.0 * std::sqrt(static_cast<double>(spec.k) * spec.n);
            return {WeightedDigraph(n, edges), BlueSet::of(n, {0}),
                    {OracleKind::band, 0.0, low, high}};
        }
        case FamilyKind::sun: {
            if (spec.n < 3) reject("sun: needs a cycle of at least 3 centers");
            const int n = 2 * spec.n;
            for (int i = 0; i < spec.n; ++i) {
                add_bidirected(edges, i, (i + 1) % spec.n);
                add_bidirected(edges, i, spec.n + i);
            }
            return {WeightedDigraph(n, edges), BlueSet::of(n, {0}),
                    {OracleKind::exact, 1.0 + 1.5 * (spec.n - 1)}};
        }
        case FamilyKind::complete: {
            if (spec.n < 2) reject("complete: order must be >= 2");
            for (int u = 0; u < spec.n; ++u)
                for (int v = u + 1; v < spec.n; ++v) add_bidirected(edges, u, v);
            return {WeightedDigraph(spec.n, edges), BlueSet::of(spec.n, {0}),
                    {OracleKind::exact, complete_graph_chain_ept(spec.n).value}};
        }
        case FamilyKind::complete_bipartite: {
            if (spec.side_a < 1 || spec.side_b < 1)
                reject("complete_bipartite: both part sizes must be >= 1");
            const int n = spec.side_a + spec.side_b;
            for (int u = 0; u < spec.side_a; ++u)
                for (int v = spec.side_a; v < n; ++v) add_bidirected(edges, u, v);
            return {WeightedDigraph(n, edges), BlueSet::of(n, {0}), {}};
        }
        case FamilyKind::kary_tree_uni:
        case FamilyKind::kary_tree_bi: {
            if (spec.k < 1) reject("k-ary tree: arity must be >= 1");
            if (spec.n < 0) reject("k-ary tree: depth must be >= 0");
            std::vector<int> layer{0};
            int next = 1;
            for (int depth = 0; depth < spec.n; ++depth) {
                std::vector<int> children;
                for (int parent : layer)
                    for (int c = 0; c < spec.k; ++c) {
                        if (spec.kind == FamilyKind::kary_tree_uni)
                            edges.push_back({parent, next, 1.0});
                        else
                            add_bidirected(edges, parent, next);
                        children.push_back(next++);
                    }
                layer = std::move(children);
            }
            if (spec.kind == FamilyKind::kary_tree_uni)
                return {WeightedDigraph(next, edges), BlueSet::of(next, {0}),
                        {OracleKind::exact, static_cast<double>(spec.n)}};
            // Layer by layer: each layer is done within the expected maximum of
            // that many Geom(1/(k+1)) waits once the previous layer is blue.
            double bound = 0.0;
            const double rate = -std::log1p(-1.0 / (spec.k + 1.0));
            for (int i = 1; i <= spec.n; ++i)
                bound += 1.0 + detail::harmonic_number(std::pow(spec.k, i)) / rate;
            return {WeightedDigraph(next, edges), BlueSet::of(next, {0}),
                    {OracleKind::upper_bound, bound}};
        }
        case FamilyKind::arborescence: {
            if (spec.n < 1) reject("arborescence: order must be >= 1");
            SplitMix64 rng(mix64(spec.seed));
            std::vector<int> depth(static_cast<std::size_t>(spec.n), 0);
            int ecc = 0;
            for (int v = 1; v < spec.n; ++v) {
                const int parent = static_cast<int>(rng.next() % static_cast<std::uint64_t>(v));
                const double w = 0.5 + 1.5 * rng.uniform();
                edges.push_back({parent, v, w});
                depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(parent)] + 1;
                ecc = std::max(ecc, depth[static_cast<std::size_t>(v)]);
            }
            return {WeightedDigraph(spec.n, edges), BlueSet::of(spec.n, {0}),
                    {OracleKind::exact, static_cast<double>(ecc)}};
        }
        case FamilyKind::quad_construction: {
            if (spec.m < 1) reject("quad_construction: size parameter must be >= 1");
            // b_i at index i-1 (i = 1..m+1), a_j at index m+j (j = 1..m)
            const int n = 2 * spec.m + 1;
            for (int j = 1; j <= spec.m; ++j)
                for (int i = j; i <= spec.m + 1; ++i) edges.push_back({i - 1, spec.m + j, 1.0});
            for (int i = 1; i <= spec.m; ++i) edges.push_back({spec.m + i, i, 1.0});
            const double oracle =
                spec.m + (spec.m + 1.0) * (spec.m + 2.0) / 2.0 - 1.0;
            return {WeightedDigraph(n, edges), BlueSet::of(n, {0}),
                    {OracleKind::exact, oracle}};
        }
        case FamilyKind::maxdeg_construction: {
            if (spec.d < 1) reject("maxdeg_construction: degree must be >= 1");
            if (spec.n < spec.d + 1) reject("maxdeg_construction: order must exceed the degree");
            for (int i = 0; i + 1 < spec.n; ++i) edges.push_back({i, i + 1, 1.0});
            for (int j = 1; j <= spec.d - 1; ++j)
                for (int i = 0; i + j < spec.n; ++i) edges.push_back({i + j, i, 1.0});
            const double oracle = static_cast<double>(spec.d) * spec.n -
                                  spec.d * (spec.d + 1.0) / 2.0;
            return {WeightedDigraph(spec.n, edges), BlueSet::of(spec.n, {0}),
                    {OracleKind::exact, oracle}};
        }
        case FamilyKind::weight_construction: {
            if (spec.n < 2) reject("weight_construction: order must be >= 2");
            if (!(spec.w > 0.0 && spec.w <= 1.0))
                reject("weight_construction: weight parameter must lie in (0, 1]");
            for (int i = 0; i + 2 < spec.n; ++i) edges.push_back({i, i + 1, spec.w});
            edges.push_back({spec.n - 2, spec.n - 1, 1.0});
            if (spec.w < 1.0)
                for (int t = 1; t <= spec.n - 2; ++t) edges.push_back({t + 1, t, 1.0 - spec.w});
            return {WeightedDigraph(spec.n, edges), BlueSet::of(spec.n, {0}),
                    {OracleKind::exact, 1.0 + (spec.n - 2.0) / spec.w}};
        }
        case FamilyKind::fort_weighting: {
            if (!(spec.fort_target > 0.0)) reject("fort_weighting: target must be positive");
            // two bidirected triangles {0,1,2} and {3,4,5} joined by 2<->3;
            // every edge entering the far triangle gets the small weight
            const int n = 6;
            const double eps = 1.0 / (2.0 * spec.fort_target * n * n);
            add_bidirected(edges, 0, 1);
            add_bidirected(edges, 1, 2);
            add_bidirected(edges, 2, 0);
            add_bidirected(edges, 3, 4);
            add_bidirected(edges, 4, 5);
            add_bidirected(edges, 5, 3);
            edges.push_back({2, 3, eps});
            edges.push_back({3, 2, 1.0});
            return {WeightedDigraph(n, edges), BlueSet::of(n, {0}),
                    {OracleKind::lower_bound, spec.fort_target}};
        }
        case FamilyKind::join_paths: {
            std::vector<int> lengths = spec.lengths;
            if (lengths.empty() && spec.k >= 1 && spec.n >= 1)
                lengths.assign(static_cast<std::size_t>(spec.k), spec.n);
            if (lengths.empty()) reject("join_paths: need leg lengths");
            int longest = 0;
            int n = 1;
            for (int len : lengths) {
                if (len < 1) reject("join_paths: legs need at least one vertex");
                longest = std::max(longest, len);
                n += len;
            }
            int next = 1;
            for (int len : lengths) {
                edges.push_back({0, next, 1.0});  // hub feeds the leg head only
                for (int j = 0; j + 1 < len; ++j) {
                    add_bidirected(edges, next + j, next + j + 1);
                }
                next += len;
            }
            const double low = 2.0 * longest;
            const double high = low + 10.0 * std::sqrt(static_cast<double>(longest));
            return {WeightedDigraph(n, edges), BlueSet::of(n, {0}),
                    {OracleKind::band, 0.0, low, high}};
        }
        case FamilyKind::edge_join_sharp: {
            if (spec.m < 1 || spec.n < 1) reject("edge_join_sharp: path parts must be >= 1");
            if (spec.d < 0) reject("edge_join_sharp: indegree parameter must be >= 0");
            if (!(spec.w > 0.0)) reject("edge_join_sharp: join weight must be positive");
            // left chain x=0..u=m, right chain v=m+1..m+n+1
            const int v0 = spec.m + 1;
            const int n = spec.m + spec.n + 2;
            for (int i = 0; i < spec.m; ++i) edges.push_back({i, i + 1, 1.0});
            for (int i = 0; i < spec.n; ++i) edges.push_back({v0 + i, v0 + i + 1, 1.0});
            double oracle;
            if (spec.weighted) {
                // the in-weight at the junction comes from one heavy back edge
                if (spec.n < 1) reject("edge_join_sharp: weighted variant needs n >= 1");
                if (spec.d > 0) edges.push_back({v0 + 1, v0, static_cast<double>(spec.d)});
                edges.push_back({spec.m, v0, spec.w});
                oracle = spec.m + (spec.d + spec.w) / spec.w + spec.n;
            } else {
                if (spec.d > spec.n)
                    reject("edge_join_sharp: needs more right-path vertices than back edges");
                for (int j = 0; j < spec.d; ++j)
                    edges.push_back({v0 + spec.n - j, v0, 1.0});
                edges.push_back({spec.m, v0, 1.0});
                oracle = spec.m + spec.d + 1.0 + spec.n;
            }
            return {WeightedDigraph(n, edges), BlueSet::of(n, {0}),
                    {OracleKind::exact, oracle}};
        }
    }
    detail::reject("unknown family kind");
}

/// Closed-form value (or band) for a family and a start role, straight from
/// the per-family formulas; errors out on combinations without one.
inline FamilyOracle oracle_ept(const FamilySpec& spec, StartRole role = StartRole::canonical) {
    using detail::reject;
    auto unsupported = [&]() -> FamilyOracle {
        reject("oracle_ept: no closed form for this (family, start role) pair");
    };
    switch (spec.kind) {
        case FamilyKind::unipath:
            if (role == StartRole::canonical || role == StartRole::left_end ||
                role == StartRole::root)
                return {OracleKind::exact, static_cast<double>(spec.n - 1)};
            return unsupported();
        case FamilyKind::bipath: {
            if (role == StartRole::canonical || role == StartRole::left_end ||
                role == StartRole::right_end) {
                std::vector<double> fwd = spec.fwd, bwd = spec.bwd;
                if (fwd.empty()) fwd.assign(static_cast<std::size_t>(spec.n - 1), 1.0);
                if (bwd.empty()) bwd.assign(static_cast<std::size_t>(spec.n - 1), 1.0);
                double total = 1.0;
                for (int t = 1; t <= spec.n - 2; ++t) {
                    const double into = role == StartRole::right_end
                                            ? bwd[static_cast<std::size_t>(t)]
                                            : fwd[static_cast<std::size_t>(t - 1)];
                    total += (fwd[static_cast<std::size_t>(t - 1)] +
                              bwd[static_cast<std::size_t>(t)]) /
                             into;
                }
                return {OracleKind::exact, total};
            }
            return unsupported();
        }
        case FamilyKind::unicycle:
            return {OracleKind::exact, static_cast<double>(spec.n - 1)};
        case FamilyKind::bicycle:
            return {OracleKind::exact, static_cast<double>(spec.n - std::max(spec.k, 1))};
        case FamilyKind::star:
            if (role == StartRole::center) return {OracleKind::exact, 1.0};
            return {OracleKind::exact, spec.m == 1 ? 1.0 : static_cast<double>(spec.m + 1)};
        case FamilyKind::weighted_star: {
            if (role == StartRole::center) return {OracleKind::exact, 1.0};
            double sum = 0.0;
            for (double x : spec.leaf_in) sum += x;
            const double finish = spec.leaf_in.size() == 1 ? 0.0 : 1.0;
            return {OracleKind::exact,
                    finish + sum / spec.leaf_in[static_cast<std::size_t>(spec.start_leaf - 1)]};
        }
        case FamilyKind::spider: {
            const double low = 2.0 * spec.n - 1.0;
            return {OracleKind::band, 0.0, low,
                    low + 10.0 * std::sqrt(static_cast<double>(spec.k) * spec.n)};
        }
        case FamilyKind::sun:
            return {OracleKind::exact, 1.0 + 1.5 * (spec.n - 1)};
        case FamilyKind::complete:
            return {OracleKind::exact, complete_graph_chain_ept(spec.n).value};
        case FamilyKind::kary_tree_uni:
            return {OracleKind::exact, static_cast<double>(spec.n)};
        case FamilyKind::kary_tree_bi:
            return generate(spec).oracle;
        case FamilyKind::arborescence:
            if (role == StartRole::canonical || role == StartRole::root)
                return generate(spec).oracle;  // eccentricity of the root
            return unsupported();
        case FamilyKind::quad_construction:
            return {OracleKind::exact, spec.m + (spec.m + 1.0) * (spec.m + 2.0) / 2.0 - 1.0};
        case FamilyKind::maxdeg_construction:
            return {OracleKind::exact,
                    static_cast<double>(spec.d) * spec.n - spec.d * (spec.d + 1.0) / 2.0};
        case FamilyKind::weight_construction:
            return {OracleKind::exact, 1.0 + (spec.n - 2.0) / spec.w};
        case FamilyKind::fort_weighting:
            return {OracleKind::lower_bound, spec.fort_target};
        case FamilyKind::join_paths:
            return generate(spec).oracle;
        case FamilyKind::edge_join_sharp:
            return generate(spec).oracle;
        case FamilyKind::complete_bipartite:
            return unsupported();
    }
    return unsupported();
}

/// Closed form for a weighted star started from a set of leaves (1-based ids).
inline EptValue weighted_star_set_ept(const std::vector<double>& leaf_in,
                                      const std::vector<int>& start_leaves) {
    if (start_leaves.empty())
        throw std::invalid_argument("weighted_star_set_ept: start set of leaves is empty");
    double sum = 0.0, in_start = 0.0;
    std::vector<char> seen(leaf_in.size(), 0);
    for (int leaf : start_leaves) {
        if (leaf < 1 || leaf > static_cast<int>(leaf_in.size()))
            throw std::invalid_argument("weighted_star_set_ept: leaf index out of range");
        seen[static_cast<std::size_t>(leaf - 1)] = 1;
    }
    bool all_leaves = true;
    for (std::size_t i = 0; i < leaf_in.size(); ++i) {
        sum += leaf_in[i];
        if (seen[i]) in_start += leaf_in[i];
        else all_leaves = false;
    }
    // the final +1 colors the leaves that remain white once the center flips
    return EptValue::finite((all_leaves ? 0.0 : 1.0) + sum / in_start);
}

/// Exact singleton values from both sides of a complete bipartite graph plus
/// the comparison the start-vertex conjecture predicts. Empirical evidence
/// only; nothing here asserts the conjecture.
struct BipartiteProbe {
    EptValue ept_u;  // start in the larger part
    EptValue ept_v;  // start in the smaller part
    bool conjecture_holds = false;
};

inline BipartiteProbe bipartite_conjecture_probe(int a, int b, int limit = kDefaultDpLimit) {
    if (!(a > b && b >= 1))
        throw std::invalid_argument("bipartite_conjecture_probe: requires a > b >= 1");
    if (a + b > limit)
        throw std::invalid_argument("bipartite_conjecture_probe: order exceeds the DP limit");
    FamilySpec spec;
    spec.kind = FamilyKind::complete_bipartite;
    spec.side_a = a;
    spec.side_b = b;
    GeneratedGraph gen = generate(spec);
    BipartiteProbe probe;
    probe.ept_u = exact_ept(gen.graph, BlueSet::of(a + b, {0}), limit);
    probe.ept_v = exact_ept(gen.graph, BlueSet::of(a + b, {a}), limit);
    probe.conjecture_holds = probe.ept_v.value < probe.ept_u.value;
    return probe;
}

inline const char* family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::unipath: return "unipath";
        case FamilyKind::bipath: return "bipath";
        case FamilyKind::unicycle: return "unicycle";
        case FamilyKind::bicycle: return "bicycle";
        case FamilyKind::star: return "star";
        case FamilyKind::weighted_star: return "weighted_star";
        case FamilyKind::spider: return "spider";
        case FamilyKind::sun: return "sun";
        case FamilyKind::complete: return "complete";
        case FamilyKind::complete_bipartite: return "complete_bipartite";
        case FamilyKind::kary_tree_uni: return "kary_tree_uni";
        case FamilyKind::kary_tree_bi: return "kary_tree_bi";
        case FamilyKind::arborescence: return "arborescence";
        case FamilyKind::quad_construction: return "quad_construction";
        case FamilyKind::maxdeg_construction: return "maxdeg_construction";
        case FamilyKind::weight_construction: return "weight_construction";
        case FamilyKind::fort_weighting: return "fort_weighting";
        case FamilyKind::join_paths: return "join_paths";
        case FamilyKind::edge_join_sharp: return "edge_join_sharp";
    }
    return "?";
}

/// Parses the flat key=value family format used by config files and the CLI,
/// e.g. "kind=bicycle n=7 k=2 p=1 q=2". List values are comma separated.
inline FamilySpec parse_family_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream stream(text);
    std::string token;
    while (stream >> token) {
        if (token.empty() || token[0] == '#') {
            std::string rest;
            std::getline(stream, rest);
            continue;
        }
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("family spec: expected key=value, got '" + token + "'");
        kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
    if (!kv.count("kind")) throw std::invalid_argument("family spec: missing kind=...");

    FamilySpec spec;
    const std::string kind = kv.at("kind");
    bool found = false;
    for (int i = 0; i <= static_cast<int>(FamilyKind::edge_join_sharp); ++i)
        if (kind == family_kind_name(static_cast<FamilyKind>(i))) {
            spec.kind = static_cast<FamilyKind>(i);
            found = true;
            break;
        }
    if (!found) throw std::invalid_argument("family spec: unknown kind '" + kind + "'");
    kv.erase("kind");

    auto to_int = [](const std::string& s) { return std::stoi(s); };
    auto to_double = [](const std::string& s) { return std::stod(s); };
    auto to_doubles = [](const std::string& s) {
        std::vector<double> out;
        std::istringstream list(s);
        std::string item;
        while (std::getline(list, item, ',')) out.push_back(std::stod(item));
        return out;
    };
    auto to_ints = [](const std::string& s) {
        std::vector<int> out;
        std::istringstream list(s);
        std::string item;
        while (std::getline(list, item, ',')) out.push_back(std::stoi(item));
        return out;
    };

    for (const auto& [key, value] : kv) {
        if (key == "n") spec.n = to_int(value);
        else if (key == "k") spec.k = to_int(value);
        else if (key == "m") spec.m = to_int(value);
        else if (key == "d") spec.d = to_int(value);
        else if (key == "a") {
            if (spec.kind == FamilyKind::complete_bipartite) spec.side_a = to_int(value);
            else spec.leaf_in = to_doubles(value);
        } else if (key == "b") {
            if (spec.kind == FamilyKind::complete_bipartite) spec.side_b = to_int(value);
            else spec.leaf_out = to_doubles(value);
        } else if (key == "start_leaf") spec.start_leaf = to_int(value);
        else if (key == "w") spec.w = to_double(value);
        else if (key == "p") spec.p = to_double(value);
        else if (key == "q") spec.q = to_double(value);
        else if (key == "target") spec.fort_target = to_double(value);
        else if (key == "weighted") spec.weighted = to_int(value) != 0;
        else if (key == "fwd") spec.fwd = to_doubles(value);
        else if (key == "bwd") spec.bwd = to_doubles(value);
        else if (key == "lengths") spec.lengths = to_ints(value);
        else if (key == "seed") spec.seed = std::stoull(value);
        else throw std::invalid_argument("family spec: unknown key '" + key + "'");
    }
    return spec;
}

}  // namespace rzf

#endif  // RZF_FAMILIES_HPP
