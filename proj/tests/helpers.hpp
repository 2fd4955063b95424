#ifndef RZF_TEST_HELPERS_HPP
#define RZF_TEST_HELPERS_HPP

// Shared test utilities: independent oracles (brute-force enumeration, naive
// stepping) and seeded random instances. Everything here must stay
// independent of the implementation paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "rzf/graph.hpp"
#include "rzf/process.hpp"
#include "rzf/rng.hpp"

namespace rzf_test {

/// Calls fn(graph) for every labeled digraph on n vertices without self-loops.
inline void for_each_digraph(int n, const std::function<void(const rzf::WeightedDigraph&)>& fn) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) slots.emplace_back(u, v);
    const std::uint32_t total = std::uint32_t{1} << slots.size();
    for (std::uint32_t bits = 0; bits < total; ++bits) {
        std::vector<rzf::EdgeSpec> edges;
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (bits >> s & 1) edges.push_back({slots[s].first, slots[s].second, 1.0});
        fn(rzf::WeightedDigraph(n, edges));
    }
}

/// Random digraph where vertex 0 reaches everything (a random out-tree plus
/// random extra arcs), optionally with random weights in [0.25, 2.5].
inline rzf::WeightedDigraph random_reachable_graph(int n, rzf::SplitMix64& rng,
                                                   bool weighted = true,
                                                   double density = 0.35) {
    std::vector<rzf::EdgeSpec> edges;
    std::vector<std::vector<char>> used(static_cast<std::size_t>(n),
                                        std::vector<char>(static_cast<std::size_t>(n), 0));
    auto weight = [&]() { return weighted ? 0.25 + 2.25 * rng.uniform() : 1.0; };
    for (int v = 1; v < n; ++v) {
        const int parent = static_cast<int>(rng.next() % static_cast<std::uint64_t>(v));
        used[static_cast<std::size_t>(parent)][static_cast<std::size_t>(v)] = 1;
        edges.push_back({parent, v, weight()});
    }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v || used[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) continue;
            if (rng.uniform() < density) edges.push_back({u, v, weight()});
        }
    return rzf::WeightedDigraph(n, edges);
}

/// Brute-force check that every simple directed cycle passes through v, by
/// enumerating all simple cycles with a DFS over vertex sequences.
inline bool brute_every_cycle_through(const rzf::WeightedDigraph& g, int v) {
    const int n = g.order();
    for (int u = 0; u < n; ++u)
        for (const auto& arc : g.out_arcs(u))
            if (arc.vertex == u && u != v) return false;  // self-loop misses v
    std::vector<char> on_path(static_cast<std::size_t>(n), 0);
    std::vector<int> path;
    bool found_missing_cycle = false;
    std::function<void(int, int)> dfs = [&](int start, int cur) {
        if (found_missing_cycle) return;
        for (const auto& arc : g.out_arcs(cur)) {
            const int next = arc.vertex;
            if (next == start) {
                // cycle start..cur closes; it avoids v unless v is on path
                bool through_v = false;
                for (int x : path)
                    if (x == v) through_v = true;
                if (!through_v) found_missing_cycle = true;
                continue;
            }
            if (next < start) continue;  // canonical: smallest vertex first
            if (on_path[static_cast<std::size_t>(next)]) continue;
            on_path[static_cast<std::size_t>(next)] = 1;
            path.push_back(next);
            dfs(start, next);
            path.pop_back();
            on_path[static_cast<std::size_t>(next)] = 0;
        }
    };
    for (int start = 0; start < n && !found_missing_cycle; ++start) {
        on_path.assign(static_cast<std::size_t>(n), 0);
        on_path[static_cast<std::size_t>(start)] = 1;
        path.assign(1, start);
        dfs(start, start);
    }
    return !found_missing_cycle;
}

/// All-pairs reachability by brute-force repeated squaring of the boolean
/// adjacency, for small independent distance checks.
inline std::vector<std::vector<int>> brute_distances(const rzf::WeightedDigraph& g) {
    const int n = g.order();
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), inf));
    for (int v = 0; v < n; ++v) d[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 0;
    for (int u = 0; u < n; ++u)
        for (const auto& arc : g.out_arcs(u))
            if (arc.vertex != u)
                d[static_cast<std::size_t>(u)][static_cast<std::size_t>(arc.vertex)] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                        d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    return d;
}

/// Naive absorption run that repeatedly applies the public one-round step.
inline std::uint64_t naive_absorption_rounds(const rzf::WeightedDigraph& g,
                                             const rzf::BlueSet& start,
                                             const rzf::CounterRng& rng,
                                             std::uint64_t cap = 1u << 20) {
    rzf::BlueSet blue = start;
    std::uint64_t round = 0;
    while (!blue.all_set() && round < cap) {
        blue = rzf::step(g, blue, rng, round);
        ++round;
    }
    return round;
}

/// Two-sample chi-squared statistic over matched histogram bins (counts below
/// 5 expected merged into the previous bin). Returns (statistic, dof).
inline std::pair<double, int> chi_squared_two_sample(const std::vector<std::uint64_t>& h1,
                                                     const std::vector<std::uint64_t>& h2) {
    double n1 = 0, n2 = 0;
    for (std::uint64_t c : h1) n1 += static_cast<double>(c);
    for (std::uint64_t c : h2) n2 += static_cast<double>(c);
    const double k1 = std::sqrt(n2 / n1), k2 = std::sqrt(n1 / n2);
    double stat = 0.0;
    int bins = 0;
    double a_acc = 0, b_acc = 0;
    const std::size_t len = std::max(h1.size(), h2.size());
    for (std::size_t i = 0; i < len; ++i) {
        a_acc += i < h1.size() ? static_cast<double>(h1[i]) : 0.0;
        b_acc += i < h2.size() ? static_cast<double>(h2[i]) : 0.0;
        if (a_acc + b_acc < 10.0 && i + 1 < len) continue;  // merge sparse bins
        if (a_acc + b_acc > 0.0) {
            const double diff = k1 * a_acc - k2 * b_acc;
            stat += diff * diff / (a_acc + b_acc);
            ++bins;
        }
        a_acc = b_acc = 0;
    }
    return {stat, std::max(bins - 1, 1)};
}

/// Acklam's rational approximation to the standard normal quantile.
inline double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    if (p < plow) {
        const double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        const double q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    const double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

/// Upper chi-squared quantile via the Wilson-Hilferty cube approximation.
inline double chi_squared_quantile(int dof, double upper_tail) {
    const double z = normal_quantile(1.0 - upper_tail);
    const double k = static_cast<double>(dof);
    const double term = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * term * term * term;
}

}  // namespace rzf_test

#endif  // RZF_TEST_HELPERS_HPP
