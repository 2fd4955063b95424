#ifndef RZF_EXACT_HPP
#define RZF_EXACT_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rzf/graph.hpp"
#include "rzf/process.hpp"

namespace rzf {

/// Vertex-count limit for the subset-state solver. 2^22 table entries of 8
/// bytes is about 34 MiB, which is where the dense table stops being cheap.
inline constexpr int kDefaultDpLimit = 22;

/// A nonnegative expected propagation time, or an explicit infinity when the
/// all-blue state is unreachable.
struct EptValue {
    double value = std::numeric_limits<double>::infinity();

    static EptValue finite(double v) { return {v}; }
    static EptValue infinite() { return {std::numeric_limits<double>::infinity()}; }

    bool is_finite() const { return std::isfinite(value); }

    friend bool operator==(const EptValue&, const EptValue&) = default;
};

/// Expected remaining rounds for every dynamics-reachable state above the
/// start set.
struct HittingTable {
    int order = 0;
    /// (state mask, expected remaining rounds), masks are subsets of [0, order).
    std::vector<std::pair<std::uint32_t, double>> entries;

    double at_mask(std::uint32_t mask) const {
        for (const auto& [m, t] : entries)
            if (m == mask) return t;
        throw std::out_of_range("HittingTable: state not reachable");
    }

    double at(const BlueSet& state) const { return at_mask(state.mask32()); }
};

namespace detail {

inline void check_dp_size(const WeightedDigraph& g, const BlueSet& start, int limit) {
    if (start.universe() != g.order()) throw std::invalid_argument("exact_ept: universe mismatch");
    if (start.none()) throw std::invalid_argument("exact_ept: start set is empty");
    if (g.order() > limit) {
        const double mib = std::ldexp(8.0, g.order()) / (1024.0 * 1024.0);
        throw std::invalid_argument(
            "exact_ept: " + std::to_string(g.order()) + " vertices exceed the state-space limit " +
            std::to_string(limit) + " (dense table would take ~" +
            std::to_string(static_cast<long long>(mib + 1)) +
            " MiB); use Monte Carlo estimation (mc_ept) instead");
    }
}

/// Per-state transition structure: vertices forced with probability one are
/// folded in deterministically; the rest form the active boundary that subset
/// enumeration ranges over.
struct StateMoves {
    std::uint32_t ones = 0;
    std::vector<VertexId> actives;
    std::vector<double> probs;
};

inline void state_moves(const WeightedDigraph& g, std::uint32_t mask, StateMoves& out) {
    out.ones = 0;
    out.actives.clear();
    out.probs.clear();
    for (int w = 0; w < g.order(); ++w) {
        if (mask >> w & 1) continue;
        const double p = flip_probability(
            g, w, [&](VertexId u) { return (mask >> u & 1) != 0; });
        if (p >= 1.0)
            out.ones |= std::uint32_t{1} << w;
        else if (p > 0.0) {
            out.actives.push_back(w);
            out.probs.push_back(p);
        }
    }
}

/// Subset-state dynamic program over the states reachable from `start`.
/// Returns the dense table (indexed by mask, quiet NaN where unreachable) and
/// the list of reachable masks. Assumes finiteness was already established.
inline std::vector<std::uint32_t> solve_hitting_times(const WeightedDigraph& g,
                                                      std::uint32_t start_mask,
                                                      std::vector<double>& table) {
    const int n = g.order();
    const std::uint32_t full = (n == 32) ? 0xffffffffu : (std::uint32_t{1} << n) - 1;
    const std::size_t space = std::size_t{1} << n;

    // Forward closure of the successor relation.
    std::vector<char> reached(space, 0);
    std::vector<std::uint32_t> states;
    states.reserve(1024);
    states.push_back(start_mask);
    reached[start_mask] = 1;
    StateMoves moves;
    std::vector<std::uint32_t> spread;  // compressed active bit -> vertex bit
    for (std::size_t qi = 0; qi < states.size(); ++qi) {
        const std::uint32_t mask = states[qi];
        if (mask == full) continue;
        state_moves(g, mask, moves);
        const std::size_t k = moves.actives.size();
        spread.clear();
        for (VertexId v : moves.actives) spread.push_back(std::uint32_t{1} << v);
        const std::uint32_t base = mask | moves.ones;
        const std::uint32_t subsets = std::uint32_t{1} << k;
        for (std::uint32_t sub = 0; sub < subsets; ++sub) {
            std::uint32_t child = base;
            std::uint32_t rest = sub;
            while (rest) {
                const int bit = std::countr_zero(rest);
                rest &= rest - 1;
                child |= spread[static_cast<std::size_t>(bit)];
            }
            if (child != mask && !reached[child]) {
                reached[child] = 1;
                states.push_back(child);
            }
        }
    }

    // Process states by decreasing cardinality: every transition target of a
    // state is a strict superset, so its value is already final.
    std::vector<std::uint32_t> order(states);
    std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
        const int ca = std::popcount(a), cb = std::popcount(b);
        return ca != cb ? ca > cb : a < b;
    });

    table.assign(space, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> prod_p, prod_q;
    std::vector<std::uint32_t> child_bits;
    for (std::uint32_t mask : order) {
        if (mask == full) {
            table[mask] = 0.0;
            continue;
        }
        state_moves(g, mask, moves);
        const std::size_t k = moves.actives.size();
        const std::uint32_t base = mask | moves.ones;
        if (k == 0) {
            // deterministic move to base
            table[mask] = 1.0 + table[base];
            continue;
        }
        const std::uint32_t subsets = std::uint32_t{1} << k;
        prod_p.assign(subsets, 1.0);
        prod_q.assign(subsets, 1.0);
        child_bits.assign(subsets, 0);
        for (std::uint32_t sub = 1; sub < subsets; ++sub) {
            const std::uint32_t low = sub & (0u - sub);
            const int bit = std::countr_zero(low);
            prod_p[sub] = prod_p[sub ^ low] * moves.probs[static_cast<std::size_t>(bit)];
            prod_q[sub] = prod_q[sub ^ low] * (1.0 - moves.probs[static_cast<std::size_t>(bit)]);
            child_bits[sub] = child_bits[sub ^ low] |
                              (std::uint32_t{1} << moves.actives[static_cast<std::size_t>(bit)]);
        }
        const bool has_forced = moves.ones != 0;
        double acc = 0.0;
        for (std::uint32_t sub = 0; sub < subsets; ++sub) {
            const std::uint32_t child = base | child_bits[sub];
            if (child == mask) continue;  // stagnation, handled by the denominator
            acc += prod_p[sub] * prod_q[(subsets - 1) ^ sub] * table[child];
        }
        const double stay = has_forced ? 0.0 : prod_q[subsets - 1];
        table[mask] = (1.0 + acc) / (1.0 - stay);
    }
    return states;
}

}  // namespace detail

/// Exact expected propagation time from S, by dynamic programming over the
/// reachable subset states in decreasing-cardinality order.
inline EptValue exact_ept(const WeightedDigraph& g, const BlueSet& start,
                          int limit = kDefaultDpLimit) {
    detail::check_dp_size(g, start, limit);
    if (!is_finite_ept(g, start)) return EptValue::infinite();
    std::vector<double> table;
    detail::solve_hitting_times(g, start.mask32(), table);
    return EptValue::finite(table[start.mask32()]);
}

/// Full table of expected remaining rounds over the reachable states.
inline HittingTable hitting_table(const WeightedDigraph& g, const BlueSet& start,
                                  int limit = kDefaultDpLimit) {
    detail::check_dp_size(g, start, limit);
    if (!is_finite_ept(g, start))
        throw std::invalid_argument("hitting_table: expected propagation time is infinite");
    std::vector<double> table;
    std::vector<std::uint32_t> states = detail::solve_hitting_times(g, start.mask32(), table);
    HittingTable out;
    out.order = g.order();
    std::sort(states.begin(), states.end());
    for (std::uint32_t mask : states) out.entries.emplace_back(mask, table[mask]);
    return out;
}

/// exact_ept from every singleton start.
inline std::vector<EptValue> singleton_profile(const WeightedDigraph& g,
                                               int limit = kDefaultDpLimit) {
    std::vector<EptValue> out;
    out.reserve(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v)
        out.push_back(exact_ept(g, BlueSet::of(g.order(), {v}), limit));
    return out;
}

/// Minimum singleton value together with every minimizer (ties within 1e-9).
inline std::pair<EptValue, std::vector<VertexId>> min_ept(const WeightedDigraph& g,
                                                          int limit = kDefaultDpLimit) {
    const std::vector<EptValue> profile = singleton_profile(g, limit);
    EptValue best = EptValue::infinite();
    for (const EptValue& e : profile)
        if (e.is_finite() && (!best.is_finite() || e.value < best.value)) best = e;
    std::vector<VertexId> argmins;
    if (best.is_finite()) {
        for (int v = 0; v < g.order(); ++v)
            if (profile[static_cast<std::size_t>(v)].is_finite() &&
                profile[static_cast<std::size_t>(v)].value <= best.value + 1e-9)
                argmins.push_back(v);
    }
    return {best, argmins};
}

}  // namespace rzf

#endif  // RZF_EXACT_HPP
