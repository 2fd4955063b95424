#ifndef RZF_BOUNDS_HPP
#define RZF_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rzf/exact.hpp"
#include "rzf/graph.hpp"

namespace rzf {

enum class BoundKind { upper, lower, equality_characterization };

inline constexpr double kBoundTolerance = 1e-9;

struct BoundReport {
    std::string name;
    BoundKind kind = BoundKind::upper;
    double value = 0.0;
    /// Comparison of a computed EPT against `value`; set when one was given.
    std::optional<bool> satisfied;
    /// equality_characterization only: the structural predicate.
    std::optional<bool> structural;
};

namespace detail {

inline std::optional<bool> compare(BoundKind kind, double value,
                                   const std::optional<EptValue>& ept) {
    if (!ept) return std::nullopt;
    if (!ept->is_finite()) return false;
    switch (kind) {
        case BoundKind::upper: return ept->value <= value + kBoundTolerance;
        case BoundKind::lower: return ept->value >= value - kBoundTolerance;
        case BoundKind::equality_characterization:
            return std::abs(ept->value - value) <= kBoundTolerance;
    }
    return std::nullopt;
}

}  // namespace detail

/// ept(G, v) <= m - d for unweighted graphs whose every vertex has indegree
/// at least d; instantiated with d = min indegree.
inline BoundReport edge_bound(const WeightedDigraph& g, VertexId v,
                              std::optional<EptValue> computed = std::nullopt) {
    if (v < 0 || v >= g.order()) throw std::out_of_range("edge_bound: vertex out of range");
    if (!is_effectively_unweighted(g))
        throw std::invalid_argument("edge_bound: proven for unweighted graphs only");
    int min_indeg = g.order() == 0 ? 0 : std::numeric_limits<int>::max();
    for (int u = 0; u < g.order(); ++u) min_indeg = std::min(min_indeg, g.in_degree(u));
    BoundReport report;
    report.name = "edge_bound";
    report.kind = BoundKind::upper;
    report.value = static_cast<double>(g.edge_count() - min_indeg);
    report.satisfied = detail::compare(report.kind, report.value, computed);
    return report;
}

/// d n - d(d+1)/2: the sharp ceiling over unweighted graphs of order n with
/// maximum indegree at most d.
inline double degree_bound(int n, int d) {
    if (n < 1) throw std::invalid_argument("degree_bound: order must be >= 1");
    if (d < 1) throw std::invalid_argument("degree_bound: degree must be >= 1");
    return static_cast<double>(d) * n - d * (d + 1.0) / 2.0;
}

/// Lower bound ept(G, v) >= ecc(v), with the structural test for equality:
/// every vertex reachable from v and every directed cycle through v.
inline BoundReport radius_bound_and_equality(const WeightedDigraph& g, VertexId v,
                                             std::optional<EptValue> computed = std::nullopt) {
    if (v < 0 || v >= g.order())
        throw std::out_of_range("radius_bound_and_equality: vertex out of range");
    const std::optional<int> ecc = eccentricity(g, v);
    BoundReport report;
    report.name = "radius_lower_bound";
    report.kind = BoundKind::equality_characterization;
    report.value = ecc ? static_cast<double>(*ecc) : std::numeric_limits<double>::infinity();
    report.structural = ecc.has_value() && every_cycle_through(g, v);
    if (computed) {
        if (!ecc)
            report.satisfied = false;
        else
            report.satisfied = detail::compare(report.kind, report.value, computed);
    }
    return report;
}

/// 1 + (n-2)/w for graphs whose positive weights are all at least w.
inline double weight_bound(int n, double w) {
    if (n < 2) throw std::invalid_argument("weight_bound: order must be >= 2");
    if (!(w > 0.0)) throw std::invalid_argument("weight_bound: minimum weight must be positive");
    return 1.0 + (n - 2.0) / w;
}

/// Exact cost of prepending a blue source: (d + w)/w rounds to color the
/// attachment vertex, then the inner propagation time.
inline double pendant_source_formula(double inner_ept, double d_in, double w_edge) {
    if (!(w_edge > 0.0))
        throw std::invalid_argument("pendant_source_formula: edge weight must be positive");
    if (d_in < 0.0) throw std::invalid_argument("pendant_source_formula: negative in-weight");
    return (d_in + w_edge) / w_edge + inner_ept;
}

/// Upper bound for m graphs joined below one blue source:
/// max ept + r + sqrt(m/2 (r^2 - r)) + sqrt(sum Var / 2), r = max indegree of
/// the attachment vertices. The constants come from the explicit proof terms.
inline double join_upper_bound(const std::vector<double>& component_epts,
                               const std::vector<double>& component_vars,
                               const std::vector<int>& indegrees) {
    if (component_epts.empty()) throw std::invalid_argument("join_upper_bound: empty component list");
    if (component_epts.size() != component_vars.size() ||
        component_epts.size() != indegrees.size())
        throw std::invalid_argument("join_upper_bound: list length mismatch");
    const double m = static_cast<double>(component_epts.size());
    double max_ept = component_epts.front();
    for (double e : component_epts) max_ept = std::max(max_ept, e);
    double var_sum = 0.0;
    for (double v : component_vars) {
        if (v < 0.0) throw std::invalid_argument("join_upper_bound: negative variance");
        var_sum += v;
    }
    int r = 0;
    for (int x : indegrees) {
        if (x < 1) throw std::invalid_argument("join_upper_bound: indegrees must be >= 1");
        r = std::max(r, x);
    }
    return max_ept + r + std::sqrt(m / 2.0 * (static_cast<double>(r) * r - r)) +
           std::sqrt(var_sum / 2.0);
}

/// Upper bound for a single edge joining two graphs: crossing the new edge
/// costs (d + w)/w expected rounds.
inline double edge_join_bound(double ept_g, double ept_h, double d_in, double w_edge) {
    if (!(w_edge > 0.0))
        throw std::invalid_argument("edge_join_bound: edge weight must be positive");
    if (d_in < 0.0) throw std::invalid_argument("edge_join_bound: negative in-weight");
    return (d_in + w_edge) / w_edge + ept_g + ept_h;
}

}  // namespace rzf

#endif  // RZF_BOUNDS_HPP
