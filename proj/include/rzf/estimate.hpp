#ifndef RZF_ESTIMATE_HPP
#define RZF_ESTIMATE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rzf/exact.hpp"
#include "rzf/families.hpp"
#include "rzf/graph.hpp"
#include "rzf/process.hpp"
#include "rzf/rng.hpp"

namespace rzf {

/// Monte Carlo estimate of the expected propagation time. Per-run seeds are
/// derived from the master seed in counter mode, so replicas are independent
/// and the aggregate is reproducible run-for-run.
struct McEstimate {
    double mean = 0.0;
    double stderror = 0.0;
    std::uint64_t runs = 0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline void check_mc_input(const WeightedDigraph& g, const BlueSet& start, std::uint64_t runs) {
    if (runs < 2) throw std::invalid_argument("mc_ept: need at least 2 runs");
    if (start.none()) throw std::invalid_argument("mc_ept: start set is empty");
    if (!is_finite_ept(g, start))
        throw std::invalid_argument(
            "mc_ept: expected propagation time is infinite (unreachable vertex)");
}

}  // namespace detail

inline McEstimate mc_ept(const WeightedDigraph& g, const BlueSet& start, std::uint64_t runs,
                         std::uint64_t seed, std::uint64_t round_cap = kDefaultRoundCap) {
    detail::check_mc_input(g, start, runs);
    const std::vector<VertexId> members = start.members();
    detail::SimCore sim(g);
    double mean = 0.0, m2 = 0.0;  // Welford, in run order
    for (std::uint64_t r = 0; r < runs; ++r) {
        SplitMix64 rng(derive_stream(seed, r));
        sim.reset(members);
        bool absorbed = false;
        const std::uint64_t rounds = detail::run_absorbed(sim, rng, round_cap, absorbed);
        if (!absorbed)
            throw std::runtime_error("mc_ept: a run exceeded the round cap; raise the cap");
        const double x = static_cast<double>(rounds);
        const double delta = x - mean;
        mean += delta / static_cast<double>(r + 1);
        m2 += delta * (x - mean);
    }
    McEstimate est;
    est.mean = mean;
    est.runs = runs;
    est.seed = seed;
    const double sd = std::sqrt(m2 / static_cast<double>(runs - 1));
    est.stderror = sd / std::sqrt(static_cast<double>(runs));
    est.ci_low = est.mean - 1.96 * est.stderror;
    est.ci_high = est.mean + 1.96 * est.stderror;
    return est;
}

/// Estimated P(absorption round >= t) with a binomial standard error.
struct TailEstimate {
    double probability = 0.0;
    double stderror = 0.0;
    std::uint64_t runs = 0;
    std::uint64_t threshold = 0;
    std::uint64_t seed = 0;
};

inline TailEstimate mc_tail(const WeightedDigraph& g, const BlueSet& start, std::uint64_t t,
                            std::uint64_t runs, std::uint64_t seed,
                            std::uint64_t round_cap = kDefaultRoundCap) {
    detail::check_mc_input(g, start, runs);
    const std::vector<VertexId> members = start.members();
    detail::SimCore sim(g);
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < runs; ++r) {
        SplitMix64 rng(derive_stream(seed, r));
        sim.reset(members);
        bool absorbed = false;
        const std::uint64_t rounds = detail::run_absorbed(sim, rng, round_cap, absorbed);
        if (!absorbed)
            throw std::runtime_error("mc_tail: a run exceeded the round cap; raise the cap");
        if (rounds >= t) ++hits;
    }
    TailEstimate est;
    est.runs = runs;
    est.threshold = t;
    est.seed = seed;
    est.probability = static_cast<double>(hits) / static_cast<double>(runs);
    est.stderror =
        std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(runs));
    return est;
}

/// Center-start estimate on the balanced bidirected spider, checked against
/// the band [2n-1, 2n-1 + 10 sqrt(k n)].
struct SpiderBand {
    McEstimate estimate;
    double band_low = 0.0;
    double band_high = 0.0;
    bool within_band = false;
};

inline SpiderBand mc_spider_band(int legs, int leg_length, std::uint64_t runs,
                                 std::uint64_t seed) {
    FamilySpec spec;
    spec.kind = FamilyKind::spider;
    spec.k = legs;
    spec.n = leg_length;
    const GeneratedGraph gen = generate(spec);
    SpiderBand out;
    out.estimate = mc_ept(gen.graph, gen.start, runs, seed);
    out.band_low = gen.oracle.low;
    out.band_high = gen.oracle.high;
    out.within_band = out.estimate.mean >= out.band_low && out.estimate.mean <= out.band_high;
    return out;
}

}  // namespace rzf

#endif  // RZF_ESTIMATE_HPP
