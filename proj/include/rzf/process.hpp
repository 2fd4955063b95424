#ifndef RZF_PROCESS_HPP
#define RZF_PROCESS_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rzf/graph.hpp"
#include "rzf/rng.hpp"

namespace rzf {

inline constexpr std::uint64_t kDefaultRoundCap = 10'000'000;

namespace detail {

/// The color-change rule for one white vertex: blue incoming weight over total
/// incoming weight, 0 when there is no incoming weight at all. The all-blue
/// in-neighborhood case is detected structurally so it yields exactly 1.
template <class IsBlue>
double flip_probability(const WeightedDigraph& g, VertexId w, IsBlue&& is_blue) {
    const double total = g.in_weight(w);
    if (total <= 0.0) return 0.0;
    double blue = 0.0;
    bool any_white_tail = false;
    for (const auto& arc : g.in_arcs(w)) {
        if (is_blue(arc.vertex))
            blue += arc.weight;
        else
            any_white_tail = true;
    }
    if (!any_white_tail) return 1.0;
    return std::min(blue / total, 1.0);
}

}  // namespace detail

/// Per-round success probability of every white vertex, keyed by vertex id in
/// ascending order.
struct TransitionProfile {
    std::vector<std::pair<VertexId, double>> probs;

    const double* find(VertexId v) const {
        for (const auto& [u, p] : probs)
            if (u == v) return &p;
        return nullptr;
    }

    double at(VertexId v) const {
        const double* p = find(v);
        if (!p) throw std::out_of_range("TransitionProfile: vertex is not white");
        return *p;
    }
};

inline TransitionProfile transition_profile(const WeightedDigraph& g, const BlueSet& blue) {
    if (blue.universe() != g.order())
        throw std::invalid_argument("transition_profile: universe mismatch");
    TransitionProfile profile;
    for (int w = 0; w < g.order(); ++w) {
        if (blue.test(w)) continue;
        profile.probs.emplace_back(
            w, detail::flip_probability(g, w, [&](VertexId u) { return blue.test(u); }));
    }
    return profile;
}

/// One synchronous round. Consumes one uniform per white vertex in ascending
/// id order, including vertices with zero probability, so two coupled
/// processes always read the same draw for the same (round, vertex).
inline BlueSet step(const WeightedDigraph& g, const BlueSet& blue, const CounterRng& rng,
                    std::uint64_t round) {
    BlueSet next = blue;
    for (int w = 0; w < g.order(); ++w) {
        if (blue.test(w)) continue;
        const double p =
            detail::flip_probability(g, w, [&](VertexId u) { return blue.test(u); });
        if (rng.uniform(round, w) < p) next.set(w);
    }
    return next;
}

/// One coupled round of two processes sharing the same uniforms. Each side
/// marginally performs an ordinary step of its own graph.
inline std::pair<BlueSet, BlueSet> step_coupled(const WeightedDigraph& g1,
                                                const WeightedDigraph& g2, const BlueSet& b1,
                                                const BlueSet& b2, const CounterRng& rng,
                                                std::uint64_t round) {
    if (g1.order() != g2.order())
        throw std::invalid_argument("step_coupled: graphs must share a vertex set");
    BlueSet n1 = b1;
    BlueSet n2 = b2;
    for (int w = 0; w < g1.order(); ++w) {
        const double u = rng.uniform(round, w);
        if (!b1.test(w) &&
            u < detail::flip_probability(g1, w, [&](VertexId x) { return b1.test(x); }))
            n1.set(w);
        if (!b2.test(w) &&
            u < detail::flip_probability(g2, w, [&](VertexId x) { return b2.test(x); }))
            n2.set(w);
    }
    return {n1, n2};
}

/// Rounds consumed until the state first changes, plus the new state. The
/// waiting time is exactly geometric in the stagnation probability and the
/// new state is one step conditioned on at least one flip.
struct RoundJump {
    std::uint64_t skipped = 0;
    BlueSet next;
};

namespace detail {

/// Conditional one-round sample given that at least one of the listed
/// vertices flips. `tail[i]` must hold P(some vertex in i..k-1 flips).
/// Returns flips through `out`.
inline void sample_conditional_flips(const std::vector<double>& probs,
                                     const std::vector<double>& tail, SplitMix64& rng,
                                     std::vector<char>& out) {
    const std::size_t k = probs.size();
    out.assign(k, 0);
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
        const double p = any ? probs[i] : probs[i] / tail[i];
        if (rng.uniform() < p) {
            out[i] = 1;
            any = true;
        }
    }
}

/// P(some vertex in i..k-1 flips), computed by the stable backward recurrence
/// t_i = p_i + (1 - p_i) t_{i+1} so tiny probabilities do not round to zero.
inline std::vector<double> success_tails(const std::vector<double>& probs) {
    std::vector<double> tail(probs.size() + 1, 0.0);
    for (std::size_t i = probs.size(); i-- > 0;)
        tail[i] = probs[i] + (1.0 - probs[i]) * tail[i + 1];
    tail.pop_back();
    return tail;
}

}  // namespace detail

inline RoundJump stagnation_jump(const WeightedDigraph& g, const BlueSet& blue,
                                 SplitMix64& rng) {
    if (blue.universe() != g.order())
        throw std::invalid_argument("stagnation_jump: universe mismatch");
    if (blue.all_set()) throw std::invalid_argument("stagnation_jump: state already absorbed");
    std::vector<VertexId> actives;
    std::vector<double> probs;
    for (int w = 0; w < g.order(); ++w) {
        if (blue.test(w)) continue;
        const double p =
            detail::flip_probability(g, w, [&](VertexId u) { return blue.test(u); });
        if (p > 0.0) {
            actives.push_back(w);
            probs.push_back(p);
        }
    }
    if (actives.empty())
        throw std::invalid_argument(
            "stagnation_jump: no white vertex can flip; check is_finite_ept first");
    std::vector<double> tail = detail::success_tails(probs);
    RoundJump jump;
    jump.skipped = sample_geometric(rng, tail[0]);
    jump.next = blue;
    std::vector<char> flips;
    detail::sample_conditional_flips(probs, tail, rng, flips);
    for (std::size_t i = 0; i < actives.size(); ++i)
        if (flips[i]) jump.next.set(actives[i]);
    return jump;
}

/// Seeded run of the process until absorption (or the round cap).
struct Trajectory {
    /// (round, blue set) at round 0 and after every state change.
    std::vector<std::pair<std::uint64_t, BlueSet>> states;
    std::uint64_t rounds = 0;
    bool absorbed = false;
    std::uint64_t seed = 0;
};

namespace detail {

/// Incremental simulation state: blue incoming weight and the count of white
/// in-arc tails per vertex, so per-jump work is proportional to the frontier.
/// Buffers persist across reset() so repeated runs allocate nothing.
class SimCore {
public:
    explicit SimCore(const WeightedDigraph& g) : g_(&g) {}

    SimCore(const WeightedDigraph& g, const BlueSet& start) : g_(&g) { reset(start.members()); }

    void reset(const std::vector<VertexId>& start) {
        const std::size_t n = static_cast<std::size_t>(g_->order());
        blue_.assign(n, 0);
        blue_in_.assign(n, 0.0);
        white_in_.assign(n, 0);
        for (int v = 0; v < g_->order(); ++v)
            white_in_[static_cast<std::size_t>(v)] = g_->in_degree(v);
        blue_count_ = 0;
        newly_.clear();
        for (VertexId v : start) flip(v);
        rebuild_actives();
    }

    bool absorbed() const { return blue_count_ == g_->order(); }
    int blue_count() const { return blue_count_; }

    const std::vector<VertexId>& newly_blue() const { return newly_; }

    /// Advances to the next state change; returns the number of rounds spent.
    std::uint64_t jump(SplitMix64& rng) {
        if (actives_.empty())
            throw std::logic_error("simulation stalled; input was not pre-checked for finiteness");
        const std::size_t k = actives_.size();
        probs_.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t w = static_cast<std::size_t>(actives_[i]);
            probs_[i] = white_in_[w] == 0
                            ? 1.0
                            : std::min(blue_in_[w] / g_->in_weight(actives_[i]), 1.0);
        }
        tails_.resize(k + 1);
        tails_[k] = 0.0;
        for (std::size_t i = k; i-- > 0;)
            tails_[i] = probs_[i] + (1.0 - probs_[i]) * tails_[i + 1];
        const std::uint64_t skipped = sample_geometric(rng, tails_[0]);
        newly_.clear();
        bool any = false;
        for (std::size_t i = 0; i < k; ++i) {
            const double p = any ? probs_[i] : probs_[i] / tails_[i];
            if (rng.uniform() < p) {
                newly_.push_back(actives_[i]);
                any = true;
            }
        }
        for (VertexId v : newly_) flip(v);
        rebuild_actives();
        return skipped;
    }

    BlueSet snapshot() const {
        BlueSet s(g_->order());
        for (int v = 0; v < g_->order(); ++v)
            if (blue_[static_cast<std::size_t>(v)]) s.set(v);
        return s;
    }

private:
    void flip(VertexId v) {
        if (blue_[static_cast<std::size_t>(v)]) return;
        blue_[static_cast<std::size_t>(v)] = 1;
        ++blue_count_;
        for (const auto& arc : g_->out_arcs(v)) {
            blue_in_[static_cast<std::size_t>(arc.vertex)] += arc.weight;
            --white_in_[static_cast<std::size_t>(arc.vertex)];
        }
    }

    void rebuild_actives() {
        actives_.clear();
        for (int v = 0; v < g_->order(); ++v)
            if (!blue_[static_cast<std::size_t>(v)] && blue_in_[static_cast<std::size_t>(v)] > 0.0)
                actives_.push_back(v);
    }

    const WeightedDigraph* g_;
    std::vector<char> blue_;
    std::vector<double> blue_in_;
    std::vector<int> white_in_;
    std::vector<VertexId> actives_;
    std::vector<VertexId> newly_;
    std::vector<double> probs_;
    std::vector<double> tails_;
    int blue_count_ = 0;
};

inline std::uint64_t run_absorbed(SimCore& sim, SplitMix64& rng, std::uint64_t round_cap,
                                  bool& absorbed) {
    std::uint64_t round = 0;
    while (!sim.absorbed()) {
        const std::uint64_t skipped = sim.jump(rng);
        if (round_cap - round < skipped) {
            absorbed = false;
            return round_cap;
        }
        round += skipped;
    }
    absorbed = true;
    return round;
}

/// Lean absorption run for Monte Carlo; returns the absorption round.
inline std::uint64_t absorption_rounds(const WeightedDigraph& g, const BlueSet& start,
                                       SplitMix64& rng, std::uint64_t round_cap,
                                       bool& absorbed) {
    SimCore sim(g, start);
    return run_absorbed(sim, rng, round_cap, absorbed);
}

}  // namespace detail

inline Trajectory run_to_absorption(const WeightedDigraph& g, const BlueSet& start,
                                    std::uint64_t seed,
                                    std::uint64_t round_cap = kDefaultRoundCap) {
    if (round_cap == 0) throw std::invalid_argument("run_to_absorption: round cap must be positive");
    if (start.none()) throw std::invalid_argument("run_to_absorption: start set is empty");
    if (!is_finite_ept(g, start))
        throw std::invalid_argument(
            "run_to_absorption: some vertex is unreachable from the start set along "
            "positive-weight edges, so the all-blue state can never be reached");
    Trajectory traj;
    traj.seed = seed;
    SplitMix64 rng(mix64(seed));
    detail::SimCore sim(g, start);
    traj.states.emplace_back(0, sim.snapshot());
    std::uint64_t round = 0;
    while (!sim.absorbed()) {
        const std::uint64_t skipped = sim.jump(rng);
        if (round_cap - round < skipped) {
            traj.rounds = round_cap;
            traj.absorbed = false;
            return traj;
        }
        round += skipped;
        traj.states.emplace_back(round, sim.snapshot());
    }
    traj.rounds = round;
    traj.absorbed = true;
    return traj;
}

}  // namespace rzf

#endif  // RZF_PROCESS_HPP
