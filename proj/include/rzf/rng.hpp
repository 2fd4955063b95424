#ifndef RZF_RNG_HPP
#define RZF_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace rzf {

/// 64-bit finalizer (splitmix64). Bijective, so distinct inputs never collide.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a child key from (key, index). Injective in `index` for a fixed key.
inline std::uint64_t derive_stream(std::uint64_t key, std::uint64_t index) {
    return mix64(key + 0x9e3779b97f4a7c15ULL * (index + 1));
}

inline double to_unit_interval(std::uint64_t bits) {
    // 53 mantissa bits -> [0, 1)
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Stateful splitmix64 engine for sequential draws.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, 1).
    double uniform() { return to_unit_interval(next()); }

private:
    std::uint64_t state_;
};

/// Counter-mode uniform source. The stream-splitting rule is one substream per
/// (round, vertex): uniform(round, v) is a pure function of (seed, round, v),
/// which is what makes coupled processes share their randomness exactly.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed), key_(mix64(seed)) {}

    double uniform(std::uint64_t round, int vertex) const {
        return to_unit_interval(
            derive_stream(derive_stream(key_, round), static_cast<std::uint64_t>(vertex)));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t key_;
};

/// Geometric sample on {1, 2, ...} with the given success probability, by
/// inversion. success >= 1 returns 1.
inline std::uint64_t sample_geometric(SplitMix64& rng, double success) {
    if (success >= 1.0) return 1;
    if (!(success > 0.0))
        throw std::invalid_argument("sample_geometric: success probability must be positive");
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double k = std::floor(std::log(u) / std::log1p(-success));
    if (!(k >= 0.0)) return 1;
    if (k >= 9.0e18) return std::numeric_limits<std::uint64_t>::max() / 2;
    return static_cast<std::uint64_t>(k) + 1;
}

}  // namespace rzf

#endif  // RZF_RNG_HPP
