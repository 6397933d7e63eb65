#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace casim {

/// SplitMix64 finalizer. Used both as a seed mixer and for deriving
/// per-repetition seeds from a master seed.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for repetition `index` of an experiment with `master` seed.
/// derive_seed(m, i) = mix64(m ^ mix64(i + 1)); the +1 keeps index 0 from
/// collapsing to mix64(m).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 1));
}

/// Deterministic random source. Wraps std::mt19937_64 (whose raw output is
/// specified by the standard, hence portable) and exposes only draws built
/// from raw 64-bit words so results are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n). Modulo bias is negligible for n << 2^64.
    std::size_t uniform_index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard logistic draw scaled by `scale` (location 0).
    double logistic(double scale) {
        double u = uniform01();
        // keep u strictly inside (0, 1)
        if (u <= 0.0) u = 0x1.0p-53;
        return scale * std::log(u / (1.0 - u));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace casim
