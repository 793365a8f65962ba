#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace ridgeless {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Fold a master seed with stream/cell coordinates into an independent
/// substream seed. Same words in, same seed out, on every platform.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> words) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    for (std::uint64_t w : words) {
        s ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= splitmix64(s);
    }
    return h;
}

/// Deterministic RNG: mt19937_64 core (bit-exact by the standard) with
/// hand-rolled variate transforms, so streams do not depend on the
/// standard library's unspecified distribution algorithms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on (0, 1]: never returns 0, so log() is safe.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (no cached spare: stream position
    /// is a pure function of the draw count).
    double normal() {
        const double u = uniform01();
        const double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.14159265358979323846 * v);
    }

    /// Rademacher sign.
    double sign() { return (engine_() & 1ull) ? 1.0 : -1.0; }

    /// Uniform draw from the closed ball B(center, radius) in R^d,
    /// Gaussian direction times U^{1/d} radius. Writes d coordinates.
    template <typename OutIt>
    void ball_point(int d, OutIt out, const double* center = nullptr, double radius = 1.0) {
        double norm_sq = 0.0;
        thread_local std::vector<double> dir;
        dir.assign(static_cast<std::size_t>(d), 0.0);
        do {
            norm_sq = 0.0;
            for (int j = 0; j < d; ++j) {
                dir[static_cast<std::size_t>(j)] = normal();
                norm_sq += dir[static_cast<std::size_t>(j)] * dir[static_cast<std::size_t>(j)];
            }
        } while (norm_sq == 0.0);
        const double r = radius * std::pow(uniform01(), 1.0 / d) / std::sqrt(norm_sq);
        for (int j = 0; j < d; ++j)
            *out++ = (center ? center[j] : 0.0) + r * dir[static_cast<std::size_t>(j)];
    }

private:
    std::mt19937_64 engine_;
};

} // namespace ridgeless
