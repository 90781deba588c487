#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace liedeconv {

/// Splittable random stream.
///
/// A master seed is hashed (SplitMix64) into independent substreams keyed by
/// integers, so that e.g. observation m of a simulation draws from
/// `rng.substream(m)` and its variates do not depend on how many observations
/// exist or in which order they are generated. Variates themselves come from
/// mt19937_64; uniform and normal draws are generated here rather than with
/// std::*_distribution so that the byte stream does not depend on the
/// standard-library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)), engine_(state_) {}

    /// Independent stream derived from this stream's identity and `key`.
    Rng substream(std::uint64_t key) const { return Rng(mix(state_ + 0x632be59bd9b4e019ull * (key + 1))); }

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0,1).
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (one value per call; no cached spare,
    /// keeping the draw count predictable).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    std::mt19937_64 engine_;
};

}  // namespace liedeconv
