// Deterministic random source for sampling-based planning and world
// generation. std::mt19937_64 is bit-identical across platforms, but the
// standard distributions are not, so the uniform and gaussian draws are
// implemented here directly: identical seeds give identical worlds, trees,
// and routes everywhere.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mindoc {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform draw in [lo, hi).
    double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller. Consumes exactly two uniform draws and
    /// keeps no cached spare, so the draw sequence is easy to reason about.
    double gaussian() {
        const double u1 = 1.0 - uniform(); // (0, 1]: keeps the log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

private:
    std::mt19937_64 gen_;
};

} // namespace mindoc
