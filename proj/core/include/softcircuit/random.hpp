#pragma once

// Platform-independent random draws.
//
// std::mt19937_64 is fully specified by the standard, but the standard
// distributions are not, so uniform and normal variates are derived here from
// raw engine output. Simulation results must be bit-identical for a given seed
// on every conforming toolchain.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace softcircuit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller. Always consumes exactly two engine draws.
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace softcircuit
