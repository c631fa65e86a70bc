#pragma once

#include <cstdint>
#include <numbers>
#include <random>

namespace psep {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for chunk `chunk` of stream `stream` under a user seed. Chunks of a
/// run are generated independently, so output does not depend on threading.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk);

/// Thin wrapper over mt19937_64 with a fixed, portable double conversion.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (-pi, pi).
    double angle() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return std::numbers::pi * (2.0 * u - 1.0);
    }

private:
    std::mt19937_64 engine_;
};

inline constexpr std::size_t sample_chunk = 1u << 16;

}  // namespace psep
