#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace efekit {

/// Deterministic 64-bit-seeded generator for environment sampling and
/// stochastic action selection. The algorithm name is recorded in
/// experiment summaries so runs are reproducible across platforms.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    static const char* algorithm() { return "mt19937_64"; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Inverse-CDF sample from nonnegative weights. Throws AllZeroError
    /// when the weights sum to zero or less.
    std::size_t sample_index(const std::vector<double>& weights);

private:
    std::mt19937_64 engine_;
};

/// Stateless mixer deriving independent stream seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace efekit
