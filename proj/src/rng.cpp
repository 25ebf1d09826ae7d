#include "efekit/rng.hpp"

#include "efekit/errors.hpp"

namespace efekit {

std::size_t SeededRng::sample_index(const std::vector<double>& weights) {
    double total = 0.0;
    std::size_t last_positive = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) {
            throw NegativeWeightError("sampling weight is negative");
        }
        total += weights[i];
        if (weights[i] > 0.0) last_positive = i;
    }
    if (!(total > 0.0)) {
        throw AllZeroError("sampling weights sum to zero");
    }
    double u = next_double() * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i];
        if (u < cumulative) return i;
    }
    // Rounding can leave u at the accumulated total; the last positive
    // weight absorbs it.
    return last_positive;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace efekit
