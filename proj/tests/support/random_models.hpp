#pragma once

// Seeded random model and distribution generators shared by the unit and
// acceptance suites.

#include "efekit/linalg.hpp"
#include "efekit/pomdp.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace efekit::testing {

/// Random simplex vector with every entry at least min_entry.
inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n,
                                          double min_entry = 0.01) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(n);
    double total = 0.0;
    for (double& v : w) {
        v = u(rng);
        total += v;
    }
    // Shrink toward uniform so the floor holds after normalization.
    double keep = 1.0 - static_cast<double>(n) * min_entry;
    for (double& v : w) {
        v = min_entry + keep * (v / total);
    }
    return w;
}

/// Column-stochastic matrix with entries at least min_entry.
inline Matrix random_stochastic(std::mt19937_64& rng, std::size_t rows,
                                std::size_t cols, double min_entry = 0.01) {
    Matrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<double> col = random_simplex(rng, rows, min_entry);
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = col[r];
    }
    return m;
}

/// Random model with strictly positive parameters.
inline PomdpModel random_model(std::mt19937_64& rng, std::size_t n_states,
                               std::size_t n_obs, std::size_t n_actions,
                               double min_entry = 0.01) {
    PomdpModel m;
    for (std::size_t i = 0; i < n_states; ++i) {
        m.states.push_back("s_" + std::to_string(i));
    }
    for (std::size_t i = 0; i < n_obs; ++i) {
        m.observations.push_back("o_" + std::to_string(i));
    }
    for (std::size_t i = 0; i < n_actions; ++i) {
        m.actions.push_back("a_" + std::to_string(i));
    }
    m.prior_d = random_simplex(rng, n_states, min_entry);
    m.likelihood_a = random_stochastic(rng, n_obs, n_states, min_entry);
    for (std::size_t a = 0; a < n_actions; ++a) {
        m.transitions_b.push_back(
            random_stochastic(rng, n_states, n_states, min_entry));
    }
    return m;
}

/// Model with sizes drawn from the acceptance population ranges:
/// |S|, |O| in 2..5, |A| in 1..3, entries at least 0.01.
inline PomdpModel random_population_model(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dim(2, 5);
    std::uniform_int_distribution<std::size_t> act(1, 3);
    return random_model(rng, dim(rng), dim(rng), act(rng), 0.01);
}

} // namespace efekit::testing
