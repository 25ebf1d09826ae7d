#include <doctest.h>

#include "efekit/errors.hpp"
#include "efekit/inference.hpp"
#include "efekit/pomdp.hpp"

#include "support/brute_force.hpp"
#include "support/random_models.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace efekit;
using namespace efekit::testing;

namespace {

PomdpModel certain_model() {
    PomdpModel m;
    m.states = {"x", "y"};
    m.observations = {"u", "v"};
    m.actions = {"stay"};
    m.prior_d = {1.0, 0.0};
    m.likelihood_a = Matrix::identity(2);
    m.transitions_b = {Matrix::identity(2)};
    return m;
}

PomdpModel noisy_two_state() {
    PomdpModel m;
    m.states = {"x", "y"};
    m.observations = {"u", "v"};
    m.actions = {"stay"};
    m.prior_d = {0.5, 0.5};
    m.likelihood_a = Matrix(2, 2, {0.9, 0.2, 0.1, 0.8});
    m.transitions_b = {Matrix::identity(2)};
    return m;
}

PosteriorChain uniform_chain(const PomdpModel& m, std::size_t steps) {
    PosteriorChain q;
    for (std::size_t tau = 0; tau < steps; ++tau) {
        q.marginals.emplace_back(
            std::vector<double>(m.n_states(), 1.0 / m.n_states()));
    }
    return q;
}

} // namespace

TEST_CASE("deterministic model gives one-hot smoothing marginals") {
    PomdpModel m = certain_model();
    PosteriorChain chain = exact_filter_posterior(m, {0, 0, 0}, {0, 0});
    REQUIRE(chain.marginals.size() == 3);
    for (const Categorical& marg : chain.marginals) {
        CHECK(marg[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(marg[1] == doctest::Approx(0.0));
    }
}

TEST_CASE("single-step posterior matches Bayes rule by hand") {
    PomdpModel m = noisy_two_state();
    PosteriorChain chain = exact_filter_posterior(m, {0}, {});
    REQUIRE(chain.marginals.size() == 1);
    // proportional to [0.45, 0.10]
    CHECK(chain.marginals[0][0] == doctest::Approx(0.45 / 0.55).epsilon(1e-12));
    CHECK(chain.marginals[0][1] == doctest::Approx(0.10 / 0.55).epsilon(1e-12));
    CHECK(chain.pairwise.empty());
}

TEST_CASE("smoothing marginals match brute-force enumeration") {
    std::mt19937_64 rng(5150u);
    for (int trial = 0; trial < 40; ++trial) {
        PomdpModel m = random_model(rng, 3, 3, 2);
        std::vector<std::size_t> obs = {rng() % 3, rng() % 3, rng() % 3};
        std::vector<std::size_t> acts = {rng() % 2, rng() % 2};

        PosteriorChain chain = exact_filter_posterior(m, obs, acts);
        BruteForcePosterior oracle = brute_force_posterior(m, obs, acts);

        for (std::size_t tau = 0; tau < obs.size(); ++tau) {
            double sum = 0.0;
            for (std::size_t s = 0; s < 3; ++s) {
                CHECK(std::abs(chain.marginals[tau][s] -
                               oracle.marginals[tau][s]) <= 1e-10);
                sum += chain.marginals[tau][s];
            }
            CHECK(std::abs(sum - 1.0) <= 1e-9);
        }
        for (std::size_t tau = 0; tau + 1 < obs.size(); ++tau) {
            for (std::size_t k = 0; k < 9; ++k) {
                CHECK(std::abs(chain.pairwise[tau].values()[k] -
                               oracle.pairwise[tau][k]) <= 1e-10);
            }
        }

        LogEvidence ev = log_evidence(m, obs, acts);
        CHECK_FALSE(ev.zero);
        CHECK(ev.value == doctest::Approx(std::log(oracle.evidence)).epsilon(1e-10));
    }
}

TEST_CASE("pairwise tables marginalize to the adjacent marginals") {
    std::mt19937_64 rng(8201u);
    PomdpModel m = random_model(rng, 4, 3, 2);
    std::vector<std::size_t> obs = {0, 2, 1, 2};
    std::vector<std::size_t> acts = {1, 0, 1};
    PosteriorChain chain = exact_filter_posterior(m, obs, acts);

    REQUIRE(chain.pairwise.size() == 3);
    for (std::size_t tau = 1; tau < obs.size(); ++tau) {
        const JointTable& pair = chain.pairwise[tau - 1];
        Categorical prev = pair.marginal("s" + std::to_string(tau - 1));
        Categorical next = pair.marginal("s" + std::to_string(tau));
        for (std::size_t s = 0; s < 4; ++s) {
            CHECK(std::abs(prev[s] - chain.marginals[tau - 1][s]) <= 1e-9);
            CHECK(std::abs(next[s] - chain.marginals[tau][s]) <= 1e-9);
        }
    }
}

TEST_CASE("impossible observations raise zero evidence with step index") {
    PomdpModel m = certain_model();
    try {
        exact_filter_posterior(m, {0, 1}, {0});
        FAIL("expected ZeroEvidenceError");
    } catch (const ZeroEvidenceError& e) {
        CHECK(e.step() == 1);
    }

    LogEvidence ev = log_evidence(m, {1}, {});
    CHECK(ev.zero);
    CHECK(ev.value == -std::numeric_limits<double>::infinity());
}

TEST_CASE("input validation rejects malformed sequences") {
    PomdpModel m = certain_model();
    CHECK_THROWS_AS(exact_filter_posterior(m, {0, 0}, {}), LengthMismatchError);
    CHECK_THROWS_AS(exact_filter_posterior(m, {5}, {}), IndexError);
    CHECK_THROWS_AS(exact_filter_posterior(m, {0, 0}, {9}), IndexError);
}

TEST_CASE("free energy vanishes in a certain world") {
    PomdpModel m = certain_model();
    PosteriorChain q;
    q.marginals.emplace_back(std::vector<double>{1.0, 0.0});
    CHECK(variational_free_energy(m, q, {0}, {}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("free energy with prior beliefs reduces to expected surprisal") {
    PomdpModel m = noisy_two_state();
    PosteriorChain q;
    q.marginals.emplace_back(std::vector<double>(m.prior_d));
    double expected = -(0.5 * std::log(0.9) + 0.5 * std::log(0.2));
    CHECK(variational_free_energy(m, q, {0}, {}) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("free energy at the exact posterior equals surprisal for t=0") {
    PomdpModel m = noisy_two_state();
    PosteriorChain q = exact_filter_posterior(m, {0}, {});
    double vfe = variational_free_energy(m, q, {0}, {});
    // evidence = 0.9*0.5 + 0.2*0.5 = 0.55
    CHECK(vfe == doctest::Approx(-std::log(0.55)).epsilon(1e-9));
    LogEvidence ev = log_evidence(m, {0}, {});
    CHECK(std::abs(vfe + ev.value) <= 1e-9);
}

TEST_CASE("evidence bound holds for random posteriors") {
    std::mt19937_64 rng(424242u);
    for (int trial = 0; trial < 60; ++trial) {
        PomdpModel m = random_population_model(rng);
        std::size_t t = rng() % 3;
        std::vector<std::size_t> obs, acts;
        for (std::size_t tau = 0; tau <= t; ++tau) {
            obs.push_back(rng() % m.n_obs());
        }
        for (std::size_t tau = 0; tau < t; ++tau) {
            acts.push_back(rng() % m.n_actions());
        }

        LogEvidence ev = log_evidence(m, obs, acts);
        REQUIRE_FALSE(ev.zero);

        // Random and exact chains both respect the bound.
        PosteriorChain random_q;
        for (std::size_t tau = 0; tau <= t; ++tau) {
            random_q.marginals.emplace_back(
                random_simplex(rng, m.n_states(), 0.0));
        }
        CHECK(variational_free_energy(m, random_q, obs, acts) + ev.value >=
              -1e-9);

        PosteriorChain exact = exact_filter_posterior(m, obs, acts);
        double gap = variational_free_energy(m, exact, obs, acts) + ev.value;
        CHECK(gap >= -1e-9);
        if (t == 0) CHECK(std::abs(gap) <= 1e-9);
    }
}

TEST_CASE("support policy controls impossible-mass handling") {
    PomdpModel m = certain_model();
    PosteriorChain q = uniform_chain(m, 1);

    CHECK(variational_free_energy(m, q, {0}, {}) ==
          std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(variational_free_energy(m, q, {0}, {},
                                            SupportPolicy::hard_error),
                    SupportError);
}
