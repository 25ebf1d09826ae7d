#include <doctest.h>

#include "efekit/errors.hpp"
#include "efekit/predictive.hpp"

#include "support/random_models.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <vector>

using namespace efekit;
using namespace efekit::testing;

namespace {

PomdpModel two_state_model() {
    PomdpModel m;
    m.states = {"x", "y"};
    m.observations = {"u", "v"};
    m.actions = {"hold", "mix"};
    m.prior_d = {0.5, 0.5};
    m.likelihood_a = Matrix::identity(2);
    m.transitions_b = {Matrix::identity(2),
                       Matrix(2, 2, {0.9, 0.2, 0.1, 0.8})};
    return m;
}

} // namespace

TEST_CASE("forecast root is the pushed-forward posterior") {
    PomdpModel m = two_state_model();

    ForecastDistribution fixed =
        build_forecast(m, Categorical({1.0, 0.0}), Policy{{0}});
    CHECK(fixed.root[0] == doctest::Approx(1.0).epsilon(1e-12));

    PomdpModel swap_model = m;
    swap_model.transitions_b[1] = Matrix(2, 2, {0.0, 1.0, 1.0, 0.0});
    ForecastDistribution swapped =
        build_forecast(swap_model, Categorical({0.5, 0.5}), Policy{{1}});
    CHECK(swapped.root[0] == doctest::Approx(0.5).epsilon(1e-12));

    ForecastDistribution mixed =
        build_forecast(m, Categorical({0.3, 0.7}), Policy{{1}});
    CHECK(mixed.root[0] == doctest::Approx(0.41).epsilon(1e-12));
    CHECK(mixed.root[1] == doctest::Approx(0.59).epsilon(1e-12));
}

TEST_CASE("forecast marginals for hand-checked depth-1 cases") {
    PomdpModel m = two_state_model();

    ForecastDistribution f =
        build_forecast(m, Categorical({0.3, 0.7}), Policy{{1}});
    ForecastMarginals marg = forecast_marginals(f);
    REQUIRE(marg.obs.size() == 1);
    CHECK(marg.obs[0][0] == doctest::Approx(0.41).epsilon(1e-12));
    CHECK(marg.state[0][0] == doctest::Approx(f.root[0]).epsilon(1e-12));
    CHECK(marg.state[0][1] == doctest::Approx(f.root[1]).epsilon(1e-12));

    PomdpModel soft = two_state_model();
    soft.likelihood_a = Matrix(2, 2, {0.6, 0.4, 0.4, 0.6});
    ForecastDistribution g =
        build_forecast(soft, Categorical({1.0, 0.0}), Policy{{0}});
    ForecastMarginals gm = forecast_marginals(g);
    CHECK(gm.obs[0][0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(gm.obs[0][1] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("forecast joint equals the factor product cell by cell") {
    std::mt19937_64 rng(90125u);
    for (int trial = 0; trial < 25; ++trial) {
        PomdpModel m = random_population_model(rng);
        Policy pi{{rng() % m.n_actions(), rng() % m.n_actions()}};
        Categorical post(random_simplex(rng, m.n_states()));
        ForecastDistribution f = build_forecast(m, post, pi);

        const Matrix& b2 = m.transitions_b[pi.actions[1]];
        const Matrix& a = m.likelihood_a;
        double mass = 0.0;
        for (std::size_t o1 = 0; o1 < m.n_obs(); ++o1) {
            for (std::size_t o2 = 0; o2 < m.n_obs(); ++o2) {
                for (std::size_t s1 = 0; s1 < m.n_states(); ++s1) {
                    for (std::size_t s2 = 0; s2 < m.n_states(); ++s2) {
                        double expected = f.root[s1] * a(o1, s1) *
                                          b2(s2, s1) * a(o2, s2);
                        double got =
                            f.joint.values()[f.joint.flat_index({o1, o2, s1, s2})];
                        CHECK(std::abs(got - expected) <= 1e-12);
                        mass += got;
                    }
                }
            }
        }
        CHECK(std::abs(mass - 1.0) <= 1e-9);

        // Depth-2 marginals against direct sums of the factor product.
        ForecastMarginals marg = forecast_marginals(f);
        for (std::size_t s = 0; s < m.n_states(); ++s) {
            CHECK(std::abs(marg.state[0][s] - f.root[s]) <= 1e-12);
        }
        std::vector<double> s2_direct(m.n_states(), 0.0);
        for (std::size_t s1 = 0; s1 < m.n_states(); ++s1) {
            for (std::size_t s2 = 0; s2 < m.n_states(); ++s2) {
                s2_direct[s2] += f.root[s1] * b2(s2, s1);
            }
        }
        for (std::size_t s = 0; s < m.n_states(); ++s) {
            CHECK(std::abs(marg.state[1][s] - s2_direct[s]) <= 1e-12);
        }
    }
}

TEST_CASE("forecast joint satisfies the posterior-ratio identity") {
    std::mt19937_64 rng(777001u);
    std::vector<std::string> o_axes, s_axes;
    for (int trial = 0; trial < 25; ++trial) {
        PomdpModel m = random_population_model(rng);
        std::size_t depth = 1 + rng() % 2;
        Policy pi;
        for (std::size_t k = 0; k < depth; ++k) {
            pi.actions.push_back(rng() % m.n_actions());
        }
        ForecastDistribution f =
            build_forecast(m, Categorical(random_simplex(rng, m.n_states())), pi);

        o_axes.clear();
        s_axes.clear();
        for (std::size_t k = 1; k <= depth; ++k) {
            o_axes.push_back("o" + std::to_string(k));
            s_axes.push_back("s" + std::to_string(k));
        }
        JointTable f_s = f.joint.marginalize(s_axes);
        JointTable f_o = f.joint.marginalize(o_axes);

        std::size_t n_o_flat = f_o.values().size();
        std::size_t n_s_flat = f_s.values().size();
        for (std::size_t of = 0; of < n_o_flat; ++of) {
            if (f_o.values()[of] <= 0.0) continue;
            std::vector<std::pair<std::string, std::size_t>> o_assign;
            std::size_t rest = of;
            for (std::size_t k = depth; k-- > 0;) {
                o_assign.emplace_back(o_axes[k], rest % m.n_obs());
                rest /= m.n_obs();
            }
            JointTable s_given_o = f.joint.condition(o_assign);

            for (std::size_t sf = 0; sf < n_s_flat; ++sf) {
                double joint_mass = f.joint.values()[of * n_s_flat + sf];
                if (joint_mass <= 0.0) continue;
                std::vector<std::pair<std::string, std::size_t>> s_assign;
                rest = sf;
                for (std::size_t k = depth; k-- > 0;) {
                    s_assign.emplace_back(s_axes[k], rest % m.n_states());
                    rest /= m.n_states();
                }
                JointTable o_given_s = f.joint.condition(s_assign);

                double lhs = f_s.values()[sf] / s_given_o.values()[sf];
                double rhs = f_o.values()[of] / o_given_s.values()[of];
                CHECK(std::abs(lhs - rhs) <= 1e-9);
            }
        }
    }
}

TEST_CASE("conditioning the forecast on states recovers the likelihood product") {
    std::mt19937_64 rng(31415u);
    PomdpModel m = random_model(rng, 3, 4, 2);
    Policy pi{{0, 1}};
    ForecastDistribution f =
        build_forecast(m, Categorical(random_simplex(rng, 3)), pi);

    for (std::size_t s1 = 0; s1 < 3; ++s1) {
        for (std::size_t s2 = 0; s2 < 3; ++s2) {
            JointTable cond = f.joint.condition({{"s1", s1}, {"s2", s2}});
            for (std::size_t o1 = 0; o1 < 4; ++o1) {
                for (std::size_t o2 = 0; o2 < 4; ++o2) {
                    double expected =
                        m.likelihood_a(o1, s1) * m.likelihood_a(o2, s2);
                    CHECK(std::abs(cond.values()[o1 * 4 + o2] - expected) <=
                          1e-12);
                }
            }
        }
    }
}

TEST_CASE("target distribution matches hand-checked cases") {
    PomdpModel m = two_state_model();
    m.likelihood_a = Matrix(2, 2, {0.6, 0.4, 0.4, 0.6});

    TargetDistribution uniform = build_target(
        m, {Categorical({0.5, 0.5})}, Policy{{0}});
    CHECK(uniform.obs_prefs[0][0] == doctest::Approx(0.5).epsilon(1e-12));

    TargetDistribution basis = build_target(
        m, {Categorical({1.0, 0.0})}, Policy{{0}});
    CHECK(basis.obs_prefs[0][0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(basis.obs_prefs[0][1] == doctest::Approx(0.4).epsilon(1e-12));

    PomdpModel ident = two_state_model();
    Categorical prefs({0.1, 0.9});
    TargetDistribution deep =
        build_target(ident, {prefs, prefs}, Policy{{0, 0}});
    // o1=1, o2=1, s1=1, s2=1 under an identity likelihood
    CHECK(deep.joint.values()[deep.joint.flat_index({1, 1, 1, 1})] ==
          doctest::Approx(0.81).epsilon(1e-12));
}

TEST_CASE("target joint state marginals reproduce the preferences") {
    std::mt19937_64 rng(5551212u);
    for (int trial = 0; trial < 25; ++trial) {
        PomdpModel m = random_population_model(rng);
        std::size_t depth = 1 + rng() % 3;
        Policy pi;
        std::vector<Categorical> prefs;
        for (std::size_t k = 0; k < depth; ++k) {
            pi.actions.push_back(rng() % m.n_actions());
            prefs.emplace_back(random_simplex(rng, m.n_states()));
        }
        TargetDistribution t = build_target(m, prefs, pi);
        CHECK(std::abs(t.joint.total_mass() - 1.0) <= 1e-9);

        for (std::size_t k = 1; k <= depth; ++k) {
            Categorical sm = t.joint.marginal("s" + std::to_string(k));
            Categorical om = t.joint.marginal("o" + std::to_string(k));
            for (std::size_t s = 0; s < m.n_states(); ++s) {
                CHECK(std::abs(sm[s] - prefs[k - 1][s]) <= 1e-12);
            }
            for (std::size_t o = 0; o < m.n_obs(); ++o) {
                CHECK(std::abs(om[o] - t.obs_prefs[k - 1][o]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("serial and parallel joint fills are bit-identical") {
    std::mt19937_64 rng(1600061u);
    PomdpModel m = random_model(rng, 4, 5, 3);
    Policy pi{{2, 0, 1}};
    Categorical post(random_simplex(rng, 4));

    ForecastDistribution serial = build_forecast(m, post, pi, Exec::serial);
    ForecastDistribution parallel = build_forecast(m, post, pi, Exec::parallel);
    CHECK(serial.joint.values() == parallel.joint.values());

    std::vector<Categorical> prefs(3, Categorical(random_simplex(rng, 4)));
    TargetDistribution st = build_target(m, prefs, pi, Exec::serial);
    TargetDistribution pt = build_target(m, prefs, pi, Exec::parallel);
    CHECK(st.joint.values() == pt.joint.values());
}

TEST_CASE("enumeration cap rejects oversized joints") {
    PomdpModel m = two_state_model();
    REQUIRE(setenv("EFEKIT_ENUM_CAP", "10", 1) == 0);
    CHECK_THROWS_AS(
        build_forecast(m, Categorical({0.5, 0.5}), Policy{{0, 0}}),
        DepthTooLargeError);
    REQUIRE(setenv("EFEKIT_ENUM_CAP", "1000", 1) == 0);
    CHECK_NOTHROW(build_forecast(m, Categorical({0.5, 0.5}), Policy{{0, 0}}));
    REQUIRE(unsetenv("EFEKIT_ENUM_CAP") == 0);
}

TEST_CASE("target construction validates preference shape") {
    PomdpModel m = two_state_model();
    CHECK_THROWS_AS(
        build_target(m, {Categorical({0.5, 0.5})}, Policy{{0, 0}}),
        DepthMismatchError);
    CHECK_THROWS_AS(
        build_target(m, {Categorical({0.2, 0.3, 0.5})}, Policy{{0}}),
        LengthMismatchError);
    CHECK_THROWS_AS(
        build_forecast(m, Categorical({0.5, 0.5}), Policy{{}}),
        DepthMismatchError);
    CHECK_THROWS_AS(
        build_forecast(m, Categorical({0.5, 0.5}), Policy{{7}}), IndexError);
}

TEST_CASE("preference files load with broadcast and per-step forms") {
    const char* path = "efekit_test_prefs.json";

    {
        std::ofstream out(path);
        out << R"({"state_prefs": [0.1, 0.9]})";
    }
    std::vector<Categorical> broadcast = load_state_prefs(path, 3, 2);
    REQUIRE(broadcast.size() == 3);
    for (const Categorical& c : broadcast) {
        CHECK(c[1] == doctest::Approx(0.9).epsilon(1e-12));
    }

    {
        std::ofstream out(path);
        out << R"({"state_prefs": [[0.1, 0.9], [0.5, 0.5]]})";
    }
    std::vector<Categorical> stepped = load_state_prefs(path, 2, 2);
    REQUIRE(stepped.size() == 2);
    CHECK(stepped[1][0] == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(load_state_prefs(path, 3, 2), DepthMismatchError);

    {
        std::ofstream out(path);
        out << R"({"prefs": [0.1, 0.9]})";
    }
    CHECK_THROWS_AS(load_state_prefs(path, 1, 2), ParseError);

    std::remove(path);
    CHECK_THROWS_AS(load_state_prefs(path, 1, 2), IoError);
}
