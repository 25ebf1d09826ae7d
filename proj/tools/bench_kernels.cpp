// Times the serial and the OpenMP paths of the joint-fill and the policy
// sweep on a synthetic model and verifies they agree bit for bit.
#include "efekit/categorical.hpp"
#include "efekit/planner.hpp"
#include "efekit/pomdp.hpp"
#include "efekit/predictive.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

namespace {

using namespace efekit;
using Clock = std::chrono::steady_clock;

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> v(n);
    double total = 0.0;
    for (double& x : v) total += (x = u(rng));
    for (double& x : v) x /= total;
    return v;
}

Matrix random_stochastic(std::mt19937_64& rng, std::size_t rows,
                         std::size_t cols) {
    std::vector<double> data(rows * cols);
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<double> col = random_simplex(rng, rows);
        for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = col[r];
    }
    return Matrix(rows, cols, data);
}

PomdpModel synth_model(std::mt19937_64& rng, std::size_t n_states,
                       std::size_t n_obs, std::size_t n_actions) {
    PomdpModel m;
    for (std::size_t i = 0; i < n_states; ++i) {
        m.states.push_back("s" + std::to_string(i));
    }
    for (std::size_t i = 0; i < n_obs; ++i) {
        m.observations.push_back("o" + std::to_string(i));
    }
    for (std::size_t i = 0; i < n_actions; ++i) {
        m.actions.push_back("a" + std::to_string(i));
    }
    m.prior_d = random_simplex(rng, n_states);
    m.likelihood_a = random_stochastic(rng, n_obs, n_states);
    for (std::size_t a = 0; a < n_actions; ++a) {
        m.transitions_b.push_back(random_stochastic(rng, n_states, n_states));
    }
    return m;
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

bool bitwise_equal(const std::vector<double>& a,
                   const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

int main() {
    std::mt19937_64 rng(987654321u);

    {
        PomdpModel m = synth_model(rng, 5, 5, 3);
        Categorical posterior(random_simplex(rng, 5));
        Policy pi{{0, 1, 2, 0, 1}};

        auto t0 = Clock::now();
        ForecastDistribution serial =
            build_forecast(m, posterior, pi, Exec::serial);
        double serial_ms = ms_since(t0);

        t0 = Clock::now();
        ForecastDistribution parallel =
            build_forecast(m, posterior, pi, Exec::parallel);
        double parallel_ms = ms_since(t0);

        bool equal =
            bitwise_equal(serial.joint.values(), parallel.joint.values());
        std::printf("joint fill, %zu cells: serial %.1f ms, parallel %.1f ms "
                    "(x%.2f), bitwise %s\n",
                    serial.joint.values().size(), serial_ms, parallel_ms,
                    serial_ms / parallel_ms, equal ? "EQUAL" : "DIFFERENT");
        if (!equal) return 1;
    }

    {
        PomdpModel m = synth_model(rng, 5, 5, 3);
        Categorical posterior(random_simplex(rng, 5));
        std::vector<Categorical> prefs(3, Categorical(random_simplex(rng, 5)));

        auto t0 = Clock::now();
        std::vector<EfeReport> serial =
            evaluate_policies(m, posterior, prefs, 3, Exec::serial);
        double serial_ms = ms_since(t0);

        t0 = Clock::now();
        std::vector<EfeReport> parallel =
            evaluate_policies(m, posterior, prefs, 3, Exec::parallel);
        double parallel_ms = ms_since(t0);

        bool equal = serial.size() == parallel.size();
        for (std::size_t i = 0; equal && i < serial.size(); ++i) {
            equal = std::memcmp(&serial[i].roa, &parallel[i].roa,
                                sizeof(double)) == 0 &&
                    std::memcmp(&serial[i].igpv, &parallel[i].igpv,
                                sizeof(double)) == 0 &&
                    std::memcmp(&serial[i].rsa, &parallel[i].rsa,
                                sizeof(double)) == 0 &&
                    std::memcmp(&serial[i].e3, &parallel[i].e3,
                                sizeof(double)) == 0;
        }
        std::printf("policy sweep, %zu policies: serial %.1f ms, parallel "
                    "%.1f ms (x%.2f), bitwise %s\n",
                    serial.size(), serial_ms, parallel_ms,
                    serial_ms / parallel_ms, equal ? "EQUAL" : "DIFFERENT");
        if (!equal) return 1;
    }
    return 0;
}
