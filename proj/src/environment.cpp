#include "efekit/environment.hpp"

#include "efekit/errors.hpp"

#include <string>
#include <utility>

namespace efekit {

namespace {

PomdpModel validated(PomdpModel m) {
    ValidationReport report = validate_model(m);
    if (!report.ok()) throw ValidationError(std::move(report));
    return m;
}

} // namespace

Environment::Environment(PomdpModel dynamics, std::size_t initial_state,
                         std::uint64_t seed)
    : dynamics_(validated(std::move(dynamics))),
      true_state_(initial_state),
      rng_(seed) {
    if (true_state_ >= dynamics_.n_states()) {
        throw IndexError("initial state " + std::to_string(true_state_) +
                         " out of range for " +
                         std::to_string(dynamics_.n_states()) + " states");
    }
}

Environment::Environment(PomdpModel dynamics, std::uint64_t seed)
    : dynamics_(validated(std::move(dynamics))), rng_(seed) {
    true_state_ = rng_.sample_index(dynamics_.prior_d);
}

std::size_t Environment::observe() {
    std::vector<double> column(dynamics_.n_obs());
    for (std::size_t o = 0; o < column.size(); ++o) {
        column[o] = dynamics_.likelihood_a(o, true_state_);
    }
    return rng_.sample_index(column);
}

void Environment::step(std::size_t action) {
    if (action >= dynamics_.n_actions()) {
        throw IndexError("action " + std::to_string(action) +
                         " out of range for " +
                         std::to_string(dynamics_.n_actions()) + " actions");
    }
    const Matrix& b = dynamics_.transitions_b[action];
    std::vector<double> column(dynamics_.n_states());
    for (std::size_t s = 0; s < column.size(); ++s) {
        column[s] = b(s, true_state_);
    }
    true_state_ = rng_.sample_index(column);
}

} // namespace efekit
