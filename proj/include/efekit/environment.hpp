#pragma once

#include "efekit/pomdp.hpp"
#include "efekit/rng.hpp"

#include <cstddef>
#include <cstdint>

namespace efekit {

/// Ground-truth simulator the agent interacts with. Its dynamics may
/// differ from the agent's model so misspecification can be exercised;
/// the matched case is the default.
class Environment {
public:
    /// Starts at an explicit state. Throws IndexError when the state is
    /// out of range, ValidationError when the dynamics are invalid.
    Environment(PomdpModel dynamics, std::size_t initial_state,
                std::uint64_t seed);

    /// Starts at a state sampled from the dynamics' prior.
    Environment(PomdpModel dynamics, std::uint64_t seed);

    std::size_t true_state() const { return true_state_; }
    const PomdpModel& dynamics() const { return dynamics_; }

    /// Samples an observation from the likelihood column at the true
    /// state.
    std::size_t observe();

    /// Samples the successor from the transition column for the action
    /// and advances the true state.
    void step(std::size_t action);

private:
    PomdpModel dynamics_;
    std::size_t true_state_ = 0;
    SeededRng rng_;
};

} // namespace efekit
