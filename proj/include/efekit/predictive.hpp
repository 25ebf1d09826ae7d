#pragma once

#include "efekit/categorical.hpp"
#include "efekit/exec.hpp"
#include "efekit/joint_table.hpp"
#include "efekit/pomdp.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace efekit {

/// Fixed future action sequence a_t..a_{h-1}.
struct Policy {
    std::vector<std::size_t> actions;

    std::size_t depth() const { return actions.size(); }

    /// Dash-joined action indices, e.g. "0-1-1".
    std::string to_string() const;
};

/// Predicted future joint for one policy, rooted at the current posterior.
/// Joint axes are o1..od then s1..sd, where k counts steps past t.
struct ForecastDistribution {
    Categorical root;                    // F(s_{t+1} | a_t)
    std::vector<Matrix> step_transitions; // F(s_k | s_{k-1}), k = 2..depth
    Matrix step_likelihood;              // F(o_k | s_k), the model likelihood
    JointTable joint;                    // F(obar, sbar)
};

/// Desired future joint: per-step state preferences pushed through the
/// model likelihood, independent across steps.
struct TargetDistribution {
    std::vector<Categorical> state_prefs; // T(s_k), k = 1..depth
    Matrix likelihood;                    // T(o_k | s_k), the model likelihood
    JointTable joint;                     // T(obar, sbar)
    std::vector<Categorical> obs_prefs;   // T(o_k) = likelihood * state_prefs
};

/// Joint-cell budget for materialized sequence joints, default 10^7.
/// The EFEKIT_ENUM_CAP environment variable overrides it per process.
std::size_t enumeration_cap();

/// Builds F for one policy: root = B[a_t] * posterior, deeper steps chain
/// the model transitions, likelihood is shared with the model.
/// Throws DepthTooLargeError when (n_obs * n_states)^depth exceeds the cap.
ForecastDistribution build_forecast(const PomdpModel& m,
                                    const Categorical& posterior_t,
                                    const Policy& pi,
                                    Exec exec = Exec::serial);

/// Per-step state and observation marginals of the forecast joint.
struct ForecastMarginals {
    std::vector<Categorical> state; // F(s_k)
    std::vector<Categorical> obs;   // F(o_k)
};

ForecastMarginals forecast_marginals(const ForecastDistribution& f);

/// Builds T for one policy from per-step state preferences.
/// Throws DepthMismatchError when the preference count differs from depth.
TargetDistribution build_target(const PomdpModel& m,
                                const std::vector<Categorical>& state_prefs,
                                const Policy& pi, Exec exec = Exec::serial);

/// Reads a preference file: {"state_prefs": [[...], ...]} with one vector
/// per step, or a single vector broadcast to all depth steps.
std::vector<Categorical> load_state_prefs(const std::string& path,
                                          std::size_t depth,
                                          std::size_t n_states);

} // namespace efekit
