#pragma once

#include "efekit/categorical.hpp"
#include "efekit/joint_table.hpp"
#include "efekit/pomdp.hpp"

#include <cstddef>
#include <vector>

namespace efekit {

/// Exact smoothing posterior over the past state chain.
/// marginals[tau] = P(s_tau | o_0..o_t, a_0..a_{t-1}) for tau = 0..t;
/// pairwise[tau-1] is the joint over (s_{tau-1}, s_tau) for tau = 1..t.
struct PosteriorChain {
    std::vector<Categorical> marginals;
    std::vector<JointTable> pairwise;
};

/// Behavior when a putative posterior puts mass on model-impossible
/// configurations: propagate +infinity or raise SupportError.
enum class SupportPolicy {
    extended_real,
    hard_error,
};

/// Exact posterior marginals via the scaled forward-backward recursion.
/// obs has length t+1, acts has length t.
/// Throws ZeroEvidenceError (with the failing step) when the observation
/// sequence is impossible under the model.
PosteriorChain exact_filter_posterior(const PomdpModel& m,
                                      const std::vector<std::size_t>& obs,
                                      const std::vector<std::size_t>& acts);

/// Free energy of the mean-field product of q's marginals:
/// KL[Q(sbar) || P(sbar | abar)] - E_Q[ln P(obar | sbar)].
/// Upper-bounds -ln P(obar | abar) for every valid q.
double variational_free_energy(
    const PomdpModel& m, const PosteriorChain& q,
    const std::vector<std::size_t>& obs, const std::vector<std::size_t>& acts,
    SupportPolicy support = SupportPolicy::extended_real);

/// ln P(obar | abar); zero flags an impossible sequence, in which case
/// value is -infinity.
struct LogEvidence {
    double value = 0.0;
    bool zero = false;
};

LogEvidence log_evidence(const PomdpModel& m,
                         const std::vector<std::size_t>& obs,
                         const std::vector<std::size_t>& acts);

} // namespace efekit
