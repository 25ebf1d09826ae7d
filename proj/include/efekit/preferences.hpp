#pragma once

#include "efekit/categorical.hpp"
#include "efekit/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace efekit {

/// Condition-number limit for the direct-solve path.
inline constexpr double kConditionLimit = 1e12;
/// Feasibility cutoff on the simplex-constrained L1 residual.
inline constexpr double kResidualTol = 1e-8;
/// Simplex membership slack: entries >= -kSimplexTol, sum within
/// kSimplexTol of one, then clamped and renormalized.
inline constexpr double kSimplexTol = 1e-9;

/// Outcome of asking whether observation preferences are reachable
/// through the likelihood.
struct FeasibilityVerdict {
    bool feasible = false;
    bool ill_conditioned = false;
    /// Valid state preferences reproducing c_o, present iff feasible.
    std::optional<Categorical> c_s;
    /// Unconstrained solution: the direct solve when the likelihood is
    /// square and well conditioned, otherwise the L1 minimizer.
    std::vector<double> raw_solution;
    /// min over the state simplex of ||likelihood * x - c_o||_1.
    double residual = 0.0;
    std::string certificate;
};

/// c_o = likelihood * c_s; feasible by construction.
Categorical observation_prefs_from_state_prefs(const Matrix& likelihood,
                                               const Categorical& c_s);

/// Decides whether c_o lies in the likelihood image of the state simplex.
/// Square well-conditioned likelihoods are inverted directly; all other
/// shapes go through the simplex-constrained L1 program, as do boundary
/// calls the direct path cannot classify.
FeasibilityVerdict feasibility_check(const Matrix& likelihood,
                                     const Categorical& c_o);

/// Vertices of the feasible class: the likelihood columns. Every feasible
/// c_o is a convex combination of these and vice versa.
std::vector<Categorical> valid_class_vertices(const Matrix& likelihood);

} // namespace efekit
