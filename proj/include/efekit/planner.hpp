#pragma once

#include "efekit/categorical.hpp"
#include "efekit/efe.hpp"
#include "efekit/exec.hpp"
#include "efekit/pomdp.hpp"
#include "efekit/predictive.hpp"

#include <cstddef>
#include <vector>

namespace efekit {

/// Hard ceiling on n_actions^depth for exhaustive enumeration.
inline constexpr std::size_t kPolicyCap = 100000;

/// All action sequences of the given depth in lexicographic order,
/// exactly n_actions^depth of them. Throws TooManyPoliciesError past
/// kPolicyCap.
std::vector<Policy> enumerate_policies(std::size_t n_actions,
                                       std::size_t depth);

/// Unification report for every policy, in enumeration order. The
/// parallel path evaluates policies independently and is bit-identical
/// to the serial one.
std::vector<EfeReport> evaluate_policies(
    const PomdpModel& m, const Categorical& posterior_t,
    const std::vector<Categorical>& state_prefs, std::size_t depth,
    Exec exec = Exec::serial);

/// Permutation of report indices, ascending by the chosen formulation.
/// Infinite values sort last; ties keep enumeration (lexicographic)
/// order.
std::vector<std::size_t> rank_reports(const std::vector<EfeReport>& reports,
                                      Formulation f);

/// Evaluates and ranks in one call.
std::vector<EfeReport> plan(const PomdpModel& m, const Categorical& posterior_t,
                            const std::vector<Categorical>& state_prefs,
                            std::size_t depth, Formulation f,
                            Exec exec = Exec::serial);

} // namespace efekit
