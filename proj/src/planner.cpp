#include "efekit/planner.hpp"

#include "efekit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace efekit {

std::vector<Policy> enumerate_policies(std::size_t n_actions,
                                       std::size_t depth) {
    if (depth == 0) {
        throw DepthMismatchError("policy depth must be at least 1");
    }
    if (n_actions == 0) {
        throw IndexError("policy enumeration needs at least one action");
    }
    if (std::pow(static_cast<double>(n_actions), static_cast<double>(depth)) >
        static_cast<double>(kPolicyCap)) {
        throw TooManyPoliciesError(
            std::to_string(n_actions) + "^" + std::to_string(depth) +
            " policies exceed the cap of " + std::to_string(kPolicyCap));
    }
    std::size_t count = 1;
    for (std::size_t k = 0; k < depth; ++k) count *= n_actions;

    std::vector<Policy> out;
    out.reserve(count);
    std::vector<std::size_t> digits(depth, 0);
    while (true) {
        out.push_back(Policy{digits});
        std::size_t i = depth;
        while (i > 0 && ++digits[i - 1] == n_actions) {
            digits[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

std::vector<EfeReport> evaluate_policies(
    const PomdpModel& m, const Categorical& posterior_t,
    const std::vector<Categorical>& state_prefs, std::size_t depth,
    Exec exec) {
    std::vector<Policy> policies = enumerate_policies(m.n_actions(), depth);
    // The target does not depend on the action sequence; build it once.
    TargetDistribution target = build_target(m, state_prefs, policies.front());

    std::vector<EfeReport> reports(policies.size());
    auto eval_one = [&](std::size_t i) {
        ForecastDistribution f = build_forecast(m, posterior_t, policies[i]);
        reports[i] = unification_report(f, target, policies[i]);
    };

    if (exec == Exec::parallel) {
        const long n = static_cast<long>(policies.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            eval_one(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < policies.size(); ++i) eval_one(i);
    }
    return reports;
}

std::vector<std::size_t> rank_reports(const std::vector<EfeReport>& reports,
                                      Formulation f) {
    std::vector<std::size_t> order(reports.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         double va = reports[a].value(f);
                         double vb = reports[b].value(f);
                         bool ia = std::isinf(va);
                         bool ib = std::isinf(vb);
                         if (ia != ib) return ib;
                         if (ia) return false;
                         return va < vb;
                     });
    return order;
}

std::vector<EfeReport> plan(const PomdpModel& m, const Categorical& posterior_t,
                            const std::vector<Categorical>& state_prefs,
                            std::size_t depth, Formulation f, Exec exec) {
    std::vector<EfeReport> reports =
        evaluate_policies(m, posterior_t, state_prefs, depth, exec);
    std::vector<std::size_t> order = rank_reports(reports, f);
    std::vector<EfeReport> ranked;
    ranked.reserve(reports.size());
    for (std::size_t i : order) ranked.push_back(std::move(reports[i]));
    return ranked;
}

} // namespace efekit
