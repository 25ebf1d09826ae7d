#include "efekit/predictive.hpp"

#include "efekit/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace efekit {

namespace {

std::vector<Axis> sequence_axes(std::size_t n_obs, std::size_t n_states,
                                std::size_t depth) {
    std::vector<Axis> axes;
    axes.reserve(2 * depth);
    for (std::size_t k = 1; k <= depth; ++k) {
        axes.push_back({"o" + std::to_string(k), n_obs});
    }
    for (std::size_t k = 1; k <= depth; ++k) {
        axes.push_back({"s" + std::to_string(k), n_states});
    }
    return axes;
}

void check_cell_budget(std::size_t n_obs, std::size_t n_states,
                       std::size_t depth) {
    double cells = std::pow(static_cast<double>(n_obs * n_states),
                            static_cast<double>(depth));
    double cap = static_cast<double>(enumeration_cap());
    if (cells > cap) {
        std::ostringstream msg;
        msg << "sequence joint needs " << cells << " cells, cap is " << cap;
        throw DepthTooLargeError(msg.str());
    }
}

/// Decodes flat row-major cell indices and multiplies the factor chain.
/// Both execution paths call this per cell, so serial and parallel fills
/// are bit-identical.
template <typename CellFn>
void fill_joint(JointTable& joint, std::size_t n_obs, std::size_t n_states,
                std::size_t depth, Exec exec, const CellFn& cell_value) {
    std::vector<double>& values = joint.mutable_values();
    const long long total = static_cast<long long>(values.size());

    auto eval = [&](long long flat) {
        std::vector<std::size_t> o(depth), s(depth);
        std::size_t rest = static_cast<std::size_t>(flat);
        for (std::size_t k = depth; k-- > 0;) {
            s[k] = rest % n_states;
            rest /= n_states;
        }
        for (std::size_t k = depth; k-- > 0;) {
            o[k] = rest % n_obs;
            rest /= n_obs;
        }
        values[static_cast<std::size_t>(flat)] = cell_value(o, s);
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long flat = 0; flat < total; ++flat) {
            eval(flat);
        }
    } else {
        for (long long flat = 0; flat < total; ++flat) {
            eval(flat);
        }
    }
}

} // namespace

std::string Policy::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (i > 0) out << "-";
        out << actions[i];
    }
    return out.str();
}

std::size_t enumeration_cap() {
    static constexpr std::size_t kDefaultCap = 10'000'000;
    const char* raw = std::getenv("EFEKIT_ENUM_CAP");
    if (raw == nullptr || *raw == '\0') return kDefaultCap;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || parsed == 0) return kDefaultCap;
    return static_cast<std::size_t>(parsed);
}

ForecastDistribution build_forecast(const PomdpModel& m,
                                    const Categorical& posterior_t,
                                    const Policy& pi, Exec exec) {
    if (pi.depth() == 0) {
        throw DepthMismatchError("policy depth must be >= 1");
    }
    if (posterior_t.size() != m.n_states()) {
        throw LengthMismatchError("posterior length does not match states");
    }
    for (std::size_t a : pi.actions) {
        if (a >= m.n_actions()) {
            throw IndexError("policy action " + std::to_string(a) +
                             " out of range");
        }
    }
    std::size_t depth = pi.depth();
    check_cell_budget(m.n_obs(), m.n_states(), depth);

    Categorical root(matvec(m.transitions_b[pi.actions[0]], posterior_t.probs()));
    std::vector<Matrix> steps;
    for (std::size_t k = 1; k < depth; ++k) {
        steps.push_back(m.transitions_b[pi.actions[k]]);
    }

    JointTable joint =
        JointTable::zeros(sequence_axes(m.n_obs(), m.n_states(), depth));
    const Matrix& a = m.likelihood_a;
    fill_joint(joint, m.n_obs(), m.n_states(), depth, exec,
               [&](const std::vector<std::size_t>& o,
                   const std::vector<std::size_t>& s) {
                   double p = root[s[0]] * a(o[0], s[0]);
                   for (std::size_t k = 1; k < depth; ++k) {
                       p *= steps[k - 1](s[k], s[k - 1]) * a(o[k], s[k]);
                   }
                   return p;
               });
    joint.mark_normalized();

    return ForecastDistribution{std::move(root), std::move(steps), a,
                                std::move(joint)};
}

ForecastMarginals forecast_marginals(const ForecastDistribution& f) {
    ForecastMarginals out;
    std::size_t depth = f.joint.rank() / 2;
    for (std::size_t k = 1; k <= depth; ++k) {
        out.state.push_back(f.joint.marginal("s" + std::to_string(k)));
        out.obs.push_back(f.joint.marginal("o" + std::to_string(k)));
    }
    return out;
}

TargetDistribution build_target(const PomdpModel& m,
                                const std::vector<Categorical>& state_prefs,
                                const Policy& pi, Exec exec) {
    if (state_prefs.size() != pi.depth()) {
        std::ostringstream msg;
        msg << "got " << state_prefs.size() << " preference steps for depth "
            << pi.depth();
        throw DepthMismatchError(msg.str());
    }
    for (const Categorical& c : state_prefs) {
        if (c.size() != m.n_states()) {
            throw LengthMismatchError("preference length does not match states");
        }
    }
    std::size_t depth = pi.depth();
    check_cell_budget(m.n_obs(), m.n_states(), depth);

    JointTable joint =
        JointTable::zeros(sequence_axes(m.n_obs(), m.n_states(), depth));
    const Matrix& a = m.likelihood_a;
    fill_joint(joint, m.n_obs(), m.n_states(), depth, exec,
               [&](const std::vector<std::size_t>& o,
                   const std::vector<std::size_t>& s) {
                   double p = 1.0;
                   for (std::size_t k = 0; k < depth; ++k) {
                       p *= a(o[k], s[k]) * state_prefs[k][s[k]];
                   }
                   return p;
               });
    joint.mark_normalized();

    std::vector<Categorical> obs_prefs;
    for (const Categorical& c : state_prefs) {
        obs_prefs.emplace_back(matvec(a, c.probs()));
    }

    return TargetDistribution{state_prefs, a, std::move(joint),
                              std::move(obs_prefs)};
}

std::vector<Categorical> load_state_prefs(const std::string& path,
                                          std::size_t depth,
                                          std::size_t n_states) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open preference file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("preference file '" + path + "': " + e.what());
    }
    if (!doc.contains("state_prefs")) {
        throw ParseError("preference file '" + path +
                         "' missing key 'state_prefs'");
    }
    const nlohmann::json& prefs = doc.at("state_prefs");
    if (!prefs.is_array() || prefs.empty()) {
        throw ParseError("'state_prefs' must be a non-empty array");
    }

    std::vector<std::vector<double>> rows;
    try {
        if (prefs[0].is_array()) {
            rows = prefs.get<std::vector<std::vector<double>>>();
        } else {
            rows.push_back(prefs.get<std::vector<double>>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("preference file '" + path + "': " + e.what());
    }

    if (rows.size() == 1 && depth > 1) {
        rows.assign(depth, rows[0]);
    }
    if (rows.size() != depth) {
        std::ostringstream msg;
        msg << "preference file has " << rows.size() << " steps, wants "
            << depth;
        throw DepthMismatchError(msg.str());
    }

    std::vector<Categorical> out;
    for (const std::vector<double>& row : rows) {
        if (row.size() != n_states) {
            throw LengthMismatchError(
                "preference vector length does not match states");
        }
        out.emplace_back(row);
    }
    return out;
}

} // namespace efekit
