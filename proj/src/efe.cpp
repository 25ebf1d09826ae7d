#include "efekit/efe.hpp"

#include "efekit/errors.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace efekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t joint_depth(const JointTable& joint) { return joint.rank() / 2; }

std::vector<std::string> obs_axes(std::size_t depth) {
    std::vector<std::string> axes;
    for (std::size_t k = 1; k <= depth; ++k) {
        axes.push_back("o" + std::to_string(k));
    }
    return axes;
}

std::vector<std::string> state_axes(std::size_t depth) {
    std::vector<std::string> axes;
    for (std::size_t k = 1; k <= depth; ++k) {
        axes.push_back("s" + std::to_string(k));
    }
    return axes;
}

/// Decodes a row-major flat index over one axis block into assignments.
std::vector<std::pair<std::string, std::size_t>> block_assignment(
    std::size_t flat, const std::vector<std::string>& axes, std::size_t base) {
    std::vector<std::pair<std::string, std::size_t>> out(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        out[k] = {axes[k], flat % base};
        flat /= base;
    }
    return out;
}

/// Residual between two extended reals: matching infinities agree exactly.
double extended_residual(double a, double b) {
    bool ia = std::isinf(a);
    bool ib = std::isinf(b);
    if (ia && ib && a == b) return 0.0;
    if (ia || ib) return kInf;
    return std::abs(a - b);
}

void shape_check(const ForecastDistribution& f, const TargetDistribution& t) {
    if (f.joint.values().size() != t.joint.values().size() ||
        f.joint.rank() != t.joint.rank()) {
        throw LengthMismatchError("forecast and target joints differ in shape");
    }
}

} // namespace

std::string formulation_name(Formulation f) {
    switch (f) {
    case Formulation::roa: return "roa";
    case Formulation::igpv: return "igpv";
    case Formulation::rsa: return "rsa";
    case Formulation::e3: return "e3";
    }
    return "roa";
}

Formulation parse_formulation(const std::string& name) {
    if (name == "roa") return Formulation::roa;
    if (name == "igpv") return Formulation::igpv;
    if (name == "rsa") return Formulation::rsa;
    if (name == "e3") return Formulation::e3;
    throw ParseError("unknown formulation '" + name +
                     "' (wants roa, igpv, rsa, or e3)");
}

double EfeReport::value(Formulation f) const {
    switch (f) {
    case Formulation::roa: return roa;
    case Formulation::igpv: return igpv;
    case Formulation::rsa: return rsa;
    case Formulation::e3: return e3;
    }
    return roa;
}

double efe_roa(const ForecastDistribution& f, const TargetDistribution& t) {
    shape_check(f, t);
    std::size_t depth = joint_depth(f.joint);
    auto o_ax = obs_axes(depth);

    JointTable f_o = f.joint.marginalize(o_ax);
    JointTable t_o = t.joint.marginalize(o_ax);
    double risk = kl_divergence_nats(f_o.values(), t_o.values());

    // Per-step expected likelihood-column entropy.
    double ambiguity = 0.0;
    std::size_t n_states = f.step_likelihood.cols();
    for (std::size_t k = 1; k <= depth; ++k) {
        Categorical s_k = f.joint.marginal("s" + std::to_string(k));
        for (std::size_t s = 0; s < n_states; ++s) {
            if (s_k[s] <= 0.0) continue;
            std::vector<double> col = f.step_likelihood.col(s);
            ambiguity += s_k[s] * entropy_nats(col);
        }
    }
    return risk + ambiguity;
}

double efe_igpv(const ForecastDistribution& f, const TargetDistribution& t) {
    shape_check(f, t);
    std::size_t depth = joint_depth(f.joint);
    auto o_ax = obs_axes(depth);
    auto s_ax = state_axes(depth);
    std::size_t n_obs = f.step_likelihood.rows();

    JointTable f_o = f.joint.marginalize(o_ax);
    JointTable f_s = f.joint.marginalize(s_ax);
    JointTable t_o = t.joint.marginalize(o_ax);

    double info_gain = 0.0;
    double pragmatic = 0.0;
    for (std::size_t of = 0; of < f_o.values().size(); ++of) {
        double w = f_o.values()[of];
        if (w <= 0.0) continue;
        JointTable s_given_o =
            f.joint.condition(block_assignment(of, o_ax, n_obs));
        info_gain += w * kl_divergence_nats(s_given_o.values(), f_s.values());
        if (t_o.values()[of] <= 0.0) return kInf;
        pragmatic += w * std::log(t_o.values()[of]);
    }
    return -info_gain - pragmatic;
}

double efe_rsa(const ForecastDistribution& f, const TargetDistribution& t) {
    shape_check(f, t);
    std::size_t depth = joint_depth(f.joint);
    auto s_ax = state_axes(depth);
    std::size_t n_states = f.step_likelihood.cols();

    JointTable f_s = f.joint.marginalize(s_ax);
    JointTable t_s = t.joint.marginalize(s_ax);
    double risk = kl_divergence_nats(f_s.values(), t_s.values());

    // Sequence-level ambiguity via the conditional observation joint.
    double ambiguity = 0.0;
    for (std::size_t sf = 0; sf < f_s.values().size(); ++sf) {
        double w = f_s.values()[sf];
        if (w <= 0.0) continue;
        JointTable o_given_s =
            f.joint.condition(block_assignment(sf, s_ax, n_states));
        ambiguity += w * entropy_nats(o_given_s.values());
    }
    return risk + ambiguity;
}

double efe_3e(const ForecastDistribution& f, const TargetDistribution& t) {
    shape_check(f, t);
    std::size_t depth = joint_depth(f.joint);

    JointTable f_s = f.joint.marginalize(state_axes(depth));
    double state_entropy = entropy_nats(f_s.values());

    double expected_energy = 0.0;
    const std::vector<double>& fv = f.joint.values();
    const std::vector<double>& tv = t.joint.values();
    for (std::size_t i = 0; i < fv.size(); ++i) {
        if (fv[i] <= 0.0) continue;
        if (tv[i] <= 0.0) return kInf;
        expected_energy -= fv[i] * std::log(tv[i]);
    }
    return -state_entropy + expected_energy;
}

EfeReport unification_report(const ForecastDistribution& f,
                             const TargetDistribution& t, const Policy& pi) {
    shape_check(f, t);
    std::size_t depth = joint_depth(f.joint);
    auto o_ax = obs_axes(depth);
    auto s_ax = state_axes(depth);
    std::size_t n_obs = f.step_likelihood.rows();
    std::size_t n_states = f.step_likelihood.cols();

    EfeReport r;
    r.policy = pi;
    r.roa = efe_roa(f, t);
    r.igpv = efe_igpv(f, t);
    r.rsa = efe_rsa(f, t);
    r.e3 = efe_3e(f, t);
    r.infinite.roa = std::isinf(r.roa);
    r.infinite.igpv = std::isinf(r.igpv);
    r.infinite.rsa = std::isinf(r.rsa);
    r.infinite.e3 = std::isinf(r.e3);

    r.residual_roa_igpv = extended_residual(r.roa, r.igpv);
    r.residual_rsa_e3 = extended_residual(r.rsa, r.e3);
    if (!r.infinite.roa) {
        r.gap = r.infinite.rsa ? kInf : r.rsa - r.roa;
    } else {
        r.gap = std::numeric_limits<double>::quiet_NaN();
    }

    JointTable f_o = f.joint.marginalize(o_ax);
    JointTable f_s = f.joint.marginalize(s_ax);
    JointTable t_o = t.joint.marginalize(o_ax);
    JointTable t_s = t.joint.marginalize(s_ax);
    std::size_t n_o_flat = f_o.values().size();
    std::size_t n_s_flat = f_s.values().size();

    // Diagnostics, each from its defining expression.
    r.risk_obs = kl_divergence_nats(f_o.values(), t_o.values());
    r.risk_states = kl_divergence_nats(f_s.values(), t_s.values());
    r.state_entropy = entropy_nats(f_s.values());

    r.step_ambiguity.assign(depth, 0.0);
    for (std::size_t k = 1; k <= depth; ++k) {
        Categorical s_k = f.joint.marginal("s" + std::to_string(k));
        double amb = 0.0;
        for (std::size_t s = 0; s < n_states; ++s) {
            if (s_k[s] <= 0.0) continue;
            std::vector<double> col = f.step_likelihood.col(s);
            amb += s_k[s] * entropy_nats(col);
        }
        r.step_ambiguity[k - 1] = amb;
    }

    r.ambiguity = 0.0;
    std::vector<JointTable> o_given_s;
    o_given_s.reserve(n_s_flat);
    for (std::size_t sf = 0; sf < n_s_flat; ++sf) {
        if (f_s.values()[sf] <= 0.0) {
            o_given_s.emplace_back(JointTable({}, {1.0}, true));
            continue;
        }
        o_given_s.push_back(
            f.joint.condition(block_assignment(sf, s_ax, n_states)));
        r.ambiguity +=
            f_s.values()[sf] * entropy_nats(o_given_s.back().values());
    }

    r.info_gain = 0.0;
    r.pragmatic_value = 0.0;
    bool pragmatic_infinite = false;
    r.gap_oracle = 0.0;
    r.bayes_residual = 0.0;
    for (std::size_t of = 0; of < n_o_flat; ++of) {
        double w = f_o.values()[of];
        if (w <= 0.0) continue;
        JointTable s_given_o =
            f.joint.condition(block_assignment(of, o_ax, n_obs));
        r.info_gain += w * kl_divergence_nats(s_given_o.values(), f_s.values());
        if (t_o.values()[of] <= 0.0) {
            pragmatic_infinite = true;
        } else {
            r.pragmatic_value += w * std::log(t_o.values()[of]);
        }

        // Target conditional from the raw target slice.
        double t_slice_mass = 0.0;
        std::vector<double> t_cond(n_s_flat, 0.0);
        for (std::size_t sf = 0; sf < n_s_flat; ++sf) {
            t_cond[sf] = t.joint.values()[of * n_s_flat + sf];
            t_slice_mass += t_cond[sf];
        }
        if (t_slice_mass <= 0.0) {
            r.gap_oracle = kInf;
        } else {
            for (double& v : t_cond) v /= t_slice_mass;
            r.gap_oracle +=
                w * kl_divergence_nats(s_given_o.values(), t_cond);
        }

        for (std::size_t sf = 0; sf < n_s_flat; ++sf) {
            if (f.joint.values()[of * n_s_flat + sf] <= 0.0) continue;
            double lhs = f_s.values()[sf] / s_given_o.values()[sf];
            double rhs = f_o.values()[of] / o_given_s[sf].values()[of];
            r.bayes_residual = std::max(r.bayes_residual, std::abs(lhs - rhs));
        }
    }
    if (pragmatic_infinite) r.pragmatic_value = -kInf;

    r.expected_energy = 0.0;
    for (std::size_t i = 0; i < f.joint.values().size(); ++i) {
        double fv = f.joint.values()[i];
        if (fv <= 0.0) continue;
        double tv = t.joint.values()[i];
        if (tv <= 0.0) {
            r.expected_energy = kInf;
            break;
        }
        r.expected_energy -= fv * std::log(tv);
    }

    // Energy decomposition: expected energy vs ambiguity minus expected
    // log preference, evaluated from per-step marginals.
    double pref_term = 0.0;
    bool pref_infinite = false;
    for (std::size_t k = 1; k <= depth && !pref_infinite; ++k) {
        Categorical s_k = f.joint.marginal("s" + std::to_string(k));
        const Categorical& prefs = t.state_prefs[k - 1];
        for (std::size_t s = 0; s < n_states; ++s) {
            if (s_k[s] <= 0.0) continue;
            if (prefs[s] <= 0.0) {
                pref_infinite = true;
                break;
            }
            pref_term += s_k[s] * std::log(prefs[s]);
        }
    }
    double decomposition_rhs =
        pref_infinite ? kInf : r.ambiguity - pref_term;
    r.residual_energy_decomposition =
        extended_residual(r.expected_energy, decomposition_rhs);

    return r;
}

RootCapabilities roa_as_root_capabilities() {
    return RootCapabilities{true, true, true, true, false};
}

RootCapabilities rsa_as_root_capabilities() {
    return RootCapabilities{false, true, false, true, true};
}

} // namespace efekit
