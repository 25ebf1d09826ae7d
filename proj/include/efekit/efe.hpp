#pragma once

#include "efekit/predictive.hpp"

#include <string>
#include <vector>

namespace efekit {

/// The four expected-free-energy formulations.
enum class Formulation {
    roa,  // risk over observations + ambiguity (root definition)
    igpv, // negative information gain + negative pragmatic value
    rsa,  // risk over states + ambiguity
    e3,   // negative entropy + expected energy
};

std::string formulation_name(Formulation f);
Formulation parse_formulation(const std::string& name);

/// Worked result for one policy: the four values, the identity residuals
/// between them, and per-term diagnostics. Values are extended reals;
/// +infinity marks forecast mass on zero-support targets.
struct EfeReport {
    Policy policy;

    double roa = 0.0;
    double igpv = 0.0;
    double rsa = 0.0;
    double e3 = 0.0;

    /// rsa - roa; NaN when both are infinite.
    double gap = 0.0;
    /// Independent evaluation of the gap: E_{F(obar)}[KL[F(sbar|obar) ||
    /// T(sbar|obar)]].
    double gap_oracle = 0.0;

    double residual_roa_igpv = 0.0;
    double residual_rsa_e3 = 0.0;
    /// Max violation of F(sbar)/F(sbar|obar) = F(obar)/F(obar|sbar) over
    /// positive-mass cells of the forecast joint.
    double bayes_residual = 0.0;
    /// |expected_energy - (ambiguity - sum_k E_{F(s_k)}[ln prefs_k])|.
    double residual_energy_decomposition = 0.0;

    struct InfiniteFlags {
        bool roa = false;
        bool igpv = false;
        bool rsa = false;
        bool e3 = false;
    } infinite;

    // Term-level diagnostics.
    double risk_obs = 0.0;       // KL[F(obar) || T(obar)]
    double risk_states = 0.0;    // KL[F(sbar) || T(sbar)]
    double ambiguity = 0.0;      // E_{F(sbar)}[H[F(obar|sbar)]]
    double info_gain = 0.0;      // E_{F(obar)}[KL[F(sbar|obar) || F(sbar)]]
    double pragmatic_value = 0.0; // E_{F(obar)}[ln T(obar)]
    double state_entropy = 0.0;  // H[F(sbar)]
    double expected_energy = 0.0; // -E_{F(obar,sbar)}[ln T(obar,sbar)]
    std::vector<double> step_ambiguity; // E_{F(s_k)}[H[likelihood(.|s_k)]]

    double value(Formulation f) const;
};

/// KL[F(obar) || T(obar)] plus per-step expected likelihood entropy.
double efe_roa(const ForecastDistribution& f, const TargetDistribution& t);

/// Negative expected information gain minus expected log target
/// observation probability.
double efe_igpv(const ForecastDistribution& f, const TargetDistribution& t);

/// KL[F(sbar) || T(sbar)] plus expected entropy of the conditional
/// observation sequence.
double efe_rsa(const ForecastDistribution& f, const TargetDistribution& t);

/// Negative forecast state entropy plus expected energy.
double efe_3e(const ForecastDistribution& f, const TargetDistribution& t);

/// Evaluates all four formulations independently and cross-checks the
/// equalities, the bound, and the ratio identity. Never throws on
/// zero-support targets; infinities are flagged instead.
EfeReport unification_report(const ForecastDistribution& f,
                             const TargetDistribution& t, const Policy& pi);

/// Which formulations a given root definition can recover, and whether
/// that root carries an independent justification.
struct RootCapabilities {
    bool recovers_igpv = false;
    bool recovers_rsa = false;
    bool recovers_roa = false;
    bool recovers_e3 = false;
    bool justified = false;
};

RootCapabilities roa_as_root_capabilities();
RootCapabilities rsa_as_root_capabilities();

} // namespace efekit
