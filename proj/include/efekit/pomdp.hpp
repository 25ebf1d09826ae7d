#pragma once

#include "efekit/dag.hpp"
#include "efekit/errors.hpp"
#include "efekit/linalg.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace efekit {

/// Discrete POMDP generative model.
/// Conventions: likelihood_a is n_obs x n_states with column s = P(o | s);
/// each transitions_b[a] is n_states x n_states with column s = P(s' | s, a).
struct PomdpModel {
    std::vector<std::string> states;
    std::vector<std::string> observations;
    std::vector<std::string> actions;
    std::vector<double> prior_d;
    Matrix likelihood_a;
    std::vector<Matrix> transitions_b;

    std::size_t n_states() const { return states.size(); }
    std::size_t n_obs() const { return observations.size(); }
    std::size_t n_actions() const { return actions.size(); }
};

/// Report-style validation outcome: empty iff the model is sound.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report)
        : Error(report.to_string()), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Checks stochasticity of every column and all dimension couplings.
ValidationReport validate_model(const PomdpModel& m);

/// Time-unrolled Bayesian network of the model: nodes s0..s_{t+d},
/// o0..o_{t+d}, a0..a_{t+d-1}; edges s_tau -> o_tau, s_{tau-1} -> s_tau,
/// a_{tau-1} -> s_tau.
Dag to_dag(const PomdpModel& m, std::size_t past_steps,
           std::size_t future_steps);

/// Loads and validates a model JSON file.
/// Throws ParseError on malformed input, ValidationError on a bad model.
PomdpModel load_model(const std::string& path);

/// Writes the model back as JSON (inverse of load_model).
void save_model(const PomdpModel& m, const std::string& path);

} // namespace efekit
