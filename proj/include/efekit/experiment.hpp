#pragma once

#include "efekit/categorical.hpp"
#include "efekit/efe.hpp"
#include "efekit/environment.hpp"
#include "efekit/exec.hpp"
#include "efekit/planner.hpp"
#include "efekit/pomdp.hpp"
#include "efekit/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace efekit {

enum class ActionSelection { argmin, softmax };

/// Experiment description, loadable from a JSON file whose keys mirror
/// the field names. model_path, prefs_path, and env_model_path resolve
/// relative to the config file; output_dir resolves relative to the
/// working directory.
struct ExperimentConfig {
    std::string model_path;
    std::string prefs_path;
    std::size_t horizon_depth = 1;
    Formulation formulation = Formulation::roa;
    std::size_t episodes = 1;
    std::size_t steps_per_episode = 1;
    ActionSelection action_selection = ActionSelection::argmin;
    double temperature = 1.0;
    std::uint64_t seed = 0;
    std::string output_dir;
    bool checks_enabled = true;
    /// Environment dynamics; the agent's model when absent.
    std::optional<std::string> env_model_path;
    /// Initial true state; sampled from the environment prior when
    /// absent.
    std::optional<std::size_t> env_initial_state;
};

/// Parses and validates a config file. Unknown keys, missing required
/// keys, and invariant violations raise ParseError.
ExperimentConfig load_config(const std::string& path);

/// Loaded inputs of one experiment.
struct ExperimentSetup {
    PomdpModel agent_model;
    PomdpModel env_model;
    std::vector<Categorical> state_prefs;
};

ExperimentSetup load_setup(const ExperimentConfig& cfg);

/// One perception-planning-action step. Reports are kept in policy
/// enumeration order; chosen indexes into them.
struct StepRecord {
    std::size_t step = 0;
    std::size_t observation = 0;
    std::vector<double> posterior;
    std::vector<EfeReport> reports;
    std::vector<std::size_t> ranking;
    std::size_t chosen = 0;
    std::size_t action = 0;
};

struct EpisodeTrace {
    std::size_t episode = 0;
    std::vector<StepRecord> steps;
};

/// Runs one episode: observe, update the exact posterior over the
/// history, plan, act with the first action of the selected policy.
/// Deterministic given the seeds. ZeroEvidenceError carries the step at
/// which the observation history became impossible.
EpisodeTrace run_episode(Environment& env, const ExperimentSetup& setup,
                         const ExperimentConfig& cfg, SeededRng& selection,
                         std::size_t episode_index, Exec exec = Exec::serial);

/// Identity and bound audit aggregated over every report of a run.
struct CheckSummary {
    double max_residual_roa_igpv = 0.0;
    double max_residual_rsa_e3 = 0.0;
    double max_bayes_residual = 0.0;
    double max_energy_residual = 0.0;
    /// Smallest finite rsa - roa gap; +infinity when none was finite.
    double min_gap = 0.0;
    /// Count of finite gaps below -1e-9.
    std::size_t bound_violations = 0;
    std::size_t reports_audited = 0;

    bool passed() const;
};

CheckSummary audit_reports(const std::vector<EpisodeTrace>& traces);

struct ExperimentResult {
    std::vector<EpisodeTrace> traces;
    CheckSummary checks;
    std::string csv_path;
    std::string summary_path;
};

/// Runs all episodes and writes report files into cfg.output_dir:
/// steps.csv (one row per policy per step) and summary.json. Identical
/// config and seed produce byte-identical files.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                Exec exec = Exec::serial);

/// CSV column header, exactly as written to steps.csv.
const char* csv_header();

} // namespace efekit
