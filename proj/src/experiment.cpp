#include "efekit/experiment.hpp"

#include "efekit/errors.hpp"
#include "efekit/inference.hpp"
#include "efekit/predictive.hpp"
#include "efekit/preferences.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <string>
#include <utility>

namespace efekit {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError("config " + path + ": " + e.what());
    }
    return doc;
}

std::string resolve_against(const std::string& base_file,
                            const std::string& rel) {
    std::filesystem::path p(rel);
    if (p.is_absolute()) return rel;
    return (std::filesystem::path(base_file).parent_path() / p).string();
}

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json capability_json(const RootCapabilities& c) {
    return json{{"recovers_roa", c.recovers_roa},
                {"recovers_igpv", c.recovers_igpv},
                {"recovers_rsa", c.recovers_rsa},
                {"recovers_e3", c.recovers_e3},
                {"independently_justified", c.justified}};
}

} // namespace

ExperimentConfig load_config(const std::string& path) {
    json doc = read_json_file(path);
    if (!doc.is_object()) throw ParseError("config must be a JSON object");

    static const std::set<std::string> known = {
        "model_path",      "prefs_path",       "horizon_depth",
        "formulation",     "episodes",         "steps_per_episode",
        "action_selection", "temperature",     "seed",
        "output_dir",      "checks_enabled",   "env_model_path",
        "env_initial_state"};
    for (const auto& item : doc.items()) {
        if (!known.count(item.key())) {
            throw ParseError("config key not recognized: " + item.key());
        }
    }

    auto require = [&](const char* key) -> const json& {
        if (!doc.contains(key)) {
            throw ParseError(std::string("config key missing: ") + key);
        }
        return doc.at(key);
    };

    ExperimentConfig cfg;
    try {
        cfg.model_path = resolve_against(path, require("model_path"));
        cfg.prefs_path = resolve_against(path, require("prefs_path"));
        cfg.horizon_depth = require("horizon_depth").get<std::size_t>();
        cfg.formulation =
            parse_formulation(require("formulation").get<std::string>());
        cfg.episodes = require("episodes").get<std::size_t>();
        cfg.steps_per_episode =
            require("steps_per_episode").get<std::size_t>();
        cfg.seed = require("seed").get<std::uint64_t>();
        cfg.output_dir = require("output_dir").get<std::string>();

        if (doc.contains("action_selection")) {
            std::string mode = doc.at("action_selection").get<std::string>();
            if (mode == "argmin") {
                cfg.action_selection = ActionSelection::argmin;
            } else if (mode == "softmax") {
                cfg.action_selection = ActionSelection::softmax;
            } else {
                throw ParseError("action_selection must be argmin or "
                                 "softmax, got: " +
                                 mode);
            }
        }
        if (doc.contains("temperature")) {
            cfg.temperature = doc.at("temperature").get<double>();
        }
        if (doc.contains("checks_enabled")) {
            cfg.checks_enabled = doc.at("checks_enabled").get<bool>();
        }
        if (doc.contains("env_model_path")) {
            cfg.env_model_path = resolve_against(
                path, doc.at("env_model_path").get<std::string>());
        }
        if (doc.contains("env_initial_state")) {
            cfg.env_initial_state =
                doc.at("env_initial_state").get<std::size_t>();
        }
    } catch (const json::exception& e) {
        throw ParseError("config " + path + ": " + e.what());
    }

    if (cfg.horizon_depth < 1) {
        throw ParseError("horizon_depth must be at least 1");
    }
    if (cfg.episodes < 1) throw ParseError("episodes must be at least 1");
    if (cfg.steps_per_episode < 1) {
        throw ParseError("steps_per_episode must be at least 1");
    }
    if (cfg.action_selection == ActionSelection::softmax &&
        !(cfg.temperature > 0.0)) {
        throw ParseError("softmax temperature must be positive");
    }
    return cfg;
}

ExperimentSetup load_setup(const ExperimentConfig& cfg) {
    ExperimentSetup setup;
    setup.agent_model = load_model(cfg.model_path);
    setup.env_model = cfg.env_model_path ? load_model(*cfg.env_model_path)
                                         : setup.agent_model;
    setup.state_prefs = load_state_prefs(cfg.prefs_path, cfg.horizon_depth,
                                         setup.agent_model.n_states());
    return setup;
}

EpisodeTrace run_episode(Environment& env, const ExperimentSetup& setup,
                         const ExperimentConfig& cfg, SeededRng& selection,
                         std::size_t episode_index, Exec exec) {
    EpisodeTrace trace;
    trace.episode = episode_index;
    trace.steps.reserve(cfg.steps_per_episode);

    std::vector<std::size_t> obs_hist;
    std::vector<std::size_t> act_hist;

    for (std::size_t step = 0; step < cfg.steps_per_episode; ++step) {
        StepRecord rec;
        rec.step = step;
        rec.observation = env.observe();
        obs_hist.push_back(rec.observation);

        PosteriorChain chain =
            exact_filter_posterior(setup.agent_model, obs_hist, act_hist);
        const Categorical& posterior = chain.marginals.back();
        rec.posterior = posterior.probs();

        rec.reports = evaluate_policies(setup.agent_model, posterior,
                                        setup.state_prefs, cfg.horizon_depth,
                                        exec);
        rec.ranking = rank_reports(rec.reports, cfg.formulation);

        if (cfg.action_selection == ActionSelection::argmin) {
            rec.chosen = rec.ranking.front();
        } else {
            // Weights exp(-(G - G_min) / T); infinite values get zero
            // weight. All-infinite tables fall back to the top rank.
            double best = std::numeric_limits<double>::infinity();
            for (const EfeReport& r : rec.reports) {
                best = std::min(best, r.value(cfg.formulation));
            }
            if (std::isinf(best)) {
                rec.chosen = rec.ranking.front();
            } else {
                std::vector<double> weights(rec.reports.size());
                for (std::size_t i = 0; i < weights.size(); ++i) {
                    double g = rec.reports[i].value(cfg.formulation);
                    weights[i] = std::isinf(g) ? 0.0
                                               : std::exp(-(g - best) /
                                                          cfg.temperature);
                }
                rec.chosen = selection.sample_index(weights);
            }
        }

        rec.action = rec.reports[rec.chosen].policy.actions.front();
        env.step(rec.action);
        act_hist.push_back(rec.action);
        trace.steps.push_back(std::move(rec));
    }
    return trace;
}

bool CheckSummary::passed() const {
    return max_residual_roa_igpv <= 1e-8 && max_residual_rsa_e3 <= 1e-8 &&
           max_bayes_residual <= 1e-9 && max_energy_residual <= 1e-8 &&
           bound_violations == 0;
}

CheckSummary audit_reports(const std::vector<EpisodeTrace>& traces) {
    CheckSummary sum;
    sum.min_gap = std::numeric_limits<double>::infinity();
    for (const EpisodeTrace& trace : traces) {
        for (const StepRecord& rec : trace.steps) {
            for (const EfeReport& r : rec.reports) {
                ++sum.reports_audited;
                sum.max_residual_roa_igpv =
                    std::max(sum.max_residual_roa_igpv, r.residual_roa_igpv);
                sum.max_residual_rsa_e3 =
                    std::max(sum.max_residual_rsa_e3, r.residual_rsa_e3);
                sum.max_bayes_residual =
                    std::max(sum.max_bayes_residual, r.bayes_residual);
                sum.max_energy_residual =
                    std::max(sum.max_energy_residual,
                             r.residual_energy_decomposition);
                if (std::isfinite(r.gap)) {
                    sum.min_gap = std::min(sum.min_gap, r.gap);
                    if (r.gap < -1e-9) ++sum.bound_violations;
                }
            }
        }
    }
    return sum;
}

const char* csv_header() {
    return "episode,step,policy,roa,igpv,rsa,e3,gap,residual_roa_igpv,"
           "residual_rsa_e3,bayes_residual,chosen";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, Exec exec) {
    ExperimentSetup setup = load_setup(cfg);

    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + cfg.output_dir +
                      ": " + ec.message());
    }

    ExperimentResult result;
    result.traces.reserve(cfg.episodes);
    for (std::size_t e = 0; e < cfg.episodes; ++e) {
        std::uint64_t env_seed = mix_seed(cfg.seed, 2 * e + 1);
        Environment env =
            cfg.env_initial_state
                ? Environment(setup.env_model, *cfg.env_initial_state,
                              env_seed)
                : Environment(setup.env_model, env_seed);
        SeededRng selection(mix_seed(cfg.seed, 2 * e));
        result.traces.push_back(
            run_episode(env, setup, cfg, selection, e, exec));
    }

    result.checks = audit_reports(result.traces);

    result.csv_path =
        (std::filesystem::path(cfg.output_dir) / "steps.csv").string();
    {
        std::ofstream csv(result.csv_path, std::ios::binary);
        if (!csv) throw IoError("cannot write " + result.csv_path);
        csv << csv_header() << "\n";
        for (const EpisodeTrace& trace : result.traces) {
            for (const StepRecord& rec : trace.steps) {
                for (std::size_t i = 0; i < rec.reports.size(); ++i) {
                    const EfeReport& r = rec.reports[i];
                    csv << trace.episode << ',' << rec.step << ','
                        << r.policy.to_string() << ',' << format_g12(r.roa)
                        << ',' << format_g12(r.igpv) << ','
                        << format_g12(r.rsa) << ',' << format_g12(r.e3)
                        << ',' << format_g12(r.gap) << ','
                        << format_g12(r.residual_roa_igpv) << ','
                        << format_g12(r.residual_rsa_e3) << ','
                        << format_g12(r.bayes_residual) << ','
                        << (i == rec.chosen ? 1 : 0) << "\n";
                }
            }
        }
    }

    json summary;
    summary["rng_algorithm"] = SeededRng::algorithm();
    summary["formulation"] = formulation_name(cfg.formulation);
    summary["episodes"] = cfg.episodes;
    summary["steps_per_episode"] = cfg.steps_per_episode;
    summary["policies_per_step"] =
        result.traces.front().steps.front().reports.size();
    summary["reports_audited"] = result.checks.reports_audited;
    summary["max_residual_roa_igpv"] = result.checks.max_residual_roa_igpv;
    summary["max_residual_rsa_e3"] = result.checks.max_residual_rsa_e3;
    summary["max_bayes_residual"] = result.checks.max_bayes_residual;
    summary["max_energy_residual"] = result.checks.max_energy_residual;
    summary["bound_violations"] = result.checks.bound_violations;
    if (std::isfinite(result.checks.min_gap)) {
        summary["min_gap"] = result.checks.min_gap;
    } else {
        summary["min_gap"] = nullptr;
    }
    summary["checks_passed"] = result.checks.passed();

    {
        Categorical c_o = observation_prefs_from_state_prefs(
            setup.agent_model.likelihood_a, setup.state_prefs.front());
        FeasibilityVerdict verdict =
            feasibility_check(setup.agent_model.likelihood_a, c_o);
        summary["preference_feasibility"] = {
            {"feasible", verdict.feasible},
            {"ill_conditioned", verdict.ill_conditioned},
            {"residual", verdict.residual},
            {"certificate", verdict.certificate}};
    }
    summary["formulation_capabilities"] = {
        {"roa_root", capability_json(roa_as_root_capabilities())},
        {"rsa_root", capability_json(rsa_as_root_capabilities())}};

    result.summary_path =
        (std::filesystem::path(cfg.output_dir) / "summary.json").string();
    {
        std::ofstream out(result.summary_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + result.summary_path);
        out << summary.dump(2) << "\n";
    }
    return result;
}

} // namespace efekit
