#include "efekit/dsep.hpp"
#include "efekit/efe.hpp"
#include "efekit/errors.hpp"
#include "efekit/experiment.hpp"
#include "efekit/planner.hpp"
#include "efekit/pomdp.hpp"
#include "efekit/predictive.hpp"
#include "efekit/preferences.hpp"
#include "efekit/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace efekit;

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("not a number: '" + item + "'");
        }
    }
    if (out.empty()) throw ParseError("empty number list");
    return out;
}

std::vector<std::string> parse_names(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Matrix load_likelihood(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open likelihood file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("likelihood file " + path + ": " + e.what());
    }
    const nlohmann::json& rows =
        doc.is_object() && doc.contains("likelihood_a") ? doc["likelihood_a"]
                                                        : doc;
    if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
        throw ParseError("likelihood must be a 2-D array or a model file");
    }
    std::size_t n_cols = rows[0].size();
    std::vector<double> data;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n_cols) {
            throw ParseError("likelihood rows have inconsistent lengths");
        }
        for (const auto& v : row) data.push_back(v.get<double>());
    }
    return Matrix(rows.size(), n_cols, data);
}

int cmd_plan(const std::string& model_path, const std::string& prefs_path,
             std::size_t depth, const std::string& formulation_str,
             const std::string& posterior_csv, Exec exec) {
    PomdpModel m = load_model(model_path);
    Formulation f = parse_formulation(formulation_str);
    std::vector<Categorical> prefs =
        load_state_prefs(prefs_path, depth, m.n_states());
    Categorical posterior = posterior_csv.empty()
                                ? Categorical(m.prior_d)
                                : Categorical(parse_doubles(posterior_csv));

    std::vector<EfeReport> ranked = plan(m, posterior, prefs, depth, f, exec);
    std::printf("%-5s %-12s %-14s %-14s %-14s %-14s %-14s\n", "rank",
                "policy", "roa", "igpv", "rsa", "e3", "gap");
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const EfeReport& r = ranked[i];
        std::printf("%-5zu %-12s %-14s %-14s %-14s %-14s %-14s\n", i + 1,
                    r.policy.to_string().c_str(), fmt(r.roa).c_str(),
                    fmt(r.igpv).c_str(), fmt(r.rsa).c_str(),
                    fmt(r.e3).c_str(), fmt(r.gap).c_str());
    }
    return 0;
}

int cmd_run(const std::string& config_path, Exec exec) {
    ExperimentConfig cfg = load_config(config_path);
    ExperimentResult result = run_experiment(cfg, exec);
    std::printf("wrote %s\n", result.csv_path.c_str());
    std::printf("wrote %s\n", result.summary_path.c_str());
    std::printf("reports audited: %zu\n", result.checks.reports_audited);
    std::printf("max residual roa/igpv: %s\n",
                fmt(result.checks.max_residual_roa_igpv).c_str());
    std::printf("max residual rsa/e3:   %s\n",
                fmt(result.checks.max_residual_rsa_e3).c_str());
    std::printf("max bayes residual:    %s\n",
                fmt(result.checks.max_bayes_residual).c_str());
    std::printf("max energy residual:   %s\n",
                fmt(result.checks.max_energy_residual).c_str());
    std::printf("bound violations:      %zu\n",
                result.checks.bound_violations);
    if (!cfg.checks_enabled) {
        std::printf("checks: disabled\n");
        return 0;
    }
    if (result.checks.passed()) {
        std::printf("checks: PASSED\n");
        return 0;
    }
    std::printf("checks: FAILED\n");
    return 2;
}

int cmd_check(const std::string& model_path, const std::string& prefs_path,
              std::size_t depth, std::size_t trials, std::uint64_t seed,
              Exec exec) {
    PomdpModel m = load_model(model_path);
    std::vector<Categorical> prefs;
    if (prefs_path.empty()) {
        std::vector<double> uniform(m.n_states(), 1.0 / m.n_states());
        prefs.assign(depth, Categorical(uniform));
    } else {
        prefs = load_state_prefs(prefs_path, depth, m.n_states());
    }

    SeededRng rng(seed);
    EpisodeTrace synth;
    synth.steps.reserve(trials);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::vector<double> w(m.n_states());
        for (double& v : w) v = rng.next_double() + 1e-12;
        StepRecord rec;
        rec.step = trial;
        rec.reports = evaluate_policies(m, Categorical(w), prefs, depth, exec);
        synth.steps.push_back(std::move(rec));
    }
    CheckSummary checks = audit_reports({synth});
    std::printf("posteriors tried: %zu, reports audited: %zu\n", trials,
                checks.reports_audited);
    std::printf("max residual roa/igpv: %s\n",
                fmt(checks.max_residual_roa_igpv).c_str());
    std::printf("max residual rsa/e3:   %s\n",
                fmt(checks.max_residual_rsa_e3).c_str());
    std::printf("max bayes residual:    %s\n",
                fmt(checks.max_bayes_residual).c_str());
    std::printf("max energy residual:   %s\n",
                fmt(checks.max_energy_residual).c_str());
    std::printf("min gap:               %s\n", fmt(checks.min_gap).c_str());
    std::printf("bound violations:      %zu\n", checks.bound_violations);
    if (checks.passed()) {
        std::printf("audit: PASSED\n");
        return 0;
    }
    std::printf("audit: FAILED\n");
    return 2;
}

int cmd_prefcheck(const std::string& likelihood_path,
                  const std::string& c_obs_csv, bool as_json) {
    Matrix a = load_likelihood(likelihood_path);
    Categorical c_o(parse_doubles(c_obs_csv));
    FeasibilityVerdict verdict = feasibility_check(a, c_o);

    if (as_json) {
        nlohmann::json doc;
        doc["feasible"] = verdict.feasible;
        doc["ill_conditioned"] = verdict.ill_conditioned;
        doc["raw_solution"] = verdict.raw_solution;
        doc["residual"] = verdict.residual;
        doc["certificate"] = verdict.certificate;
        if (verdict.c_s) {
            doc["c_s"] = verdict.c_s->probs();
        } else {
            doc["c_s"] = nullptr;
        }
        std::printf("%s\n", doc.dump(2).c_str());
    } else {
        std::printf("feasible: %s\n", verdict.feasible ? "yes" : "no");
        std::printf("ill_conditioned: %s\n",
                    verdict.ill_conditioned ? "yes" : "no");
        std::string raw;
        for (std::size_t i = 0; i < verdict.raw_solution.size(); ++i) {
            if (i) raw += ", ";
            raw += fmt(verdict.raw_solution[i]);
        }
        std::printf("raw_solution: [%s]\n", raw.c_str());
        std::printf("residual: %s\n", fmt(verdict.residual).c_str());
        if (verdict.c_s) {
            std::string cs;
            for (std::size_t i = 0; i < verdict.c_s->size(); ++i) {
                if (i) cs += ", ";
                cs += fmt((*verdict.c_s)[i]);
            }
            std::printf("c_s: [%s]\n", cs.c_str());
        }
        std::printf("certificate: %s\n", verdict.certificate.c_str());
    }
    return verdict.feasible ? 0 : 1;
}

int cmd_dsep(const std::string& dag_path, const std::string& x_csv,
             const std::string& y_csv, const std::string& given_csv) {
    Dag g = load_dag(dag_path);
    auto to_indices = [&](const std::string& csv) {
        std::vector<std::size_t> out;
        for (const std::string& name : parse_names(csv)) {
            out.push_back(g.index(name));
        }
        return out;
    };
    std::vector<std::size_t> x = to_indices(x_csv);
    std::vector<std::size_t> y = to_indices(y_csv);
    std::vector<std::size_t> s =
        given_csv.empty() ? std::vector<std::size_t>{} : to_indices(given_csv);

    DsepResult result = d_separated_witness(g, x, y, s);
    if (result.separated) {
        std::printf("separated\n");
        return 0;
    }
    const std::vector<std::size_t>& w = result.witness->vertices;
    std::string rendered = g.name(w[0]);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        rendered += g.has_edge(w[i], w[i + 1]) ? " -> " : " <- ";
        rendered += g.name(w[i + 1]);
    }
    std::printf("connected\nwitness: %s\n", rendered.c_str());
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active-inference planning toolkit"};
    app.require_subcommand(1);

    bool serial = false;
    app.add_flag("--serial", serial,
                 "Single-threaded evaluation (default uses all cores)");

    auto* plan_cmd =
        app.add_subcommand("plan", "Rank all policies for one belief state");
    std::string plan_model, plan_prefs, plan_formulation = "roa";
    std::string plan_posterior;
    std::size_t plan_depth = 1;
    plan_cmd->add_option("--model", plan_model, "Model JSON file")->required();
    plan_cmd->add_option("--prefs", plan_prefs, "Preference JSON file")
        ->required();
    plan_cmd->add_option("--depth", plan_depth, "Planning depth");
    plan_cmd->add_option("--formulation", plan_formulation,
                         "roa, igpv, rsa, or e3");
    plan_cmd->add_option("--posterior", plan_posterior,
                         "Belief over states, comma separated; the model "
                         "prior when omitted");

    auto* run_cmd =
        app.add_subcommand("run", "Run an experiment from a config file");
    std::string run_config;
    run_cmd->add_option("--config", run_config, "Experiment config JSON")
        ->required();

    auto* check_cmd = app.add_subcommand(
        "check", "Audit the formulation identities on a model");
    std::string check_model, check_prefs;
    std::size_t check_depth = 1, check_trials = 20;
    std::uint64_t check_seed = 0;
    check_cmd->add_option("--model", check_model, "Model JSON file")
        ->required();
    check_cmd->add_option("--prefs", check_prefs,
                          "Preference JSON file; uniform when omitted");
    check_cmd->add_option("--depth", check_depth, "Planning depth");
    check_cmd->add_option("--trials", check_trials,
                          "Random posteriors to audit");
    check_cmd->add_option("--seed", check_seed, "Posterior sampling seed");

    auto* pref_cmd = app.add_subcommand(
        "prefcheck", "Decide whether observation preferences are reachable");
    std::string pref_likelihood, pref_c_obs;
    bool pref_json = false;
    pref_cmd
        ->add_option("--likelihood", pref_likelihood,
                     "JSON file: 2-D array or a model with likelihood_a")
        ->required();
    pref_cmd
        ->add_option("--c-obs", pref_c_obs,
                     "Observation preference vector, comma separated")
        ->required();
    pref_cmd->add_flag("--json", pref_json, "Emit the verdict as JSON");

    auto* dsep_cmd =
        app.add_subcommand("dsep", "d-separation query on a DAG file");
    std::string dsep_dag, dsep_x, dsep_y, dsep_given;
    dsep_cmd->add_option("--dag", dsep_dag, "DAG JSON file")->required();
    dsep_cmd->add_option("--x", dsep_x, "First vertex set, comma separated")
        ->required();
    dsep_cmd->add_option("--y", dsep_y, "Second vertex set, comma separated")
        ->required();
    dsep_cmd->add_option("--given", dsep_given,
                         "Conditioning set, comma separated");

    CLI11_PARSE(app, argc, argv);
    Exec exec = serial ? Exec::serial : Exec::parallel;

    try {
        if (plan_cmd->parsed()) {
            return cmd_plan(plan_model, plan_prefs, plan_depth,
                            plan_formulation, plan_posterior, exec);
        }
        if (run_cmd->parsed()) return cmd_run(run_config, exec);
        if (check_cmd->parsed()) {
            return cmd_check(check_model, check_prefs, check_depth,
                             check_trials, check_seed, exec);
        }
        if (pref_cmd->parsed()) {
            return cmd_prefcheck(pref_likelihood, pref_c_obs, pref_json);
        }
        if (dsep_cmd->parsed()) {
            return cmd_dsep(dsep_dag, dsep_x, dsep_y, dsep_given);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
