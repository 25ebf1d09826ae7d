#include "efekit/pomdp.hpp"

#include "efekit/categorical.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace efekit {

namespace {

void check_column(std::vector<std::string>& out, const std::string& where,
                  const Matrix& m, std::size_t c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double v = m(r, c);
        if (v < 0.0) {
            std::ostringstream msg;
            msg << where << " entry (" << r << ", " << c << ") is negative ("
                << v << ")";
            out.push_back(msg.str());
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kValidationTol) {
        std::ostringstream msg;
        msg << where << " column " << c << " sums to " << sum;
        out.push_back(msg.str());
    }
}

std::string time_name(const char* prefix, std::size_t tau) {
    return prefix + std::to_string(tau);
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        rows.push_back(m.row(r));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& rows, const std::string& key) {
    if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
        throw ParseError("'" + key + "' must be a 2-D array");
    }
    std::size_t n_rows = rows.size();
    std::size_t n_cols = rows[0].size();
    std::vector<double> data;
    data.reserve(n_rows * n_cols);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n_cols) {
            throw ParseError("'" + key + "' rows have inconsistent lengths");
        }
        for (const auto& v : row) data.push_back(v.get<double>());
    }
    return Matrix(n_rows, n_cols, std::move(data));
}

} // namespace

std::string ValidationReport::to_string() const {
    if (ok()) return "model valid";
    std::ostringstream out;
    out << "model invalid:";
    for (const std::string& v : violations) out << "\n  - " << v;
    return out.str();
}

ValidationReport validate_model(const PomdpModel& m) {
    ValidationReport report;
    auto& out = report.violations;

    if (m.n_states() == 0) out.push_back("model has no states");
    if (m.n_obs() == 0) out.push_back("model has no observations");
    if (m.n_actions() == 0) out.push_back("model has no actions");

    if (m.prior_d.size() != m.n_states()) {
        std::ostringstream msg;
        msg << "prior length " << m.prior_d.size() << " does not match "
            << m.n_states() << " states";
        out.push_back(msg.str());
    } else {
        double sum = 0.0;
        for (std::size_t i = 0; i < m.prior_d.size(); ++i) {
            if (m.prior_d[i] < 0.0) {
                std::ostringstream msg;
                msg << "prior entry " << i << " is negative (" << m.prior_d[i]
                    << ")";
                out.push_back(msg.str());
            }
            sum += m.prior_d[i];
        }
        if (std::abs(sum - 1.0) > kValidationTol) {
            std::ostringstream msg;
            msg << "prior sums to " << sum;
            out.push_back(msg.str());
        }
    }

    if (m.likelihood_a.rows() != m.n_obs() ||
        m.likelihood_a.cols() != m.n_states()) {
        std::ostringstream msg;
        msg << "likelihood is " << m.likelihood_a.rows() << "x"
            << m.likelihood_a.cols() << ", wants " << m.n_obs() << "x"
            << m.n_states();
        out.push_back(msg.str());
    } else {
        for (std::size_t c = 0; c < m.likelihood_a.cols(); ++c) {
            check_column(out, "likelihood", m.likelihood_a, c);
        }
    }

    if (m.transitions_b.size() != m.n_actions()) {
        std::ostringstream msg;
        msg << "transition count " << m.transitions_b.size()
            << " does not match " << m.n_actions() << " actions";
        out.push_back(msg.str());
    } else {
        for (std::size_t a = 0; a < m.transitions_b.size(); ++a) {
            const Matrix& b = m.transitions_b[a];
            if (b.rows() != m.n_states() || b.cols() != m.n_states()) {
                std::ostringstream msg;
                msg << "transition matrix " << a << " is " << b.rows() << "x"
                    << b.cols() << ", wants " << m.n_states() << "x"
                    << m.n_states();
                out.push_back(msg.str());
                continue;
            }
            std::ostringstream where;
            where << "transition matrix " << a;
            for (std::size_t c = 0; c < b.cols(); ++c) {
                check_column(out, where.str(), b, c);
            }
        }
    }

    return report;
}

Dag to_dag(const PomdpModel& m, std::size_t past_steps,
           std::size_t future_steps) {
    (void)m;
    std::size_t horizon = past_steps + future_steps;

    std::vector<std::string> nodes;
    for (std::size_t tau = 0; tau <= horizon; ++tau) {
        nodes.push_back(time_name("s", tau));
    }
    for (std::size_t tau = 0; tau <= horizon; ++tau) {
        nodes.push_back(time_name("o", tau));
    }
    for (std::size_t tau = 0; tau < horizon; ++tau) {
        nodes.push_back(time_name("a", tau));
    }

    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t tau = 0; tau <= horizon; ++tau) {
        edges.emplace_back(time_name("s", tau), time_name("o", tau));
    }
    for (std::size_t tau = 1; tau <= horizon; ++tau) {
        edges.emplace_back(time_name("s", tau - 1), time_name("s", tau));
        edges.emplace_back(time_name("a", tau - 1), time_name("s", tau));
    }

    return Dag(std::move(nodes), std::move(edges));
}

PomdpModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open model file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("model file '" + path + "': " + e.what());
    }

    for (const char* key : {"states", "observations", "actions", "prior_d",
                            "likelihood_a", "transitions_b"}) {
        if (!doc.contains(key)) {
            throw ParseError("model file '" + path + "' missing key '" +
                             key + "'");
        }
    }

    PomdpModel m;
    try {
        m.states = doc.at("states").get<std::vector<std::string>>();
        m.observations = doc.at("observations").get<std::vector<std::string>>();
        m.actions = doc.at("actions").get<std::vector<std::string>>();
        m.prior_d = doc.at("prior_d").get<std::vector<double>>();
        m.likelihood_a = matrix_from_json(doc.at("likelihood_a"), "likelihood_a");
        for (const auto& b : doc.at("transitions_b")) {
            m.transitions_b.push_back(matrix_from_json(b, "transitions_b"));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("model file '" + path + "': " + e.what());
    }

    ValidationReport report = validate_model(m);
    if (!report.ok()) {
        throw ValidationError(std::move(report));
    }
    return m;
}

void save_model(const PomdpModel& m, const std::string& path) {
    nlohmann::json doc;
    doc["states"] = m.states;
    doc["observations"] = m.observations;
    doc["actions"] = m.actions;
    doc["prior_d"] = m.prior_d;
    doc["likelihood_a"] = matrix_to_json(m.likelihood_a);
    nlohmann::json bs = nlohmann::json::array();
    for (const Matrix& b : m.transitions_b) bs.push_back(matrix_to_json(b));
    doc["transitions_b"] = bs;

    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write model file '" + path + "'");
    }
    out << doc.dump(2) << "\n";
}

} // namespace efekit
