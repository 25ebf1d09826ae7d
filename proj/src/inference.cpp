#include "efekit/inference.hpp"

#include "efekit/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace efekit {

namespace {

void check_sequences(const PomdpModel& m, const std::vector<std::size_t>& obs,
                     const std::vector<std::size_t>& acts) {
    if (obs.empty() || obs.size() != acts.size() + 1) {
        std::ostringstream msg;
        msg << "wants len(obs) = len(acts) + 1, got " << obs.size() << " and "
            << acts.size();
        throw LengthMismatchError(msg.str());
    }
    for (std::size_t o : obs) {
        if (o >= m.n_obs()) {
            throw IndexError("observation index " + std::to_string(o) +
                             " out of range");
        }
    }
    for (std::size_t a : acts) {
        if (a >= m.n_actions()) {
            throw IndexError("action index " + std::to_string(a) +
                             " out of range");
        }
    }
}

struct ForwardPass {
    std::vector<std::vector<double>> alpha; // scaled filtering distributions
    std::vector<double> log_c;              // per-step log normalizers
    bool dead = false;                      // evidence hit zero
    std::size_t dead_step = 0;
};

ForwardPass forward(const PomdpModel& m, const std::vector<std::size_t>& obs,
                    const std::vector<std::size_t>& acts) {
    std::size_t n = m.n_states();
    std::size_t steps = obs.size();
    ForwardPass fwd;
    fwd.alpha.assign(steps, std::vector<double>(n, 0.0));
    fwd.log_c.assign(steps, 0.0);

    double c = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        fwd.alpha[0][s] = m.prior_d[s] * m.likelihood_a(obs[0], s);
        c += fwd.alpha[0][s];
    }
    if (c <= 0.0) {
        fwd.dead = true;
        fwd.dead_step = 0;
        return fwd;
    }
    for (double& v : fwd.alpha[0]) v /= c;
    fwd.log_c[0] = std::log(c);

    for (std::size_t tau = 1; tau < steps; ++tau) {
        const Matrix& b = m.transitions_b[acts[tau - 1]];
        c = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double pred = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                pred += b(j, i) * fwd.alpha[tau - 1][i];
            }
            fwd.alpha[tau][j] = m.likelihood_a(obs[tau], j) * pred;
            c += fwd.alpha[tau][j];
        }
        if (c <= 0.0) {
            fwd.dead = true;
            fwd.dead_step = tau;
            return fwd;
        }
        for (double& v : fwd.alpha[tau]) v /= c;
        fwd.log_c[tau] = std::log(c);
    }
    return fwd;
}

} // namespace

PosteriorChain exact_filter_posterior(const PomdpModel& m,
                                      const std::vector<std::size_t>& obs,
                                      const std::vector<std::size_t>& acts) {
    check_sequences(m, obs, acts);
    std::size_t n = m.n_states();
    std::size_t steps = obs.size();

    ForwardPass fwd = forward(m, obs, acts);
    if (fwd.dead) {
        throw ZeroEvidenceError("observation sequence has probability 0 at step " +
                                    std::to_string(fwd.dead_step),
                                fwd.dead_step);
    }

    // Scaled backward pass; beta[tau] is relative to the forward normalizers.
    std::vector<std::vector<double>> beta(steps, std::vector<double>(n, 1.0));
    for (std::size_t tau = steps - 1; tau-- > 0;) {
        const Matrix& b = m.transitions_b[acts[tau]];
        double scale = std::exp(fwd.log_c[tau + 1]);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += b(j, i) * m.likelihood_a(obs[tau + 1], j) *
                       beta[tau + 1][j];
            }
            beta[tau][i] = acc / scale;
        }
    }

    PosteriorChain chain;
    chain.marginals.reserve(steps);
    for (std::size_t tau = 0; tau < steps; ++tau) {
        std::vector<double> g(n);
        for (std::size_t s = 0; s < n; ++s) {
            g[s] = fwd.alpha[tau][s] * beta[tau][s];
        }
        chain.marginals.emplace_back(std::move(g));
    }

    for (std::size_t tau = 1; tau < steps; ++tau) {
        const Matrix& b = m.transitions_b[acts[tau - 1]];
        double scale = std::exp(fwd.log_c[tau]);
        std::vector<double> xi(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                xi[i * n + j] = fwd.alpha[tau - 1][i] * b(j, i) *
                                m.likelihood_a(obs[tau], j) * beta[tau][j] /
                                scale;
            }
        }
        double total = 0.0;
        for (double v : xi) total += v;
        for (double& v : xi) v /= total;
        chain.pairwise.emplace_back(
            std::vector<Axis>{{"s" + std::to_string(tau - 1), n},
                              {"s" + std::to_string(tau), n}},
            std::move(xi), true);
    }

    return chain;
}

double variational_free_energy(const PomdpModel& m, const PosteriorChain& q,
                               const std::vector<std::size_t>& obs,
                               const std::vector<std::size_t>& acts,
                               SupportPolicy support) {
    check_sequences(m, obs, acts);
    std::size_t steps = obs.size();
    if (q.marginals.size() != steps) {
        throw LengthMismatchError("posterior chain length does not match data");
    }
    for (const Categorical& marg : q.marginals) {
        if (marg.size() != m.n_states()) {
            throw LengthMismatchError("posterior marginal has wrong state count");
        }
    }

    const double inf = std::numeric_limits<double>::infinity();
    auto impossible = [&](const char* what) -> double {
        if (support == SupportPolicy::hard_error) {
            throw SupportError(what);
        }
        return inf;
    };

    // Negative mean-field entropy: -sum_tau H[q_tau].
    double vfe = 0.0;
    for (const Categorical& marg : q.marginals) {
        vfe -= marg.entropy();
    }

    // Cross terms -E_Q[ln P(sbar | abar)] and -E_Q[ln P(obar | sbar)].
    for (std::size_t s = 0; s < m.n_states(); ++s) {
        double w = q.marginals[0][s];
        if (w <= 0.0) continue;
        if (m.prior_d[s] <= 0.0) {
            return impossible("posterior mass on zero-prior state");
        }
        vfe -= w * std::log(m.prior_d[s]);
    }
    for (std::size_t tau = 1; tau < steps; ++tau) {
        const Matrix& b = m.transitions_b[acts[tau - 1]];
        for (std::size_t i = 0; i < m.n_states(); ++i) {
            double wi = q.marginals[tau - 1][i];
            if (wi <= 0.0) continue;
            for (std::size_t j = 0; j < m.n_states(); ++j) {
                double w = wi * q.marginals[tau][j];
                if (w <= 0.0) continue;
                if (b(j, i) <= 0.0) {
                    return impossible("posterior mass on impossible transition");
                }
                vfe -= w * std::log(b(j, i));
            }
        }
    }
    for (std::size_t tau = 0; tau < steps; ++tau) {
        for (std::size_t s = 0; s < m.n_states(); ++s) {
            double w = q.marginals[tau][s];
            if (w <= 0.0) continue;
            if (m.likelihood_a(obs[tau], s) <= 0.0) {
                return impossible("posterior mass on impossible observation");
            }
            vfe -= w * std::log(m.likelihood_a(obs[tau], s));
        }
    }

    return vfe;
}

LogEvidence log_evidence(const PomdpModel& m,
                         const std::vector<std::size_t>& obs,
                         const std::vector<std::size_t>& acts) {
    check_sequences(m, obs, acts);
    ForwardPass fwd = forward(m, obs, acts);
    if (fwd.dead) {
        return {-std::numeric_limits<double>::infinity(), true};
    }
    double total = 0.0;
    for (double lc : fwd.log_c) total += lc;
    return {total, false};
}

} // namespace efekit
