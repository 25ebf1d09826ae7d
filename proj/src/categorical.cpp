#include "efekit/categorical.hpp"

#include "efekit/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace efekit {

double entropy_nats(std::span<const double> p) {
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

double kl_divergence_nats(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw LengthMismatchError("kl_divergence: size mismatch");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
            d += p[i] * std::log(p[i] / q[i]);
        }
    }
    return d;
}

void normalize_weights(std::vector<double>& w) {
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0.0) {
            std::ostringstream msg;
            msg << "negative weight " << w[i] << " at index " << i;
            throw NegativeWeightError(msg.str());
        }
        total += w[i];
    }
    if (total <= 0.0) {
        throw AllZeroError("cannot normalize: all weights are zero");
    }
    for (double& v : w) v /= total;
}

Categorical::Categorical(std::vector<double> weights,
                         std::vector<std::string> labels)
    : probs_(std::move(weights)), labels_(std::move(labels)) {
    if (probs_.empty()) {
        throw InvalidDistributionError("categorical must have at least one outcome");
    }
    if (!labels_.empty() && labels_.size() != probs_.size()) {
        throw LengthMismatchError("label count does not match outcome count");
    }
    normalize_weights(probs_);
}

double Categorical::entropy() const { return entropy_nats(probs_); }

double Categorical::kl_divergence(const Categorical& p, const Categorical& q) {
    return kl_divergence_nats(p.probs_, q.probs_);
}

} // namespace efekit
