#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace efekit {

inline constexpr double kValidationTol = 1e-9;

/// Entropy in nats of a nonnegative vector treated as a distribution.
/// Zero entries contribute zero.
double entropy_nats(std::span<const double> p);

/// KL(p || q) in nats. Returns +infinity when p has mass where q has none.
double kl_divergence_nats(std::span<const double> p, std::span<const double> q);

/// Normalizes weights in place to sum to one.
/// Throws NegativeWeightError / AllZeroError on bad input.
void normalize_weights(std::vector<double>& w);

/// Finite categorical distribution with optional outcome labels.
/// Invariant: probs() sums to one within kValidationTol and is nonnegative.
class Categorical {
public:
    /// Validates and stores. Weights need not be normalized; they are
    /// rescaled to sum to one.
    explicit Categorical(std::vector<double> weights,
                         std::vector<std::string> labels = {});

    const std::vector<double>& probs() const { return probs_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

    double entropy() const;
    static double kl_divergence(const Categorical& p, const Categorical& q);

private:
    std::vector<double> probs_;
    std::vector<std::string> labels_;
};

} // namespace efekit
