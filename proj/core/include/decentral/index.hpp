#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace decentral {

/// Nonnegative probability weights summing to one.
class WeightDistribution {
public:
    /// Validates nonemptiness, nonnegativity and unit sum (1e-9 absolute).
    explicit WeightDistribution(std::vector<double> weights);

    /// Uniform distribution over `n` outcomes.
    static WeightDistribution uniform(std::size_t n);

    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    /// Number of strictly positive weights.
    std::size_t support_size() const noexcept;

    double operator[](std::size_t i) const { return weights_[i]; }

private:
    std::vector<double> weights_;
};

/// Tolerance used when validating that a distribution sums to one.
inline constexpr double kWeightSumTolerance = 1e-9;

/// Normalizes transaction values into weights v_i / sum(v). Zero values keep
/// their position with weight 0. Throws AllZero or NegativeValue.
WeightDistribution weights(std::span<const double> values);

/// Shannon entropy in bits over the positive weights (0 log 0 = 0).
double shannon_entropy_bits(const WeightDistribution& dist);

/// Effective number of transactions: 2 raised to the Shannon entropy of the
/// value weights. Values are sorted ascending before accumulation, so the
/// result is bitwise independent of input order. Throws AllZero or
/// NegativeValue.
double decentralization_index(std::span<const double> values);

/// Same quantity evaluated directly on a weight distribution.
double decentralization_index(const WeightDistribution& dist);

/// Product form prod p_i^(-p_i). Independent route to the same index, used for
/// cross-checking.
double decentralization_index_product(std::span<const double> values);

/// Population Gini coefficient (mean absolute difference over twice the mean).
double gini(const WeightDistribution& dist);

/// Herfindahl-Hirschman index, sum of squared weights.
double hhi(const WeightDistribution& dist);

/// Smallest number of largest weights whose sum reaches `threshold`.
/// Requires 0 < threshold <= 1.
std::size_t nakamoto(const WeightDistribution& dist, double threshold = 0.51);

}  // namespace decentral
