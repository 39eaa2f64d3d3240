#include "decentral/index.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "decentral/error.hpp"
#include "decentral/numeric.hpp"

namespace decentral {

namespace {

void validate_values(std::span<const double> values) {
    bool any_positive = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (std::isnan(v) || v < 0.0) {
            throw Error(ErrorCode::NegativeValue,
                        "transaction value at position " + std::to_string(i) + " is negative or NaN");
        }
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument,
                        "transaction value at position " + std::to_string(i) + " is not finite");
        }
        any_positive = any_positive || v > 0.0;
    }
    if (!any_positive) {
        throw Error(ErrorCode::AllZero, "every transaction value is zero");
    }
}

std::vector<double> sorted_positive(std::span<const double> values) {
    std::vector<double> out;
    out.reserve(values.size());
    std::copy_if(values.begin(), values.end(), std::back_inserter(out), [](double v) { return v > 0.0; });
    std::sort(out.begin(), out.end());
    return out;
}

// Entropy in nats of the ascending positive values, normalized by their total.
double entropy_nats_sorted(std::span<const double> ascending) {
    const double total = compensated_sum(ascending);
    CompensatedSum acc;
    for (double v : ascending) {
        const double p = v / total;
        acc.add(-p * std::log(p));
    }
    return acc.value();
}

}  // namespace

WeightDistribution::WeightDistribution(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "weight distribution is empty");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double w = weights_[i];
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw Error(ErrorCode::NegativeValue, "weight at position " + std::to_string(i) + " is negative or not finite");
        }
    }
    const double total = compensated_sum(weights_);
    if (std::abs(total - 1.0) > kWeightSumTolerance) {
        throw Error(ErrorCode::InvalidArgument, "weights sum to " + std::to_string(total) + ", not 1");
    }
}

WeightDistribution WeightDistribution::uniform(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "uniform distribution needs at least one outcome");
    }
    return WeightDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::size_t WeightDistribution::support_size() const noexcept {
    return static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; }));
}

WeightDistribution weights(std::span<const double> values) {
    validate_values(values);
    const double total = compensated_sum(sorted_positive(values));
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [total](double v) { return v / total; });
    return WeightDistribution(std::move(out));
}

double shannon_entropy_bits(const WeightDistribution& dist) {
    std::vector<double> ascending = sorted_positive(dist.weights());
    CompensatedSum acc;
    for (double p : ascending) acc.add(-p * std::log2(p));
    return std::max(0.0, acc.value());
}

double decentralization_index(std::span<const double> values) {
    validate_values(values);
    const std::vector<double> ascending = sorted_positive(values);
    return std::exp(entropy_nats_sorted(ascending));
}

double decentralization_index(const WeightDistribution& dist) {
    return decentralization_index(dist.weights());
}

double decentralization_index_product(std::span<const double> values) {
    validate_values(values);
    const std::vector<double> ascending = sorted_positive(values);
    const double total = compensated_sum(ascending);
    double product = 1.0;
    for (double v : ascending) {
        const double p = v / total;
        product *= std::pow(p, -p);
    }
    return product;
}

double gini(const WeightDistribution& dist) {
    std::vector<double> x(dist.weights().begin(), dist.weights().end());
    std::sort(x.begin(), x.end());
    const auto n = static_cast<double>(x.size());
    // sum_i sum_j |x_i - x_j| = 2 * sum_i (2i - n - 1) x_(i), i 1-based ascending.
    CompensatedSum numerator;
    for (std::size_t i = 0; i < x.size(); ++i) {
        numerator.add((2.0 * static_cast<double>(i + 1) - n - 1.0) * x[i]);
    }
    const double total = compensated_sum(x);
    return std::max(0.0, numerator.value() / (n * total));
}

double hhi(const WeightDistribution& dist) {
    CompensatedSum acc;
    for (double p : dist.weights()) acc.add(p * p);
    return acc.value();
}

std::size_t nakamoto(const WeightDistribution& dist, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "nakamoto threshold must lie in (0, 1]");
    }
    // Absorbs rounding in the prefix sums, e.g. 51 * 0.01 landing just below 0.51.
    constexpr double kSlack = 1e-12;
    std::vector<double> x(dist.weights().begin(), dist.weights().end());
    std::sort(x.begin(), x.end(), std::greater<>());
    CompensatedSum prefix;
    for (std::size_t k = 0; k < x.size(); ++k) {
        prefix.add(x[k]);
        if (prefix.value() >= threshold - kSlack) return k + 1;
    }
    return x.size();
}

}  // namespace decentral
