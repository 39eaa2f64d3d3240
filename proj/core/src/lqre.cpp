#include "decentral/lqre.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "decentral/error.hpp"
#include "decentral/format.hpp"
#include "decentral/numeric.hpp"
#include "decentral/parallel.hpp"

namespace decentral {

namespace {

// Shifted exponents are -k*lambda for k = N-n = 0..N-1, so the largest term is
// exp(0) = 1 and nothing overflows. Terms below this cutoff are exactly zero
// in double precision.
constexpr double kUnderflowExponent = -745.2;

// ln Z and sum_k p_k * k for Z = sum_{k<N} exp(-k*lambda), in double.
struct LogMoments {
    double log_partition;
    double mean_rank;
};

LogMoments log_moments(std::size_t n, double lambda) {
    std::size_t terms = n;
    if (lambda > 0.0) {
        const auto live = static_cast<std::size_t>(-kUnderflowExponent / lambda) + 1;
        terms = std::min(terms, live);
    }
    CompensatedSum partition;
    CompensatedSum first_moment;
    // Smallest terms first.
    for (std::size_t j = terms; j-- > 0;) {
        const double k = static_cast<double>(j);
        const double term = std::exp(-k * lambda);
        partition.add(term);
        first_moment.add(term * k);
    }
    const double z = partition.value();
    return {std::log(z), first_moment.value() / z};
}

}  // namespace

void LqreConfig::validate() const {
    if (n_transactions < 1) {
        throw Error(ErrorCode::InvalidArgument, "LQRE needs at least one transaction");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorCode::InvalidArgument, "LQRE lambda must be finite and >= 0");
    }
}

void SweepGrid::validate() const {
    if (n_values.empty() || lambda_values.empty()) {
        throw Error(ErrorCode::InvalidArgument, "sweep grid axes must be nonempty");
    }
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1) throw Error(ErrorCode::InvalidArgument, "sweep N values must be >= 1");
        if (i > 0 && n_values[i] <= n_values[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "sweep N values must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < lambda_values.size(); ++i) {
        const double l = lambda_values[i];
        if (!(l >= 0.0) || !std::isfinite(l)) {
            throw Error(ErrorCode::InvalidArgument, "sweep lambda values must be finite and >= 0");
        }
        if (i > 0 && l <= lambda_values[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "sweep lambda values must be strictly increasing");
        }
    }
}

WeightDistribution lqre_weights(const LqreConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n_transactions;
    const LogMoments m = log_moments(n, cfg.lambda);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Transaction i+1 has shifted exponent -(n-1-i)*lambda.
        const double k = static_cast<double>(n - 1 - i);
        const double log_p = -k * cfg.lambda - m.log_partition;
        w[i] = std::exp(log_p);
    }
    return WeightDistribution(std::move(w));
}

double lqre_index(const LqreConfig& cfg) {
    cfg.validate();
    // Uniform weights; exp(ln N) would not round-trip.
    if (cfg.lambda == 0.0) return static_cast<double>(cfg.n_transactions);
    const LogMoments m = log_moments(cfg.n_transactions, cfg.lambda);
    // H = -sum p ln p = ln Z + lambda * E[k]; both terms are nonnegative.
    const double entropy_nats = m.log_partition + cfg.lambda * m.mean_rank;
    return std::exp(entropy_nats);
}

ExtendedReal lqre_index_extended(const LqreConfig& cfg) {
    cfg.validate();
    if (cfg.lambda == 0.0) return ExtendedReal(cfg.n_transactions);
    const ExtendedReal lambda(cfg.lambda);
    ExtendedReal partition = 0;
    ExtendedReal first_moment = 0;
    for (std::size_t j = cfg.n_transactions; j-- > 0;) {
        const ExtendedReal k(j);
        const ExtendedReal term = exp(-k * lambda);
        partition += term;
        first_moment += term * k;
    }
    const ExtendedReal entropy = log(partition) + lambda * (first_moment / partition);
    return exp(entropy);
}

std::vector<SweepRow> sweep(const SweepGrid& grid, unsigned threads) {
    grid.validate();
    const std::size_t cols = grid.lambda_values.size();
    std::vector<SweepRow> rows(grid.n_values.size() * cols);
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        const std::size_t n = grid.n_values[i / cols];
        const double lambda = grid.lambda_values[i % cols];
        rows[i] = SweepRow{n, lambda, lqre_index(LqreConfig{n, lambda})};
    });
    return rows;
}

std::vector<double> linspace(double first, double last, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {first};
    std::vector<double> out(count);
    const double step = (last - first) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = first + step * static_cast<double>(i);
    out.back() = last;
    return out;
}

std::vector<std::size_t> linspace_counts(std::size_t first, std::size_t last, std::size_t count) {
    std::vector<std::size_t> out;
    for (double x : linspace(static_cast<double>(first), static_cast<double>(last), count)) {
        const auto v = static_cast<std::size_t>(std::llround(x));
        if (out.empty() || v > out.back()) out.push_back(v);
    }
    return out;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "n,lambda,index\n";
    for (const SweepRow& r : rows) {
        out << r.n << ',' << format_double(r.lambda) << ',' << format_double(r.index) << '\n';
    }
}

}  // namespace decentral
