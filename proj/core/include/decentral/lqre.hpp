#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "decentral/index.hpp"

namespace decentral {

/// Exponential value family v_n = exp(n * lambda), n = 1..N.
struct LqreConfig {
    std::size_t n_transactions = 1;
    double lambda = 0.0;

    void validate() const;
};

/// Axes of a comparative-statics sweep. Both lists nonempty and strictly
/// increasing.
struct SweepGrid {
    std::vector<std::size_t> n_values;
    std::vector<double> lambda_values;

    void validate() const;
};

struct SweepRow {
    std::size_t n = 0;
    double lambda = 0.0;
    double index = 0.0;
};

/// 100 significant decimal digits. Used where neighbouring indices differ by
/// less than a double ulp, e.g. adding a transaction of relative weight e^-150.
using ExtendedReal = boost::multiprecision::cpp_bin_float_100;

/// Softmax weights exp(n*lambda) / sum_m exp(m*lambda), computed with the
/// exponents shifted by their maximum.
WeightDistribution lqre_weights(const LqreConfig& cfg);

/// Decentralization index of the family, evaluated from log-weights without
/// materializing exp(n*lambda).
double lqre_index(const LqreConfig& cfg);

/// Same as lqre_index in 100-digit arithmetic.
ExtendedReal lqre_index_extended(const LqreConfig& cfg);

/// One row per (N, lambda) pair, N-major then lambda-minor. Rows are computed
/// on up to `threads` workers; ordering does not depend on the thread count.
std::vector<SweepRow> sweep(const SweepGrid& grid, unsigned threads = 1);

/// `count` evenly spaced values covering [first, last].
std::vector<double> linspace(double first, double last, std::size_t count);

/// Evenly spaced integer N axis on [first, last]; duplicates from rounding are
/// removed so the result stays strictly increasing.
std::vector<std::size_t> linspace_counts(std::size_t first, std::size_t last, std::size_t count);

/// Header `n,lambda,index`, shortest round-trip decimal formatting.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace decentral
