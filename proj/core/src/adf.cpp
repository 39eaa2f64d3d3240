#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>

#include "decentral/econometrics.hpp"
#include "decentral/error.hpp"

namespace decentral {

namespace {

// MacKinnon (1994) response-surface coefficients for one series (N = 1),
// ordered none / constant / constant+trend. Statistics above tau_max map to
// p = 1, below tau_min to p = 0. Left of tau_star the quadratic small-p
// polynomial applies, right of it the cubic large-p polynomial; the result
// is passed through the standard normal CDF.
struct SurfaceRow {
    double tau_max;
    double tau_min;
    double tau_star;
    std::array<double, 3> small_p;
    std::array<double, 4> large_p;
};

constexpr std::array<SurfaceRow, 3> kMacKinnon = {{
    {std::numeric_limits<double>::infinity(), -19.04, -1.04, {0.6344, 1.2378, 3.2496e-2},
     {0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2}},
    {2.74, -18.83, -1.61, {2.1659, 1.4412, 3.8269e-2}, {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}},
    {0.7, -16.18, -2.89, {3.2512, 1.6047, 4.9588e-2}, {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}},
}};

std::size_t deterministic_terms(AdfRegression r) {
    switch (r) {
        case AdfRegression::None: return 0;
        case AdfRegression::Constant: return 1;
        case AdfRegression::ConstantTrend: return 2;
    }
    return 0;
}

// Regression of dy_t on y_{t-1}, dy_{t-1..t-lags} and deterministic terms
// for t in [first, dy.size()). Column 0 is the lagged level.
DesignMatrix adf_design(std::span<const double> y, std::span<const double> dy, std::size_t lags, std::size_t first,
                        AdfRegression regression) {
    const std::size_t rows = dy.size() - first;
    const std::size_t det = deterministic_terms(regression);
    DesignMatrix d;
    d.x.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(1 + lags + det));
    d.y.resize(static_cast<Eigen::Index>(rows));
    d.names.push_back("y_lag1");
    for (std::size_t l = 1; l <= lags; ++l) d.names.push_back("dy_lag" + std::to_string(l));
    if (det >= 1) d.names.push_back("const");
    if (det >= 2) d.names.push_back("trend");
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = first + r;
        const auto row = static_cast<Eigen::Index>(r);
        d.y(row) = dy[t];
        d.x(row, 0) = y[t];
        for (std::size_t l = 1; l <= lags; ++l) d.x(row, static_cast<Eigen::Index>(l)) = dy[t - l];
        if (det >= 1) d.x(row, static_cast<Eigen::Index>(1 + lags)) = 1.0;
        if (det >= 2) d.x(row, static_cast<Eigen::Index>(2 + lags)) = static_cast<double>(t + 1);
    }
    return d;
}

double aic(const RegressionResult& fit) {
    const auto n = static_cast<double>(fit.n_observations);
    const auto k = static_cast<double>(fit.coefficients.size());
    const double ssr = fit.residuals.squaredNorm();
    return n * std::log(ssr / n) + 2.0 * k;
}

}  // namespace

std::string_view to_string(AdfRegression regression) noexcept {
    switch (regression) {
        case AdfRegression::None: return "none";
        case AdfRegression::Constant: return "constant";
        case AdfRegression::ConstantTrend: return "constant+trend";
    }
    return "unknown";
}

double mackinnon_p_value(double statistic, AdfRegression regression) {
    const SurfaceRow& row = kMacKinnon[static_cast<std::size_t>(regression)];
    if (std::isnan(statistic)) return std::numeric_limits<double>::quiet_NaN();
    if (statistic > row.tau_max) return 1.0;
    if (statistic < row.tau_min) return 0.0;
    double z = 0.0;
    if (statistic <= row.tau_star) {
        z = row.small_p[0] + statistic * (row.small_p[1] + statistic * row.small_p[2]);
    } else {
        z = row.large_p[0] + statistic * (row.large_p[1] + statistic * (row.large_p[2] + statistic * row.large_p[3]));
    }
    return boost::math::cdf(boost::math::normal_distribution<double>(), z);
}

AdfResult adf_test(std::span<const double> series, const AdfOptions& options) {
    const std::size_t n = series.size();
    if (n < 20) {
        throw Error(ErrorCode::InsufficientData, "ADF test needs at least 20 observations, got " + std::to_string(n));
    }
    const std::size_t det = deterministic_terms(options.regression);
    std::size_t max_lag = options.max_lag.value_or(
        static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25))));
    // Keep enough rows for the largest candidate regression.
    const std::size_t cap = n / 2 - det - 1;
    max_lag = std::min(max_lag, cap);

    std::vector<double> dy(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) dy[t] = series[t + 1] - series[t];

    std::size_t lag = max_lag;
    if (options.select_by_aic) {
        // Compare every candidate on the common sample that the largest lag allows.
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p <= max_lag; ++p) {
            const RegressionResult fit =
                ols(adf_design(series, dy, p, max_lag, options.regression), CovarianceKind::Classical);
            const double score = aic(fit);
            if (score < best) {
                best = score;
                lag = p;
            }
        }
    }

    const RegressionResult fit = ols(adf_design(series, dy, lag, lag, options.regression), CovarianceKind::Classical);
    AdfResult out;
    out.statistic = fit.coefficients.front().t_statistic;
    out.p_value = mackinnon_p_value(out.statistic, options.regression);
    out.stationary_at_5pct = out.p_value < 0.05;
    out.used_lag = lag;
    out.n_observations = fit.n_observations;
    out.regression = options.regression;
    return out;
}

}  // namespace decentral
