#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "decentral/date.hpp"
#include "decentral/ingest.hpp"
#include "decentral/timeseries.hpp"

namespace decentral {

// ---------------------------------------------------------------------------
// Design matrices and least squares

struct NamedColumn {
    std::string name;
    Column values;
};

/// Complete-case regression design. Column 0..k-1 of `x` are named by
/// `names`; when an intercept was requested it is the last column.
struct DesignMatrix {
    std::vector<Date> dates;  // row labels, empty when rows are not dated
    std::vector<std::string> names;
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    std::string response_name;
    std::size_t dropped_rows = 0;

    std::size_t rows() const noexcept { return static_cast<std::size_t>(x.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(x.cols()); }
    /// Throws InsufficientRows unless rows > cols >= 1.
    void validate() const;
};

/// Listwise deletion: any row with a missing response or regressor is
/// dropped and counted. `dates` may be empty; otherwise it labels the rows.
DesignMatrix assemble_design(std::span<const Date> dates, std::string response_name, const Column& response,
                             std::span<const NamedColumn> regressors, std::optional<std::string> intercept = "const");

struct Coefficient {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double t_statistic = 0.0;
    double p_value = 1.0;
};

enum class CovarianceKind { Classical, NeweyWest };

struct RegressionResult {
    std::vector<Coefficient> coefficients;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double residual_std_error = 0.0;
    /// Classical overall F test of the non-intercept slopes; NaN without an
    /// intercept or without slopes.
    double f_statistic = 0.0;
    double f_p_value = 1.0;
    std::size_t n_observations = 0;
    std::size_t df_residual = 0;
    std::size_t dropped_rows = 0;
    CovarianceKind covariance_kind = CovarianceKind::NeweyWest;
    std::size_t hac_lag = 0;
    std::string response_name;
    Eigen::MatrixXd covariance;
    Eigen::VectorXd residuals;
    Eigen::VectorXd fitted;

    const Coefficient* find(std::string_view name) const;
    const Coefficient& at(std::string_view name) const;
};

/// Least squares through a column-pivoted Householder QR of the column-scaled
/// design. Throws RankDeficient naming the columns that are linear
/// combinations of the others.
RegressionResult ols(const DesignMatrix& design, CovarianceKind kind, std::size_t hac_lag = 1);

/// OLS with Newey-West HAC covariance: Bartlett weights 1 - l/(lag+1), no
/// finite-sample correction. lag = 0 is White's HC0.
RegressionResult ols_newey_west(const DesignMatrix& design, std::size_t lag = 1);

/// Two-sided p-value of a t statistic with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// Significance stars at the 0.1 / 0.05 / 0.01 levels.
std::string stars(double p_value);

// ---------------------------------------------------------------------------
// Stationarity

enum class AdfRegression { None, Constant, ConstantTrend };

std::string_view to_string(AdfRegression regression) noexcept;

struct AdfOptions {
    AdfRegression regression = AdfRegression::Constant;
    /// Upper bound for the augmentation lags; defaults to floor(12 (n/100)^(1/4)).
    std::optional<std::size_t> max_lag;
    /// Select the lag by AIC; when false `max_lag` lags are used as given.
    bool select_by_aic = true;
};

struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool stationary_at_5pct = false;
    std::size_t used_lag = 0;
    std::size_t n_observations = 0;
    AdfRegression regression = AdfRegression::Constant;
};

/// Augmented Dickey-Fuller test. Requires at least 20 observations.
AdfResult adf_test(std::span<const double> series, const AdfOptions& options = {});

/// MacKinnon approximate asymptotic p-value for a single-series ADF statistic.
double mackinnon_p_value(double statistic, AdfRegression regression);

// ---------------------------------------------------------------------------
// Autoregression, principal components, correlation

/// OLS of x_t on (x_{t-1}, const) with Newey-West lag-1 errors. The slope is
/// named "L1".
RegressionResult ar1(std::span<const double> series, std::size_t hac_lag = 1);

struct PrincipalComponent {
    std::vector<double> loadings;  // unit norm, sum >= 0
    std::vector<double> scores;    // standardized panel times loadings
    double eigenvalue = 0.0;
    double explained_variance_ratio = 0.0;
};

/// First principal component of the correlation matrix of `columns`
/// (equal-length, complete). Throws DegenerateCovariance for constant columns.
PrincipalComponent first_pc(std::span<const std::vector<double>> columns);

struct PearsonResult {
    double r = 0.0;
    double t_statistic = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

/// Sample correlation with a two-sided t test on n - 2 degrees of freedom.
PearsonResult pearson_test(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// Regression discontinuity

enum class RddChannel { Sma30, Ema };

std::string_view to_string(RddChannel channel) noexcept;

/// Controls understood by the RDD assembler.
inline constexpr std::array<std::string_view, 4> kRddControls = {"TxTfrValAdjUSD", "TxTfrCnt", "ROI",
                                                                  "VtyDayRet30d"};

/// Nested control sets of the three standard specifications.
std::vector<std::vector<std::string>> rdd_nested_controls();

struct RddSpec {
    Date event_date;
    Date window_start;
    Date window_end;
    RddChannel dependent = RddChannel::Sma30;
    std::vector<std::string> controls;

    /// window_start < event_date <= window_end; known control names.
    void validate() const;
};

/// One row per calendar day in the window with regressors EIP, Day, EIP_Day,
/// the requested controls and an intercept named "Intercept". Throws
/// WindowNotCovered when any day lacks the dependent value or a control.
DesignMatrix rdd_design(const RddSpec& spec, const IndexSeries& index, const MarketSeries& market);

RegressionResult rdd(const RddSpec& spec, const IndexSeries& index, const MarketSeries& market,
                     std::size_t hac_lag = 1);

}  // namespace decentral
