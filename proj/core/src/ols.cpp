#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "decentral/econometrics.hpp"
#include "decentral/error.hpp"

namespace decentral {

namespace {

// Pivots whose scaled |R_ii| falls below this fraction of the largest are
// treated as zero.
constexpr double kRankThreshold = 1e-10;

}  // namespace

void DesignMatrix::validate() const {
    if (x.cols() < 1) throw Error(ErrorCode::InsufficientRows, "design has no columns");
    if (x.rows() != y.size()) throw Error(ErrorCode::InvalidArgument, "design and response differ in length");
    if (static_cast<std::size_t>(names.size()) != cols()) {
        throw Error(ErrorCode::InvalidArgument, "design column names do not match its width");
    }
    if (x.rows() <= x.cols()) {
        throw Error(ErrorCode::InsufficientRows, std::to_string(x.rows()) + " complete rows for " +
                                                     std::to_string(x.cols()) + " columns");
    }
}

DesignMatrix assemble_design(std::span<const Date> dates, std::string response_name, const Column& response,
                             std::span<const NamedColumn> regressors, std::optional<std::string> intercept) {
    const std::size_t n = response.size();
    if (!dates.empty() && dates.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "row labels and response differ in length");
    }
    for (const auto& c : regressors) {
        if (c.values.size() != n) {
            throw Error(ErrorCode::InvalidArgument, "regressor " + c.name + " differs in length from the response");
        }
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        bool complete = response[i].has_value();
        for (const auto& c : regressors) complete = complete && c.values[i].has_value();
        if (complete) keep.push_back(i);
    }

    DesignMatrix d;
    d.response_name = std::move(response_name);
    d.dropped_rows = n - keep.size();
    const std::size_t k = regressors.size() + (intercept ? 1 : 0);
    d.x.resize(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(k));
    d.y.resize(static_cast<Eigen::Index>(keep.size()));
    for (const auto& c : regressors) d.names.push_back(c.name);
    if (intercept) d.names.push_back(*intercept);
    for (std::size_t r = 0; r < keep.size(); ++r) {
        const auto row = static_cast<Eigen::Index>(r);
        const std::size_t i = keep[r];
        d.y(row) = *response[i];
        for (std::size_t j = 0; j < regressors.size(); ++j) {
            d.x(row, static_cast<Eigen::Index>(j)) = *regressors[j].values[i];
        }
        if (intercept) d.x(row, static_cast<Eigen::Index>(k - 1)) = 1.0;
        if (!dates.empty()) d.dates.push_back(dates[i]);
    }
    return d;
}

const Coefficient* RegressionResult::find(std::string_view name) const {
    for (const auto& c : coefficients) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

const Coefficient& RegressionResult::at(std::string_view name) const {
    if (const Coefficient* c = find(name)) return *c;
    throw Error(ErrorCode::InvalidArgument, "no coefficient named " + std::string(name));
}

double student_t_two_sided_p(double t, double df) {
    if (std::isnan(t)) return 1.0;
    if (std::isinf(t)) return 0.0;
    const boost::math::students_t_distribution<double> dist(df);
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
}

std::string stars(double p_value) {
    if (p_value < 0.01) return "***";
    if (p_value < 0.05) return "**";
    if (p_value < 0.1) return "*";
    return "";
}

RegressionResult ols(const DesignMatrix& design, CovarianceKind kind, std::size_t hac_lag) {
    design.validate();
    const Eigen::Index n = design.x.rows();
    const Eigen::Index k = design.x.cols();

    // Equilibrate columns so the rank decision does not depend on units.
    Eigen::VectorXd scale(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double norm = design.x.col(j).norm();
        scale(j) = norm > 0.0 ? 1.0 / norm : 1.0;
    }
    const Eigen::MatrixXd xs = design.x * scale.asDiagonal();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xs);
    qr.setThreshold(kRankThreshold);
    if (qr.rank() < k) {
        std::string names;
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index j = qr.rank(); j < k; ++j) {
            if (!names.empty()) names += ", ";
            names += design.names[static_cast<std::size_t>(perm(j))];
        }
        throw Error(ErrorCode::RankDeficient, "collinear regressors: " + names);
    }

    const Eigen::VectorXd beta = scale.asDiagonal() * qr.solve(design.y);
    const Eigen::VectorXd fitted = design.x * beta;
    const Eigen::VectorXd resid = design.y - fitted;

    // (X'X)^-1 = D P R^-1 R^-T P' D for X D P = Q R.
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd perm = qr.colsPermutation();
    const Eigen::MatrixXd bread =
        scale.asDiagonal() * (perm * (r_inv * r_inv.transpose()) * perm.transpose()) * scale.asDiagonal();

    const double ssr = resid.squaredNorm();
    const auto df = static_cast<double>(n - k);

    Eigen::MatrixXd cov;
    if (kind == CovarianceKind::Classical) {
        cov = bread * (ssr / df);
    } else {
        const Eigen::MatrixXd scores = design.x.array().colwise() * resid.array();
        Eigen::MatrixXd meat = scores.transpose() * scores;
        const auto max_lag = std::min<Eigen::Index>(static_cast<Eigen::Index>(hac_lag), n - 1);
        for (Eigen::Index l = 1; l <= max_lag; ++l) {
            const double w = 1.0 - static_cast<double>(l) / static_cast<double>(hac_lag + 1);
            const Eigen::MatrixXd gamma = scores.bottomRows(n - l).transpose() * scores.topRows(n - l);
            meat += w * (gamma + gamma.transpose());
        }
        cov = bread * meat * bread;
        cov = 0.5 * (cov + cov.transpose());
    }

    RegressionResult res;
    res.covariance_kind = kind;
    res.hac_lag = kind == CovarianceKind::NeweyWest ? hac_lag : 0;
    res.n_observations = static_cast<std::size_t>(n);
    res.df_residual = static_cast<std::size_t>(n - k);
    res.dropped_rows = design.dropped_rows;
    res.response_name = design.response_name;
    for (Eigen::Index j = 0; j < k; ++j) {
        Coefficient c;
        c.name = design.names[static_cast<std::size_t>(j)];
        c.estimate = beta(j);
        c.std_error = std::sqrt(std::max(0.0, cov(j, j)));
        if (c.std_error > 0.0) {
            c.t_statistic = c.estimate / c.std_error;
        } else {
            c.t_statistic = c.estimate == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), c.estimate);
        }
        c.p_value = c.std_error > 0.0 || c.estimate != 0.0 ? student_t_two_sided_p(c.t_statistic, df) : 1.0;
        res.coefficients.push_back(std::move(c));
    }

    // The intercept, when present, is a constant column.
    bool has_intercept = false;
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto col = design.x.col(j);
        if (col.maxCoeff() == col.minCoeff() && col(0) != 0.0) has_intercept = true;
    }
    const double tss = has_intercept ? (design.y.array() - design.y.mean()).matrix().squaredNorm()
                                     : design.y.squaredNorm();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    res.r_squared = tss > 0.0 ? 1.0 - ssr / tss : nan;
    const double df_model = static_cast<double>(k - (has_intercept ? 1 : 0));
    const double df_total = static_cast<double>(n - (has_intercept ? 1 : 0));
    res.adj_r_squared = tss > 0.0 ? 1.0 - (1.0 - res.r_squared) * df_total / df : nan;
    res.residual_std_error = std::sqrt(ssr / df);
    if (has_intercept && df_model > 0 && tss > 0.0) {
        const double explained = std::max(0.0, tss - ssr);
        res.f_statistic = (explained / df_model) / (ssr / df);
        if (std::isfinite(res.f_statistic)) {
            const boost::math::fisher_f_distribution<double> fdist(df_model, df);
            res.f_p_value = boost::math::cdf(boost::math::complement(fdist, res.f_statistic));
        } else {
            res.f_p_value = 0.0;
        }
    } else {
        res.f_statistic = nan;
        res.f_p_value = nan;
    }
    res.covariance = std::move(cov);
    res.residuals = resid;
    res.fitted = fitted;
    return res;
}

RegressionResult ols_newey_west(const DesignMatrix& design, std::size_t lag) {
    return ols(design, CovarianceKind::NeweyWest, lag);
}

}  // namespace decentral
