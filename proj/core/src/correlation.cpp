#include <algorithm>
#include <cmath>
#include <limits>

#include "decentral/econometrics.hpp"
#include "decentral/error.hpp"
#include "decentral/numeric.hpp"

namespace decentral {

PearsonResult pearson_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "paired series differ in length");
    const std::size_t n = x.size();
    if (n < 3) throw Error(ErrorCode::InsufficientData, "Pearson test needs at least 3 pairs");
    const double mx = compensated_sum(x) / static_cast<double>(n);
    const double my = compensated_sum(y) / static_cast<double>(n);
    CompensatedSum sxx, syy, sxy;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx.add(dx * dx);
        syy.add(dy * dy);
        sxy.add(dx * dy);
    }
    if (!(sxx.value() > 0.0) || !(syy.value() > 0.0)) {
        throw Error(ErrorCode::ZeroVariance, "Pearson test on a constant series");
    }
    PearsonResult out;
    out.n = n;
    out.r = std::clamp(sxy.value() / std::sqrt(sxx.value() * syy.value()), -1.0, 1.0);
    const double df = static_cast<double>(n - 2);
    const double denom = 1.0 - out.r * out.r;
    if (denom <= 0.0) {
        out.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), out.r);
        out.p_value = 0.0;
    } else {
        out.t_statistic = out.r * std::sqrt(df / denom);
        out.p_value = student_t_two_sided_p(out.t_statistic, df);
    }
    return out;
}

RegressionResult ar1(std::span<const double> series, std::size_t hac_lag) {
    if (series.size() < 3) {
        throw Error(ErrorCode::InsufficientData, "AR(1) needs at least 3 observations");
    }
    Column response(series.size() - 1);
    Column lagged(series.size() - 1);
    for (std::size_t t = 1; t < series.size(); ++t) {
        response[t - 1] = series[t];
        lagged[t - 1] = series[t - 1];
    }
    const std::vector<NamedColumn> regressors = {{"L1", std::move(lagged)}};
    return ols_newey_west(assemble_design({}, "x", response, regressors), hac_lag);
}

}  // namespace decentral
