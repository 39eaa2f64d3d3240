#include "decentral/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "decentral/error.hpp"
#include "decentral/format.hpp"
#include "decentral/index.hpp"
#include "decentral/numeric.hpp"
#include "decentral/parallel.hpp"

namespace decentral {

namespace {

void check_prices(const Column& prices) {
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (prices[i] && !(*prices[i] > 0.0)) {
            throw Error(ErrorCode::NonpositivePrice, "price at position " + std::to_string(i) + " is not positive");
        }
    }
}

}  // namespace

std::optional<std::size_t> IndexSeries::position(Date date) const {
    const auto it = std::lower_bound(dates.begin(), dates.end(), date);
    if (it == dates.end() || *it != date) return std::nullopt;
    return static_cast<std::size_t>(it - dates.begin());
}

IndexSeries make_index_series(std::vector<Date> dates, std::vector<double> raw, std::size_t sma_window,
                              double ema_alpha) {
    if (dates.size() != raw.size()) {
        throw Error(ErrorCode::InvalidArgument, "index series dates and values differ in length");
    }
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (dates[i] <= dates[i - 1]) {
            throw Error(ErrorCode::NonMonotoneDates, "index series dates must be strictly increasing");
        }
    }
    IndexSeries s;
    s.sma30 = sma(raw, sma_window);
    s.ema = ema(raw, ema_alpha);
    s.dates = std::move(dates);
    s.raw = std::move(raw);
    return s;
}

IndexSeries build_index_series(std::span<const DailyWindow> windows, std::size_t sma_window, double ema_alpha,
                               unsigned threads) {
    std::vector<Date> dates(windows.size());
    std::vector<double> raw(windows.size());
    parallel_for(windows.size(), threads, [&](std::size_t i) {
        dates[i] = windows[i].date;
        raw[i] = decentralization_index(windows[i].values);
    });
    return make_index_series(std::move(dates), std::move(raw), sma_window, ema_alpha);
}

Column sma(std::span<const double> x, std::size_t window) {
    if (window == 0) throw Error(ErrorCode::InvalidArgument, "SMA window must be >= 1");
    Column out(x.size());
    for (std::size_t t = window - 1; t < x.size(); ++t) {
        CompensatedSum acc;
        for (std::size_t j = t + 1 - window; j <= t; ++j) acc.add(x[j]);
        out[t] = acc.value() / static_cast<double>(window);
    }
    return out;
}

std::vector<double> ema(std::span<const double> x, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "EMA alpha must lie in (0, 1]");
    std::vector<double> out(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        out[t] = t == 0 ? x[0] : alpha * x[t] + (1.0 - alpha) * out[t - 1];
    }
    return out;
}

Column returns(const Column& prices, std::size_t horizon) {
    if (horizon == 0) throw Error(ErrorCode::InvalidArgument, "return horizon must be >= 1");
    check_prices(prices);
    Column out(prices.size());
    for (std::size_t t = horizon; t < prices.size(); ++t) {
        if (prices[t] && prices[t - horizon]) out[t] = *prices[t] / *prices[t - horizon] - 1.0;
    }
    return out;
}

Column volatility30(const Column& prices) {
    constexpr std::size_t kWindow = 30;
    check_prices(prices);
    Column out(prices.size());
    std::vector<double> logret(kWindow);
    for (std::size_t t = kWindow; t < prices.size(); ++t) {
        bool complete = true;
        for (std::size_t j = 0; j < kWindow && complete; ++j) {
            const std::size_t i = t - kWindow + 1 + j;
            if (!prices[i] || !prices[i - 1]) {
                complete = false;
            } else {
                logret[j] = std::log(*prices[i] / *prices[i - 1]);
            }
        }
        if (!complete) continue;
        const double mean = compensated_sum(logret) / kWindow;
        CompensatedSum ss;
        for (double r : logret) ss.add((r - mean) * (r - mean));
        out[t] = std::sqrt(ss.value() / (kWindow - 1));
    }
    return out;
}

std::vector<double> acf(std::span<const double> x, std::size_t max_lag) {
    const std::size_t n = x.size();
    if (n < 2 || max_lag >= n) throw Error(ErrorCode::InsufficientData, "series too short for requested lags");
    const double mean = compensated_sum(x) / static_cast<double>(n);
    CompensatedSum c0;
    for (double v : x) c0.add((v - mean) * (v - mean));
    if (!(c0.value() > 0.0)) throw Error(ErrorCode::ZeroVariance, "series is constant");
    std::vector<double> r(max_lag);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        CompensatedSum ck;
        for (std::size_t t = k; t < n; ++t) ck.add((x[t] - mean) * (x[t - k] - mean));
        r[k - 1] = ck.value() / c0.value();
    }
    return r;
}

std::vector<PacfEntry> pacf(std::span<const double> x, std::size_t max_lag) {
    if (max_lag == 0 || x.size() <= max_lag + 1) {
        throw Error(ErrorCode::InsufficientData,
                    "PACF with " + std::to_string(max_lag) + " lags needs more than " + std::to_string(max_lag + 1) +
                        " observations, got " + std::to_string(x.size()));
    }
    const std::vector<double> r = acf(x, max_lag);
    const double band = 1.96 / std::sqrt(static_cast<double>(x.size()));

    std::vector<PacfEntry> out;
    std::vector<double> phi;  // phi_{k-1, 1..k-1}
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = r[k - 1];
        double den = 1.0;
        for (std::size_t j = 1; j < k; ++j) {
            num -= phi[j - 1] * r[k - j - 1];
            den -= phi[j - 1] * r[j - 1];
        }
        const double phi_kk = num / den;
        std::vector<double> next(k);
        for (std::size_t j = 1; j < k; ++j) next[j - 1] = phi[j - 1] - phi_kk * phi[k - j - 1];
        next[k - 1] = phi_kk;
        phi = std::move(next);
        out.push_back({k, phi_kk, band});
    }
    return out;
}

const Column* FeatureTable::find(std::string_view name) const {
    for (const auto& [n, c] : columns) {
        if (n == name) return &c;
    }
    return nullptr;
}

std::string return_column_name(std::string_view prefix, std::size_t horizon) {
    std::string name = std::string(prefix) + "_Ret";
    if (horizon != 1) name += std::to_string(horizon);
    return name;
}

FeatureTable return_panel(const MarketSeries& market, std::string_view prefix) {
    const Column* prices = market.find("PriceUSD");
    if (!prices) throw Error(ErrorCode::SchemaMismatch, std::string(prefix) + " market data has no PriceUSD column");
    FeatureTable table;
    table.dates = market.dates;
    for (std::size_t k : kReturnHorizons) {
        table.columns.emplace_back(return_column_name(prefix, k), returns(*prices, k));
    }
    const Column* vty = market.find("VtyDayRet30d");
    table.columns.emplace_back(std::string(prefix) + "_VtyDayRet30d", vty ? *vty : volatility30(*prices));
    return table;
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
    out << "date";
    for (const auto& [name, col] : table.columns) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < table.dates.size(); ++i) {
        out << format_date(table.dates[i]);
        for (const auto& [name, col] : table.columns) out << ',' << format_optional(col[i]);
        out << '\n';
    }
}

}  // namespace decentral
