#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "decentral/date.hpp"
#include "decentral/ingest.hpp"

namespace decentral {

inline constexpr std::size_t kSmaWindow = 30;
inline constexpr double kEmaAlpha = 0.1;

/// Daily index values with smoothed channels. Dates are strictly increasing
/// but need not be contiguous: a day without transfers has no observation.
struct IndexSeries {
    std::vector<Date> dates;
    std::vector<double> raw;
    Column sma30;
    std::vector<double> ema;

    std::size_t size() const noexcept { return dates.size(); }
    /// Observation position of `date`, or nullopt when absent.
    std::optional<std::size_t> position(Date date) const;
};

/// Computes the index of every window, then the SMA and EMA channels.
IndexSeries build_index_series(std::span<const DailyWindow> windows, std::size_t sma_window = kSmaWindow,
                               double ema_alpha = kEmaAlpha, unsigned threads = 1);

/// Assembles an IndexSeries from precomputed raw values.
IndexSeries make_index_series(std::vector<Date> dates, std::vector<double> raw, std::size_t sma_window = kSmaWindow,
                              double ema_alpha = kEmaAlpha);

/// Trailing mean over `window` observations; missing until the window is full.
Column sma(std::span<const double> x, std::size_t window = kSmaWindow);

/// y_0 = x_0, y_t = alpha x_t + (1 - alpha) y_{t-1}. Requires 0 < alpha <= 1.
std::vector<double> ema(std::span<const double> x, double alpha = kEmaAlpha);

/// Simple k-step returns P_t / P_{t-k} - 1 over a contiguous daily price
/// column. Missing where either price is missing or t < k. Throws
/// NonpositivePrice for any present price <= 0.
Column returns(const Column& prices, std::size_t horizon);

/// Sample standard deviation (n - 1) of the trailing 30 daily log returns.
/// First value at position 30; missing wherever a price in the window is.
Column volatility30(const Column& prices);

struct PacfEntry {
    std::size_t lag = 0;
    double coefficient = 0.0;
    double band = 0.0;  // half-width of the 95% band, 1.96 / sqrt(n)
};

/// Sample autocorrelations r_1..r_max_lag (denominator n, mean removed).
std::vector<double> acf(std::span<const double> x, std::size_t max_lag);

/// Partial autocorrelations for lags 1..max_lag via Durbin-Levinson.
/// Requires x.size() > max_lag + 1.
std::vector<PacfEntry> pacf(std::span<const double> x, std::size_t max_lag);

/// Named, date-aligned feature columns.
struct FeatureTable {
    std::vector<Date> dates;
    std::vector<std::pair<std::string, Column>> columns;

    const Column* find(std::string_view name) const;
};

inline constexpr std::array<std::size_t, 5> kReturnHorizons = {1, 7, 14, 21, 30};

/// `<prefix>_Ret`, `<prefix>_Ret7` ... `<prefix>_Ret30` and
/// `<prefix>_VtyDayRet30d` from a market series with PriceUSD. The
/// volatility column is taken from the file when present and derived from
/// prices otherwise.
FeatureTable return_panel(const MarketSeries& market, std::string_view prefix);

/// Name of the k-day return column, e.g. ETH_Ret7 (ETH_Ret for k = 1).
std::string return_column_name(std::string_view prefix, std::size_t horizon);

/// CSV with a `date` column followed by every feature column.
void write_feature_csv(std::ostream& out, const FeatureTable& table);

}  // namespace decentral
