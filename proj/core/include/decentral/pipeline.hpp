#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "decentral/config.hpp"
#include "decentral/econometrics.hpp"
#include "decentral/ingest.hpp"
#include "decentral/report.hpp"
#include "decentral/timeseries.hpp"

namespace decentral {

/// Ingested and indexed transfers of one token.
struct TokenIndex {
    TokenConfig token;
    IndexSeries series;
    std::vector<DailyWindow> windows;  // filled only when requested
    std::size_t records = 0;           // valid rows read
    std::size_t accepted = 0;          // rows kept by the filter and date range
    std::vector<RowError> row_errors;
    std::optional<TimestampFormat> timestamp_format;
};

TokenIndex compute_token_index(const TokenConfig& token, const RunConfig& cfg, bool keep_windows = false);

/// One TokenIndex per token, in the order given, computed on cfg.threads
/// workers.
std::vector<TokenIndex> compute_indices(const RunConfig& cfg, const std::vector<TokenConfig>& tokens,
                                        bool keep_windows = false);

struct SummaryStats {
    std::size_t count = 0;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

/// Five-number summary (linear-interpolated quartiles) and mean.
SummaryStats summarize(std::span<const double> values);

/// Dependent channel aligned to the index dates.
Column dependent_values(const IndexSeries& series, DependentChannel channel);

struct StationarityRow {
    std::string variable;
    std::size_t n = 0;
    std::optional<AdfResult> result;
    std::string note;  // why `result` is empty
};

struct MarketRegressionReport {
    std::vector<std::string> features;
    std::vector<RegressionResult> models;  // one single-regressor model per feature
    /// Empty when the AR(1) cannot be estimated (e.g. a constant index);
    /// `autoregression_note` then says why.
    std::optional<RegressionResult> autoregression;
    std::string autoregression_note;
    std::vector<StationarityRow> stationarity;
    std::vector<PacfEntry> pacf;
    FeatureTable aligned;  // dependent (column "val") and every feature on the index dates
};

/// Regresses the dependent channel on each market feature separately
/// (<ETH|BTC>_Ret ... _Ret30, _VtyDayRet30d, _PC) with Newey-West errors, and
/// adds the AR(1) fit, ADF report and PACF of the dependent channel. Feature
/// regressions propagate estimation errors; the three diagnostics record them.
MarketRegressionReport run_market_regressions(const IndexSeries& series, DependentChannel channel,
                                              const MarketSeries& eth, const MarketSeries* btc,
                                              std::size_t nw_lag = 1, std::size_t pacf_lags = 50);

struct RddReport {
    RddChannel channel = RddChannel::Sma30;
    std::vector<RegressionResult> models;  // the three nested control sets
};

/// SMA30 and EMA reports over the configured window.
std::vector<RddReport> run_rdd(const IndexSeries& series, const MarketSeries& asset, const RddWindow& window,
                               std::size_t nw_lag = 1);

/// Input digests and result-affecting flags. Thread count and output
/// directory are excluded so outputs do not depend on them.
Provenance make_provenance(const RunConfig& cfg, const std::vector<TokenConfig>& tokens, bool with_markets);

/// Subcommands. Each writes below cfg.out_dir and returns the files written.
std::vector<std::filesystem::path> cmd_index(const RunConfig& cfg, const std::vector<std::string>& tokens,
                                             std::ostream& log);
std::vector<std::filesystem::path> cmd_simulate(const RunConfig& cfg, std::ostream& log);
std::vector<std::filesystem::path> cmd_regress(const RunConfig& cfg, const std::vector<std::string>& tokens,
                                               std::ostream& log);
std::vector<std::filesystem::path> cmd_rdd(const RunConfig& cfg, const std::vector<std::string>& tokens,
                                           std::ostream& log);
std::vector<std::filesystem::path> cmd_report(const RunConfig& cfg, const std::vector<std::string>& tokens,
                                              std::ostream& log);

}  // namespace decentral
