#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "decentral/date.hpp"
#include "decentral/econometrics.hpp"
#include "decentral/ingest.hpp"

namespace decentral {

struct TokenConfig {
    std::string name;
    std::filesystem::path transfers;
    std::optional<std::filesystem::path> market;
    std::optional<Date> genesis;
    /// Expected token_address of every record; empty accepts any.
    std::string address;
};

enum class DependentChannel { Raw, Sma30, Ema };

std::string_view to_string(DependentChannel channel) noexcept;

struct SimulateConfig {
    std::size_t points = 200;
    std::size_t n_max = 10000;
    double lambda_max = 10000.0;
    std::vector<double> fixed_lambdas = {0.0, 5000.0, 10000.0};
    std::vector<std::size_t> fixed_ns = {100, 10000, 50000, 100000};
};

struct RddWindow {
    Date event = Date{std::chrono::year{2021} / 8 / 5};
    Date start = Date{std::chrono::year{2021} / 7 / 25};
    Date end = Date{std::chrono::year{2021} / 8 / 27};
};

/// Everything a subcommand needs. Paths are absolute or relative to the
/// directory of the config file they came from.
struct RunConfig {
    std::vector<TokenConfig> tokens;
    std::optional<std::filesystem::path> eth_market;
    std::optional<std::filesystem::path> btc_market;
    /// Directory relative input paths were resolved against.
    std::filesystem::path base_dir = ".";
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::optional<Date> start;
    std::optional<Date> end;
    std::size_t sma_window = kSmaWindow;
    double ema_alpha = kEmaAlpha;
    std::size_t nw_lag = 1;
    std::size_t pacf_lags = 50;
    DependentChannel dependent = DependentChannel::Raw;
    TransferFilter filter;
    std::size_t error_budget = 100;
    RddWindow rdd;
    SimulateConfig simulate;

    /// Tokens restricted to `names` (all when empty); throws ConfigError for
    /// unknown names.
    std::vector<TokenConfig> select_tokens(const std::vector<std::string>& names) const;
    /// Throws ConfigError on inconsistent values or missing input files.
    void validate() const;
};

/// Reads the INI-style configuration documented in fixtures/decentral.ini.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace decentral
