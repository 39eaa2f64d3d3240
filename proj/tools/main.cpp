#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "decentral/config.hpp"
#include "decentral/error.hpp"
#include "decentral/pipeline.hpp"

namespace {

struct Overrides {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::vector<std::string> tokens;
    std::string start;
    std::string end;
    std::optional<std::size_t> nw_lag;
    std::optional<std::size_t> sma_window;
    std::optional<double> ema_alpha;
    std::optional<std::size_t> pacf_lags;
    std::optional<std::size_t> error_budget;
    std::string dependent;
    bool drop_self = false;
    bool drop_mint_burn = false;
    std::optional<std::size_t> points;
    std::optional<std::size_t> n_max;
    std::optional<double> lambda_max;
    bool quiet = false;
};

decentral::Date date_flag(const std::string& name, const std::string& text) {
    const auto d = decentral::parse_date(text);
    if (!d) throw decentral::Error(decentral::ErrorCode::ConfigError, name + ": expected YYYY-MM-DD, got '" + text + "'");
    return *d;
}

decentral::RunConfig build_config(const Overrides& o, bool config_required) {
    using decentral::Error;
    using decentral::ErrorCode;
    decentral::RunConfig cfg;
    if (!o.config.empty()) {
        cfg = decentral::load_config(o.config);
    } else if (config_required) {
        throw Error(ErrorCode::ConfigError, "--config is required for this subcommand");
    }
    if (!o.out.empty()) cfg.out_dir = o.out;
    if (o.seed) cfg.seed = *o.seed;
    if (o.threads) cfg.threads = *o.threads;
    if (!o.start.empty()) cfg.start = date_flag("--start", o.start);
    if (!o.end.empty()) cfg.end = date_flag("--end", o.end);
    if (o.nw_lag) cfg.nw_lag = *o.nw_lag;
    if (o.sma_window) cfg.sma_window = *o.sma_window;
    if (o.ema_alpha) cfg.ema_alpha = *o.ema_alpha;
    if (o.pacf_lags) cfg.pacf_lags = *o.pacf_lags;
    if (o.error_budget) cfg.error_budget = *o.error_budget;
    if (!o.dependent.empty()) {
        if (o.dependent == "raw") cfg.dependent = decentral::DependentChannel::Raw;
        else if (o.dependent == "sma30") cfg.dependent = decentral::DependentChannel::Sma30;
        else cfg.dependent = decentral::DependentChannel::Ema;
    }
    if (o.drop_self) cfg.filter.drop_self_transfers = true;
    if (o.drop_mint_burn) cfg.filter.drop_mint_burn = true;
    if (o.points) cfg.simulate.points = *o.points;
    if (o.n_max) cfg.simulate.n_max = *o.n_max;
    if (o.lambda_max) cfg.simulate.lambda_max = *o.lambda_max;
    if (cfg.threads == 0) cfg.threads = 1;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralization index of token transfer activity and its market regressions"};
    app.require_subcommand(1);
    Overrides o;

    app.add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", o.out, "Output directory (overrides run.out)");
    app.add_option("--seed", o.seed, "Seed recorded in every report footer");
    app.add_option("--threads", o.threads, "Worker threads; outputs do not depend on it")->check(CLI::Range(1u, 1024u));
    app.add_flag("-q,--quiet", o.quiet, "Suppress progress messages");

    auto add_data_flags = [&](CLI::App* sub) {
        sub->add_option("--tokens", o.tokens, "Restrict to these configured tokens")->delimiter(',');
        sub->add_option("--start", o.start, "First day included (YYYY-MM-DD)");
        sub->add_option("--end", o.end, "Last day included (YYYY-MM-DD)");
        sub->add_option("--sma-window", o.sma_window, "Simple moving average window in days")->check(CLI::PositiveNumber);
        sub->add_option("--ema-alpha", o.ema_alpha, "Exponential moving average smoothing factor")
            ->check(CLI::Range(1e-12, 1.0));
        sub->add_option("--error-budget", o.error_budget, "Malformed transfer rows tolerated per file");
        sub->add_flag("--drop-self-transfers", o.drop_self, "Ignore transfers whose sender equals the receiver");
        sub->add_flag("--drop-mint-burn", o.drop_mint_burn, "Ignore transfers from or to the zero address");
    };
    auto add_estimation_flags = [&](CLI::App* sub) {
        sub->add_option("--nw-lag", o.nw_lag, "Newey-West lag");
    };

    CLI::App* index = app.add_subcommand("index", "Daily decentralization index per token");
    add_data_flags(index);
    CLI::App* simulate = app.add_subcommand("simulate", "Index sweeps over the exponential value family");
    simulate->add_option("--points", o.points, "Grid points per sweep axis")->check(CLI::Range(2, 1000000));
    simulate->add_option("--n-max", o.n_max, "Largest transaction count on the N axis")->check(CLI::PositiveNumber);
    simulate->add_option("--lambda-max", o.lambda_max, "Largest lambda on the lambda axis")->check(CLI::NonNegativeNumber);
    CLI::App* regress = app.add_subcommand("regress", "Market regressions, AR(1) and stationarity report");
    add_data_flags(regress);
    add_estimation_flags(regress);
    regress->add_option("--dependent", o.dependent, "Index channel used as the response")
        ->check(CLI::IsMember({"raw", "sma30", "ema"}));
    regress->add_option("--pacf-lags", o.pacf_lags, "Lags in the partial autocorrelation table");
    CLI::App* rdd = app.add_subcommand("rdd", "Regression discontinuity around the event date");
    add_data_flags(rdd);
    add_estimation_flags(rdd);
    CLI::App* report = app.add_subcommand("report", "Descriptive statistics, correlations and metrics");
    add_data_flags(report);
    report->add_option("--pacf-lags", o.pacf_lags, "Lags in the partial autocorrelation table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    std::ostream discard(nullptr);
    std::ostream& log = o.quiet ? discard : std::cerr;
    try {
        std::vector<std::filesystem::path> written;
        if (simulate->parsed()) {
            written = decentral::cmd_simulate(build_config(o, false), log);
        } else {
            const decentral::RunConfig cfg = build_config(o, true);
            if (index->parsed()) written = decentral::cmd_index(cfg, o.tokens, log);
            else if (regress->parsed()) written = decentral::cmd_regress(cfg, o.tokens, log);
            else if (rdd->parsed()) written = decentral::cmd_rdd(cfg, o.tokens, log);
            else written = decentral::cmd_report(cfg, o.tokens, log);
        }
        for (const auto& p : written) std::cout << p.generic_string() << '\n';
    } catch (const decentral::Error& e) {
        std::cerr << "error [" << decentral::to_string(e.code()) << "]: " << e.what() << '\n';
        return decentral::is_validation_error(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
