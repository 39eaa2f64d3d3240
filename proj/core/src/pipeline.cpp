#include "decentral/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "decentral/error.hpp"
#include "decentral/format.hpp"
#include "decentral/index.hpp"
#include "decentral/lqre.hpp"
#include "decentral/numeric.hpp"
#include "decentral/parallel.hpp"
#include "decentral/svg.hpp"

namespace decentral {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kHistogramBins = 30;

class OutputDir {
public:
    OutputDir(const fs::path& root, const std::string& sub) : dir_(root / sub) { fs::create_directories(dir_); }

    /// Writes `content` and records the path.
    void write(const std::string& name, const std::string& content) {
        const fs::path p = dir_ / name;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + p.string());
        out << content;
        written_.push_back(p);
    }

    std::vector<fs::path> files() && { return std::move(written_); }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

std::string footer(const Provenance& prov, std::string_view prefix) {
    std::ostringstream ss;
    prov.write(ss, prefix);
    return ss.str();
}

std::string label_for(const RunConfig& cfg, const fs::path& p) {
    const fs::path rel = p.lexically_relative(cfg.base_dir);
    return (rel.empty() ? p : rel).generic_string();
}

double days_since_epoch(Date d) { return static_cast<double>(d.time_since_epoch().count()); }

double quantile_sorted(std::span<const double> sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> present(const Column& c) {
    std::vector<double> out;
    for (const auto& v : c) {
        if (v) out.push_back(*v);
    }
    return out;
}

std::vector<double> column_to_plot(const Column& c) {
    std::vector<double> out;
    out.reserve(c.size());
    for (const auto& v : c) out.push_back(v ? *v : std::numeric_limits<double>::quiet_NaN());
    return out;
}

LineChart index_chart(const std::vector<TokenIndex>& indices, std::size_t sma_window) {
    LineChart chart;
    chart.title = "Decentralization index (" + std::to_string(sma_window) + "-day SMA)";
    chart.x_label = "date";
    chart.y_label = "index";
    chart.x_is_date = true;
    for (const auto& t : indices) {
        PlotSeries s;
        s.name = t.token.name;
        for (Date d : t.series.dates) s.x.push_back(days_since_epoch(d));
        s.y = column_to_plot(t.series.sma30);
        chart.series.push_back(std::move(s));
    }
    return chart;
}

std::string index_csv(const IndexSeries& s) {
    std::ostringstream out;
    out << "date,index,sma30,ema\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << format_date(s.dates[i]) << ',' << format_double(s.raw[i]) << ',' << format_optional(s.sma30[i]) << ','
            << format_double(s.ema[i]) << '\n';
    }
    return out.str();
}

std::vector<TokenIndex> indices_for(const RunConfig& cfg, const std::vector<std::string>& names, bool keep_windows,
                                    std::ostream& log) {
    cfg.validate();
    const std::vector<TokenConfig> tokens = cfg.select_tokens(names);
    if (tokens.empty()) throw Error(ErrorCode::ConfigError, "no tokens configured");
    std::vector<TokenIndex> out = compute_indices(cfg, tokens, keep_windows);
    for (const auto& t : out) {
        log << t.token.name << ": " << t.records << " records ("
            << (t.timestamp_format ? to_string(*t.timestamp_format) : std::string_view("no rows")) << " timestamps), "
            << t.accepted << " kept, " << t.series.size() << " daily index points";
        if (!t.row_errors.empty()) log << ", " << t.row_errors.size() << " malformed rows";
        log << '\n';
        for (const auto& e : t.row_errors) log << "  " << t.token.transfers.string() << ':' << e.line << ": " << e.message << '\n';
    }
    return out;
}

}  // namespace

TokenIndex compute_token_index(const TokenConfig& token, const RunConfig& cfg, bool keep_windows) {
    TransferReaderOptions options;
    options.error_budget = cfg.error_budget;
    options.genesis = token.genesis;
    TransferReader reader(token.transfers, options);
    DailyWindower windower(token.address, cfg.filter);
    while (auto rec = reader.next()) {
        const Date day = day_of(rec->block_timestamp);
        if ((cfg.start && day < *cfg.start) || (cfg.end && day > *cfg.end)) continue;
        windower.add(*rec);
    }
    TokenIndex out;
    out.token = token;
    out.records = reader.records_read();
    out.accepted = windower.accepted();
    out.row_errors = reader.errors();
    out.timestamp_format = reader.timestamp_format();
    std::vector<DailyWindow> windows = std::move(windower).finish();
    // Days whose transfers were all zero-valued have no defined index.
    std::erase_if(windows, [](const DailyWindow& w) {
        return std::none_of(w.values.begin(), w.values.end(), [](double v) { return v > 0.0; });
    });
    out.series = build_index_series(windows, cfg.sma_window, cfg.ema_alpha);
    if (keep_windows) out.windows = std::move(windows);
    return out;
}

std::vector<TokenIndex> compute_indices(const RunConfig& cfg, const std::vector<TokenConfig>& tokens,
                                        bool keep_windows) {
    std::vector<TokenIndex> out(tokens.size());
    parallel_for(tokens.size(), cfg.threads,
                 [&](std::size_t i) { out[i] = compute_token_index(tokens[i], cfg, keep_windows); });
    return out;
}

SummaryStats summarize(std::span<const double> values) {
    SummaryStats s;
    s.count = values.size();
    if (values.empty()) return s;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.5);
    s.q3 = quantile_sorted(sorted, 0.75);
    s.mean = compensated_sum(sorted) / static_cast<double>(sorted.size());
    return s;
}

Column dependent_values(const IndexSeries& series, DependentChannel channel) {
    switch (channel) {
        case DependentChannel::Raw: return Column(series.raw.begin(), series.raw.end());
        case DependentChannel::Sma30: return series.sma30;
        case DependentChannel::Ema: return Column(series.ema.begin(), series.ema.end());
    }
    return {};
}

MarketRegressionReport run_market_regressions(const IndexSeries& series, DependentChannel channel,
                                              const MarketSeries& eth, const MarketSeries* btc, std::size_t nw_lag,
                                              std::size_t pacf_lags) {
    MarketRegressionReport rep;
    rep.aligned.dates = series.dates;
    const Column y = dependent_values(series, channel);
    rep.aligned.columns.emplace_back("val", y);

    auto add_asset = [&](const MarketSeries& market, std::string_view prefix) {
        const FeatureTable panel = return_panel(market, prefix);
        std::vector<std::size_t> return_cols;
        for (const auto& [name, col] : panel.columns) {
            Column aligned(series.size());
            for (std::size_t i = 0; i < series.size(); ++i) {
                if (const auto pos = market.position(series.dates[i])) aligned[i] = col[*pos];
            }
            if (name.find("_Ret") != std::string::npos) return_cols.push_back(rep.aligned.columns.size());
            rep.aligned.columns.emplace_back(name, std::move(aligned));
        }
        // First principal component of the return horizons on rows where all are present.
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < series.size(); ++i) {
            const bool complete = std::all_of(return_cols.begin(), return_cols.end(),
                                              [&](std::size_t c) { return rep.aligned.columns[c].second[i].has_value(); });
            if (complete) rows.push_back(i);
        }
        Column pc(series.size());
        if (rows.size() >= 2) {
            std::vector<std::vector<double>> panel_cols;
            for (std::size_t c : return_cols) {
                std::vector<double> v;
                for (std::size_t i : rows) v.push_back(*rep.aligned.columns[c].second[i]);
                panel_cols.push_back(std::move(v));
            }
            const PrincipalComponent first = first_pc(panel_cols);
            for (std::size_t r = 0; r < rows.size(); ++r) pc[rows[r]] = first.scores[r];
        }
        rep.aligned.columns.emplace_back(std::string(prefix) + "_PC", std::move(pc));
    };
    add_asset(eth, "ETH");
    if (btc) add_asset(*btc, "BTC");

    for (std::size_t c = 1; c < rep.aligned.columns.size(); ++c) {
        const auto& [name, col] = rep.aligned.columns[c];
        const std::vector<NamedColumn> regressors = {{name, col}};
        rep.features.push_back(name);
        rep.models.push_back(ols_newey_west(assemble_design(series.dates, "val", y, regressors), nw_lag));
    }

    const std::vector<double> dep = present(y);
    try {
        rep.autoregression = ar1(dep, nw_lag);
    } catch (const Error& e) {
        rep.autoregression_note = e.what();
    }
    const std::size_t lags = std::min(pacf_lags, dep.size() >= 3 ? dep.size() - 2 : 0);
    if (lags > 0) {
        try {
            rep.pacf = pacf(dep, lags);
        } catch (const Error&) {
            rep.pacf.clear();
        }
    }

    for (const auto& [name, col] : rep.aligned.columns) {
        StationarityRow row;
        row.variable = name;
        const std::vector<double> v = present(col);
        row.n = v.size();
        try {
            row.result = adf_test(v);
        } catch (const Error& e) {
            row.note = e.what();
        }
        rep.stationarity.push_back(std::move(row));
    }
    return rep;
}

std::vector<RddReport> run_rdd(const IndexSeries& series, const MarketSeries& asset, const RddWindow& window,
                               std::size_t nw_lag) {
    std::vector<RddReport> out;
    for (RddChannel channel : {RddChannel::Sma30, RddChannel::Ema}) {
        RddReport rep;
        rep.channel = channel;
        for (const auto& controls : rdd_nested_controls()) {
            RddSpec spec{window.event, window.start, window.end, channel, controls};
            rep.models.push_back(rdd(spec, series, asset, nw_lag));
        }
        out.push_back(std::move(rep));
    }
    return out;
}

Provenance make_provenance(const RunConfig& cfg, const std::vector<TokenConfig>& tokens, bool with_markets) {
    Provenance p;
    p.seed = cfg.seed;
    for (const auto& t : tokens) {
        p.add_input(t.name + ":transfers=" + label_for(cfg, t.transfers), t.transfers);
        if (with_markets && t.market) p.add_input(t.name + ":market=" + label_for(cfg, *t.market), *t.market);
    }
    if (with_markets && cfg.eth_market) p.add_input("eth_market=" + label_for(cfg, *cfg.eth_market), *cfg.eth_market);
    if (with_markets && cfg.btc_market) p.add_input("btc_market=" + label_for(cfg, *cfg.btc_market), *cfg.btc_market);
    std::string names;
    for (const auto& t : tokens) names += (names.empty() ? "" : ";") + t.name;
    p.add_flag("tokens", names);
    p.add_flag("start", cfg.start ? format_date(*cfg.start) : "");
    p.add_flag("end", cfg.end ? format_date(*cfg.end) : "");
    p.add_flag("sma_window", std::to_string(cfg.sma_window));
    p.add_flag("ema_alpha", format_double(cfg.ema_alpha));
    p.add_flag("nw_lag", std::to_string(cfg.nw_lag));
    p.add_flag("dependent", std::string(to_string(cfg.dependent)));
    p.add_flag("drop_self_transfers", cfg.filter.drop_self_transfers ? "true" : "false");
    p.add_flag("drop_mint_burn", cfg.filter.drop_mint_burn ? "true" : "false");
    p.add_flag("error_budget", std::to_string(cfg.error_budget));
    p.add_flag("rdd_event", format_date(cfg.rdd.event));
    p.add_flag("rdd_window", format_date(cfg.rdd.start) + ".." + format_date(cfg.rdd.end));
    return p;
}

std::vector<fs::path> cmd_index(const RunConfig& cfg, const std::vector<std::string>& tokens, std::ostream& log) {
    const std::vector<TokenIndex> indices = indices_for(cfg, tokens, false, log);
    std::vector<TokenConfig> used;
    for (const auto& t : indices) used.push_back(t.token);
    const Provenance prov = make_provenance(cfg, used, false);
    const std::string csv_footer = footer(prov, "# ");

    OutputDir out(cfg.out_dir, "index");
    std::ostringstream summary;
    summary << "token,count,min,q1,median,q3,max,mean,records,kept,malformed_rows\n";
    for (const auto& t : indices) {
        out.write(t.token.name + ".csv", index_csv(t.series) + csv_footer);
        const SummaryStats s = summarize(t.series.raw);
        summary << csv::escape(t.token.name) << ',' << s.count << ',' << format_double(s.min) << ','
                << format_double(s.q1) << ',' << format_double(s.median) << ',' << format_double(s.q3) << ','
                << format_double(s.max) << ',' << format_double(s.mean) << ',' << t.records << ',' << t.accepted << ','
                << t.row_errors.size() << '\n';
        log << t.token.name << ": index min " << format_fixed(s.min, 3) << ", median " << format_fixed(s.median, 3)
            << ", max " << format_fixed(s.max, 3) << " over " << s.count << " days\n";
    }
    out.write("summary.csv", summary.str() + csv_footer);
    out.write("index_sma30.svg", render_svg(index_chart(indices, cfg.sma_window), footer(prov, "")));
    return std::move(out).files();
}

std::vector<fs::path> cmd_simulate(const RunConfig& cfg, std::ostream& log) {
    const SimulateConfig& sim = cfg.simulate;
    Provenance prov;
    prov.seed = cfg.seed;
    prov.add_flag("points", std::to_string(sim.points));
    prov.add_flag("n_max", std::to_string(sim.n_max));
    prov.add_flag("lambda_max", format_double(sim.lambda_max));
    std::string lambdas, ns;
    for (double l : sim.fixed_lambdas) lambdas += (lambdas.empty() ? "" : ";") + format_double(l);
    for (std::size_t n : sim.fixed_ns) ns += (ns.empty() ? "" : ";") + std::to_string(n);
    prov.add_flag("fixed_lambdas", lambdas);
    prov.add_flag("fixed_ns", ns);
    const std::string csv_footer = footer(prov, "# ");

    OutputDir out(cfg.out_dir, "simulate");

    const SweepGrid by_n{linspace_counts(1, sim.n_max, sim.points), sim.fixed_lambdas};
    const std::vector<SweepRow> rows_n = sweep(by_n, cfg.threads);
    const SweepGrid by_lambda{sim.fixed_ns, linspace(0.0, sim.lambda_max, sim.points)};
    const std::vector<SweepRow> rows_lambda = sweep(by_lambda, cfg.threads);

    std::ostringstream csv_n, csv_lambda;
    write_sweep_csv(csv_n, rows_n);
    write_sweep_csv(csv_lambda, rows_lambda);
    out.write("sweep_n.csv", csv_n.str() + csv_footer);
    out.write("sweep_lambda.csv", csv_lambda.str() + csv_footer);

    LineChart top;
    top.title = "Index as N grows, lambda fixed";
    top.x_label = "N (number of transactions)";
    top.y_label = "decentralization index";
    for (std::size_t j = 0; j < by_n.lambda_values.size(); ++j) {
        PlotSeries s;
        s.name = "lambda = " + format_double(by_n.lambda_values[j]);
        for (std::size_t i = 0; i < by_n.n_values.size(); ++i) {
            const SweepRow& r = rows_n[i * by_n.lambda_values.size() + j];
            s.x.push_back(static_cast<double>(r.n));
            s.y.push_back(r.index);
        }
        top.series.push_back(std::move(s));
    }
    LineChart bottom;
    bottom.title = "Index as lambda grows, N fixed";
    bottom.x_label = "lambda";
    bottom.y_label = "decentralization index";
    for (std::size_t i = 0; i < by_lambda.n_values.size(); ++i) {
        PlotSeries s;
        s.name = "N = " + std::to_string(by_lambda.n_values[i]);
        for (std::size_t j = 0; j < by_lambda.lambda_values.size(); ++j) {
            const SweepRow& r = rows_lambda[i * by_lambda.lambda_values.size() + j];
            s.x.push_back(r.lambda);
            s.y.push_back(r.index);
        }
        bottom.series.push_back(std::move(s));
    }
    out.write("index_vs_n.svg", render_svg(top, footer(prov, "")));
    out.write("index_vs_lambda.svg", render_svg(bottom, footer(prov, "")));
    log << "simulate: " << rows_n.size() << " rows over N, " << rows_lambda.size() << " rows over lambda\n";
    return std::move(out).files();
}

std::vector<fs::path> cmd_regress(const RunConfig& cfg, const std::vector<std::string>& tokens, std::ostream& log) {
    if (!cfg.eth_market) throw Error(ErrorCode::ConfigError, "regress needs run.eth_market");
    const std::vector<TokenIndex> indices = indices_for(cfg, tokens, false, log);
    const MarketSeries eth = parse_market(*cfg.eth_market);
    std::optional<MarketSeries> btc;
    if (cfg.btc_market) btc = parse_market(*cfg.btc_market);
    for (const auto& w : eth.warnings) log << "warning: " << w << '\n';
    if (btc) {
        for (const auto& w : btc->warnings) log << "warning: " << w << '\n';
    }

    std::vector<MarketRegressionReport> reports(indices.size());
    parallel_for(indices.size(), cfg.threads, [&](std::size_t i) {
        reports[i] = run_market_regressions(indices[i].series, cfg.dependent, eth, btc ? &*btc : nullptr, cfg.nw_lag,
                                            cfg.pacf_lags);
    });

    std::vector<TokenConfig> used;
    for (const auto& t : indices) used.push_back(t.token);
    const Provenance prov = make_provenance(cfg, used, true);
    const std::string csv_footer = footer(prov, "# ");
    const std::string md_footer = "\n" + footer(prov, "    ");
    const std::string note = "\nDependent variable: decentralization index (" + std::string(to_string(cfg.dependent)) +
                             "). Newey-West standard errors with " + std::to_string(cfg.nw_lag) +
                             " lag(s) in parentheses. *p<0.1; **p<0.05; ***p<0.01\n";

    OutputDir out(cfg.out_dir, "regress");

    // Features in rows, tokens in columns.
    TextTable market_table;
    market_table.header.push_back("Features");
    for (const auto& t : indices) market_table.header.push_back(t.token.name);
    const std::vector<std::string>& features = reports.front().features;
    for (std::size_t f = 0; f < features.size(); ++f) {
        std::vector<std::string> est{features[f]};
        std::vector<std::string> se{""};
        std::vector<std::string> nobs{"  Observations"};
        for (const auto& rep : reports) {
            const Coefficient& c = rep.models[f].at(features[f]);
            est.push_back(format_estimate(c));
            se.push_back(format_std_error(c));
            nobs.push_back(std::to_string(rep.models[f].n_observations));
        }
        market_table.rows.push_back(std::move(est));
        market_table.rows.push_back(std::move(se));
        market_table.rows.push_back(std::move(nobs));
    }
    std::ostringstream market_md;
    market_md << "# Market regressions on the decentralization index\n\n";
    market_table.write_markdown(market_md);
    out.write("market_regressions.md", market_md.str() + note + md_footer);

    TextTable ar_table;
    ar_table.header.push_back("Lag Period");
    for (const auto& t : indices) ar_table.header.push_back(t.token.name);
    std::vector<std::string> l1{"L1"}, l1se{""}, l1n{"Observations"};
    for (const auto& rep : reports) {
        if (!rep.autoregression) {
            l1.push_back("n/a");
            l1se.push_back("");
            l1n.push_back("");
            continue;
        }
        l1.push_back(format_estimate(rep.autoregression->at("L1")));
        l1se.push_back(format_std_error(rep.autoregression->at("L1")));
        l1n.push_back(std::to_string(rep.autoregression->n_observations));
    }
    ar_table.rows = {l1, l1se, l1n};
    std::ostringstream ar_md;
    ar_md << "# Autoregression of the decentralization index\n\n";
    ar_table.write_markdown(ar_md);
    out.write("autoregression.md", ar_md.str() + note + md_footer);

    std::ostringstream stat_csv;
    stat_csv << "token,variable,n,adf_statistic,p_value,lag,stationary_at_5pct\n";
    TextTable stat_md;
    stat_md.header = {"token", "variable", "n", "ADF statistic", "p-value", "lag", "decision"};
    for (std::size_t i = 0; i < indices.size(); ++i) {
        for (const auto& row : reports[i].stationarity) {
            stat_csv << csv::escape(indices[i].token.name) << ',' << row.variable << ',' << row.n << ',';
            if (row.result) {
                stat_csv << format_double(row.result->statistic) << ',' << format_double(row.result->p_value) << ','
                         << row.result->used_lag << ',' << (row.result->stationary_at_5pct ? "true" : "false") << '\n';
                stat_md.rows.push_back({indices[i].token.name, row.variable, std::to_string(row.n),
                                        format_fixed(row.result->statistic, 3), format_fixed(row.result->p_value, 3),
                                        std::to_string(row.result->used_lag),
                                        row.result->stationary_at_5pct ? "stationary" : "unit root not rejected"});
            } else {
                stat_csv << ",,,\n";
                stat_md.rows.push_back({indices[i].token.name, row.variable, std::to_string(row.n), "", "", "",
                                        "not tested: " + row.note});
            }
        }
    }
    out.write("stationarity.csv", stat_csv.str() + csv_footer);
    std::ostringstream stat_text;
    stat_text << "# Augmented Dickey-Fuller tests (constant, AIC lag selection, 5% level)\n\n";
    stat_md.write_markdown(stat_text);
    out.write("stationarity.md", stat_text.str() + md_footer);

    for (std::size_t i = 0; i < indices.size(); ++i) {
        const std::string& name = indices[i].token.name;
        const MarketRegressionReport& rep = reports[i];
        std::vector<std::string> labels;
        for (std::size_t f = 0; f < rep.features.size(); ++f) labels.push_back("(" + std::to_string(f + 1) + ")");
        std::ostringstream full;
        full << "# " << name << ": full market regressions\n\n";
        regression_table(labels, rep.models).write_markdown(full);
        out.write(name + "_full.md", full.str() + note + md_footer);

        std::vector<std::string> model_labels = rep.features;
        std::vector<RegressionResult> models = rep.models;
        if (rep.autoregression) {
            model_labels.push_back("AR1");
            models.push_back(*rep.autoregression);
        }
        std::ostringstream coef;
        write_coefficients_csv(coef, model_labels, models);
        out.write(name + "_coefficients.csv", coef.str() + csv_footer);
        out.write(name + ".json", regression_json(model_labels, models, prov));

        std::ostringstream pacf_csv;
        pacf_csv << "lag,coefficient,band\n";
        for (const auto& e : rep.pacf) {
            pacf_csv << e.lag << ',' << format_double(e.coefficient) << ',' << format_double(e.band) << '\n';
        }
        out.write(name + "_pacf.csv", pacf_csv.str() + csv_footer);

        std::ostringstream feat;
        write_feature_csv(feat, rep.aligned);
        out.write(name + "_features.csv", feat.str() + csv_footer);
        log << name << ": " << rep.models.size() << " market regressions, AR(1) "
            << (rep.autoregression ? "slope " + format_fixed(rep.autoregression->at("L1").estimate, 4)
                                   : "not estimated: " + rep.autoregression_note)
            << '\n';
    }
    return std::move(out).files();
}

std::vector<fs::path> cmd_rdd(const RunConfig& cfg, const std::vector<std::string>& tokens, std::ostream& log) {
    const std::vector<TokenIndex> indices = indices_for(cfg, tokens, false, log);
    std::vector<MarketSeries> markets;
    for (const auto& t : indices) {
        if (!t.token.market) throw Error(ErrorCode::ConfigError, "rdd needs a market file for token " + t.token.name);
        markets.push_back(parse_market(*t.token.market));
        for (const auto& w : markets.back().warnings) log << "warning: " << w << '\n';
    }
    std::vector<std::vector<RddReport>> reports(indices.size());
    parallel_for(indices.size(), cfg.threads,
                 [&](std::size_t i) { reports[i] = run_rdd(indices[i].series, markets[i], cfg.rdd, cfg.nw_lag); });

    std::vector<TokenConfig> used;
    for (const auto& t : indices) used.push_back(t.token);
    const Provenance prov = make_provenance(cfg, used, true);
    const std::string csv_footer = footer(prov, "# ");
    const std::string md_footer = "\n" + footer(prov, "    ");
    const std::vector<std::string> labels = {"(1)", "(2)", "(3)"};

    OutputDir out(cfg.out_dir, "rdd");
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const std::string& name = indices[i].token.name;
        std::vector<std::string> model_labels;
        std::vector<RegressionResult> models;
        for (const RddReport& rep : reports[i]) {
            const std::string channel(to_string(rep.channel));
            std::ostringstream md;
            md << "# " << name << ": regression discontinuity at " << format_date(cfg.rdd.event) << "\n\n"
               << "Dependent variable: decentralization index " << channel << ", window "
               << format_date(cfg.rdd.start) << " to " << format_date(cfg.rdd.end) << "\n\n";
            regression_table(labels, rep.models).write_markdown(md);
            md << "\nNewey-West standard errors with " << cfg.nw_lag
               << " lag(s) in parentheses. *p<0.1; **p<0.05; ***p<0.01\n";
            if (rep.channel == RddChannel::Ema) md << "Exponential moving average alpha = " << format_double(cfg.ema_alpha) << '\n';
            std::string lower = channel;
            std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
            out.write(name + "_" + lower + ".md", md.str() + md_footer);
            for (std::size_t k = 0; k < rep.models.size(); ++k) {
                model_labels.push_back(channel + labels[k]);
                models.push_back(rep.models[k]);
            }
            log << name << " " << channel << ": EIP " << format_estimate(rep.models[0].at("EIP")) << " "
                << format_std_error(rep.models[0].at("EIP")) << ", " << rep.models[0].n_observations
                << " observations\n";
        }
        std::ostringstream coef;
        write_coefficients_csv(coef, model_labels, models);
        out.write(name + "_coefficients.csv", coef.str() + csv_footer);
        out.write(name + ".json", regression_json(model_labels, models, prov));
    }
    return std::move(out).files();
}

std::vector<fs::path> cmd_report(const RunConfig& cfg, const std::vector<std::string>& tokens, std::ostream& log) {
    const std::vector<TokenIndex> indices = indices_for(cfg, tokens, true, log);
    std::vector<TokenConfig> used;
    for (const auto& t : indices) used.push_back(t.token);
    const Provenance prov = make_provenance(cfg, used, true);
    const std::string csv_footer = footer(prov, "# ");

    OutputDir out(cfg.out_dir, "report");
    std::ostringstream desc;
    desc << "token,count,min,q1,median,q3,max,mean\n";
    std::ostringstream pearson;
    pearson << "token,variable,r,t_statistic,p_value,n\n";

    for (const auto& t : indices) {
        const std::string& name = t.token.name;
        const SummaryStats s = summarize(t.series.raw);
        desc << csv::escape(name) << ',' << s.count << ',' << format_double(s.min) << ',' << format_double(s.q1) << ','
             << format_double(s.median) << ',' << format_double(s.q3) << ',' << format_double(s.max) << ','
             << format_double(s.mean) << '\n';

        std::ostringstream hist;
        hist << "bin_lower,bin_upper,count\n";
        if (s.count > 0) {
            const double width = s.max > s.min ? (s.max - s.min) / kHistogramBins : 1.0;
            std::vector<std::size_t> counts(kHistogramBins, 0);
            for (double v : t.series.raw) {
                auto b = static_cast<std::size_t>((v - s.min) / width);
                counts[std::min(b, kHistogramBins - 1)]++;
            }
            for (std::size_t b = 0; b < kHistogramBins; ++b) {
                hist << format_double(s.min + width * static_cast<double>(b)) << ','
                     << format_double(s.min + width * static_cast<double>(b + 1)) << ',' << counts[b] << '\n';
            }
        }
        out.write(name + "_histogram.csv", hist.str() + csv_footer);

        std::ostringstream metrics;
        metrics << "date,index,shannon_bits,gini,hhi,nakamoto51,transfers\n";
        for (const auto& w : t.windows) {
            const WeightDistribution dist = weights(w.values);
            metrics << format_date(w.date) << ',' << format_double(decentralization_index(dist)) << ','
                    << format_double(shannon_entropy_bits(dist)) << ',' << format_double(gini(dist)) << ','
                    << format_double(hhi(dist)) << ',' << nakamoto(dist) << ',' << w.values.size() << '\n';
        }
        out.write(name + "_metrics.csv", metrics.str() + csv_footer);

        std::ostringstream pacf_csv;
        pacf_csv << "lag,coefficient,band\n";
        const std::size_t lags = std::min(cfg.pacf_lags, t.series.size() >= 3 ? t.series.size() - 2 : 0);
        if (lags > 0) {
            for (const auto& e : pacf(t.series.raw, lags)) {
                pacf_csv << e.lag << ',' << format_double(e.coefficient) << ',' << format_double(e.band) << '\n';
            }
        }
        out.write(name + "_pacf.csv", pacf_csv.str() + csv_footer);

        if (t.token.market) {
            const MarketSeries market = parse_market(*t.token.market);
            for (const char* variable : {"TxTfrValAdjUSD", "TxTfrCnt"}) {
                const Column* col = market.find(variable);
                if (!col) continue;
                std::vector<double> xs, ys;
                for (std::size_t i = 0; i < t.series.size(); ++i) {
                    const auto pos = market.position(t.series.dates[i]);
                    if (pos && (*col)[*pos]) {
                        xs.push_back(t.series.raw[i]);
                        ys.push_back(*(*col)[*pos]);
                    }
                }
                if (xs.size() < 3) continue;
                const PearsonResult r = pearson_test(xs, ys);
                pearson << csv::escape(name) << ',' << variable << ',' << format_double(r.r) << ','
                        << format_double(r.t_statistic) << ',' << format_double(r.p_value) << ',' << r.n << '\n';
                log << name << ": corr(index, " << variable << ") = " << format_fixed(r.r, 3) << " (p "
                    << format_fixed(r.p_value, 3) << ", n " << r.n << ")\n";
            }
        }
    }
    out.write("descriptive.csv", desc.str() + csv_footer);
    out.write("pearson.csv", pearson.str() + csv_footer);
    out.write("index_sma30.svg", render_svg(index_chart(indices, cfg.sma_window), footer(prov, "")));
    return std::move(out).files();
}

}  // namespace decentral
