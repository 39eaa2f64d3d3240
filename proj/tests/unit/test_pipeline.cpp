#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "decentral/config.hpp"
#include "decentral/digest.hpp"
#include "decentral/error.hpp"
#include "decentral/lqre.hpp"
#include "decentral/pipeline.hpp"
#include "decentral/report.hpp"
#include "decentral/svg.hpp"
#include "generators.hpp"

using namespace decentral;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = DECENTRAL_FIXTURE_DIR;

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("decentral_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig one_token(const fs::path& dir, const std::string& transfers) {
    write_file(dir / "t.csv", "token_address,from_address,to_address,value,block_timestamp\n" + transfers);
    RunConfig cfg;
    cfg.tokens.push_back({"tok", dir / "t.csv", std::nullopt, std::nullopt, ""});
    cfg.base_dir = dir;
    cfg.out_dir = dir / "out";
    return cfg;
}

std::vector<std::string> data_lines(const fs::path& p) {
    std::istringstream in(read_file(p));
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected decentral::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("shipped configuration loads") {
    const RunConfig cfg = load_config(kFixtures / "decentral.ini");
    REQUIRE(cfg.tokens.size() == 2);
    CHECK(cfg.tokens[0].name == "dai");
    CHECK(cfg.tokens[1].name == "sai");
    CHECK(cfg.tokens[0].transfers == kFixtures / "transfers/dai.csv");
    CHECK(cfg.eth_market == kFixtures / "market/eth.csv");
    CHECK(cfg.seed == 20210805);
    CHECK(cfg.nw_lag == 1);
    CHECK(cfg.ema_alpha == 0.1);
    CHECK(format_date(cfg.rdd.event) == "2021-08-05");
    CHECK(cfg.simulate.fixed_ns == std::vector<std::size_t>{100, 10000, 50000, 100000});
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.select_tokens({"sai"}).size() == 1);
    CHECK(code_of([&] { cfg.select_tokens({"usdt"}); }) == ErrorCode::ConfigError);
}

TEST_CASE("configuration errors") {
    TempDir dir("config");
    write_file(dir.path / "a.ini", "[run]\nbogus = 1\n");
    CHECK(code_of([&] { load_config(dir.path / "a.ini"); }) == ErrorCode::ConfigError);
    write_file(dir.path / "b.ini", "[weird]\nx = 1\n");
    CHECK(code_of([&] { load_config(dir.path / "b.ini"); }) == ErrorCode::ConfigError);
    write_file(dir.path / "c.ini", "[run]\nstart = 2021-13-01\n");
    CHECK(code_of([&] { load_config(dir.path / "c.ini"); }) == ErrorCode::ConfigError);
    write_file(dir.path / "d.ini", "[token.x]\nmarket = m.csv\n");
    CHECK(code_of([&] { load_config(dir.path / "d.ini"); }) == ErrorCode::ConfigError);
    write_file(dir.path / "e.ini", "[token.x]\ntransfers = missing.csv\n");
    CHECK(code_of([&] { load_config(dir.path / "e.ini").validate(); }) == ErrorCode::ConfigError);
    write_file(dir.path / "f.ini", "[run]\nstart = 2021-02-01\nend = 2021-01-01\n");
    CHECK(code_of([&] { load_config(dir.path / "f.ini").validate(); }) == ErrorCode::ConfigError);
    CHECK(is_validation_error(ErrorCode::ConfigError));
}

TEST_CASE("index of a single transfer is one") {
    TempDir dir("single");
    const RunConfig cfg = one_token(dir.path, "0xt,0xa,0xb,1000,2021-07-01T12:00:00Z\n");
    std::ostringstream log;
    const auto files = cmd_index(cfg, {}, log);
    const auto lines = data_lines(dir.path / "out/index/tok.csv");
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "date,index,sma30,ema");
    CHECK(lines[1] == "2021-07-01,1,,1");
    CHECK(files.size() == 3);
}

TEST_CASE("two equal transfers give index two") {
    TempDir dir("pair");
    const RunConfig cfg = one_token(dir.path, "0xt,0xa,0xb,5,2021-07-01T01:00:00Z\n0xt,0xc,0xd,5,2021-07-01T02:00:00Z\n");
    std::ostringstream log;
    cmd_index(cfg, {}, log);
    const auto lines = data_lines(dir.path / "out/index/tok.csv");
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "2021-07-01,2,,2");
    const auto summary = data_lines(dir.path / "out/index/summary.csv");
    CHECK(summary[1].rfind("tok,1,2,2,2,2,2,2,2,2,0", 0) == 0);
}

TEST_CASE("malformed rows surface with file and line") {
    TempDir dir("malformed");
    RunConfig cfg = one_token(dir.path, "0xt,0xa,0xb,5,2021-07-01T01:00:00Z\n0xt,0xa,0xb,x,2021-07-01T01:00:00Z\n");
    std::ostringstream log;
    cmd_index(cfg, {}, log);
    CHECK(log.str().find("t.csv:3") != std::string::npos);
    cfg.error_budget = 0;
    CHECK(code_of([&] { cmd_index(cfg, {}, log); }) == ErrorCode::RowParseError);
}

TEST_CASE("date range and filters restrict the index") {
    TempDir dir("range");
    RunConfig cfg = one_token(dir.path,
                              "0xt,0xa,0xb,5,2021-07-01T01:00:00Z\n"
                              "0xt,0xa,0xa,5,2021-07-02T01:00:00Z\n"
                              "0xt,0xa,0xb,5,2021-07-02T02:00:00Z\n"
                              "0xt,0xa,0xb,5,2021-07-03T01:00:00Z\n");
    cfg.start = parse_date("2021-07-02");
    cfg.end = parse_date("2021-07-02");
    const TokenIndex all = compute_token_index(cfg.tokens[0], cfg);
    REQUIRE(all.series.size() == 1);
    CHECK(all.series.raw[0] == doctest::Approx(2.0));
    cfg.filter.drop_self_transfers = true;
    const TokenIndex filtered = compute_token_index(cfg.tokens[0], cfg);
    CHECK(filtered.series.raw[0] == doctest::Approx(1.0));
    CHECK(filtered.accepted == 1);
    CHECK(filtered.records == 4);
}

TEST_CASE("index output is deterministic across runs and thread counts") {
    TempDir dir("determinism");
    RunConfig cfg = load_config(kFixtures / "decentral.ini");
    cfg.end = parse_date("2021-05-31");
    std::ostringstream log;
    cfg.threads = 1;
    cfg.out_dir = dir.path / "a";
    const auto a = cmd_index(cfg, {}, log);
    cfg.out_dir = dir.path / "b";
    const auto b = cmd_index(cfg, {}, log);
    cfg.threads = 8;
    cfg.out_dir = dir.path / "c";
    const auto c = cmd_index(cfg, {}, log);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(read_file(a[i]) == read_file(b[i]));
        CHECK(read_file(a[i]) == read_file(c[i]));
    }
    const std::string dai = read_file(dir.path / "a/index/dai.csv");
    CHECK(dai.find("# provenance") != std::string::npos);
    CHECK(dai.find("# seed 20210805") != std::string::npos);
    CHECK(dai.find("sha256=" + sha256_file(kFixtures / "transfers/dai.csv")) != std::string::npos);
}

TEST_CASE("simulate sweeps") {
    TempDir dir("simulate");
    RunConfig cfg;
    cfg.out_dir = dir.path;
    cfg.simulate.points = 100;
    cfg.simulate.n_max = 100;
    cfg.simulate.fixed_lambdas = {0.0};
    cfg.simulate.fixed_ns = {100};
    cfg.simulate.lambda_max = 2.0;
    std::ostringstream log;
    const auto files = cmd_simulate(cfg, log);
    CHECK(files.size() == 4);
    const auto by_n = data_lines(dir.path / "simulate/sweep_n.csv");
    REQUIRE(by_n.size() == 101);
    for (std::size_t i = 1; i < by_n.size(); ++i) {
        CHECK(by_n[i] == std::to_string(i) + ",0," + std::to_string(i));
    }
    const auto by_lambda = data_lines(dir.path / "simulate/sweep_lambda.csv");
    REQUIRE(by_lambda.size() == 101);
    double prev = 1e300;
    for (std::size_t i = 1; i < by_lambda.size(); ++i) {
        const double h = std::stod(by_lambda[i].substr(by_lambda[i].rfind(',') + 1));
        CHECK(h < prev);
        prev = h;
    }
    const std::string svg = read_file(dir.path / "simulate/index_vs_n.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("lambda = 0") != std::string::npos);
}

TEST_CASE("market regressions on synthetic data") {
    gen::Rng rng(51);
    const std::size_t n = 400;
    MarketSeries eth;
    Column price;
    double p = 2000.0;
    std::normal_distribution<double> z(0.0, 0.03);
    const Date first{std::chrono::year{2021} / 1 / 1};
    for (std::size_t i = 0; i < n; ++i) {
        eth.dates.push_back(first + std::chrono::days{i});
        price.push_back(p *= std::exp(z(rng)));
    }
    eth.columns["PriceUSD"] = price;
    const Column ret30 = returns(price, 30);
    std::vector<Date> dates;
    std::vector<double> raw;
    std::normal_distribution<double> noise(0.0, 5.0);
    for (std::size_t i = 30; i < n; ++i) {
        dates.push_back(eth.dates[i]);
        raw.push_back(100.0 + 800.0 * *ret30[i] + noise(rng));
    }
    const IndexSeries series = make_index_series(dates, raw);
    const auto rep = run_market_regressions(series, DependentChannel::Raw, eth, nullptr, 1, 10);
    REQUIRE(rep.features.size() == 7);
    CHECK(rep.features[4] == "ETH_Ret30");
    CHECK(rep.features.back() == "ETH_PC");
    const Coefficient& c = rep.models[4].at("ETH_Ret30");
    CHECK(std::abs(c.estimate - 800.0) < 2.0 * c.std_error);
    for (const auto& m : rep.models) CHECK(m.n_observations + m.dropped_rows == series.size());
    CHECK(rep.pacf.size() == 10);
    CHECK(rep.stationarity.front().variable == "val");

    const IndexSeries flat = make_index_series(dates, std::vector<double>(dates.size(), 4.0));
    const auto rep_flat = run_market_regressions(flat, DependentChannel::Raw, eth, nullptr, 1, 0);
    for (std::size_t f = 0; f < rep_flat.features.size(); ++f) {
        CHECK(std::abs(rep_flat.models[f].at(rep_flat.features[f]).estimate) < 1e-8);
    }
    CHECK_FALSE(rep_flat.autoregression);
    CHECK_FALSE(rep_flat.autoregression_note.empty());
    CHECK_FALSE(rep_flat.stationarity.front().result);
}

TEST_CASE("report helpers") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    Coefficient c{"x", 1.23456, 0.1, 12.3456, 0.001};
    CHECK(format_estimate(c) == "1.235***");
    CHECK(format_std_error(c) == "(0.100)");
    TextTable t{{"a", "b"}, {{"1", "2"}}};
    std::ostringstream md;
    t.write_markdown(md);
    CHECK(md.str() == "| a | b |\n| :--- | ---: |\n| 1 | 2 |\n");
    const auto s = summarize(std::vector<double>{4.0, 1.0, 3.0, 2.0});
    CHECK(s.median == doctest::Approx(2.5));
    CHECK(s.q1 == doctest::Approx(1.75));
    CHECK(s.mean == doctest::Approx(2.5));

    LineChart chart{"t", "x", "y", false, {{"one", {0.0, 1.0, 2.0}, {1.0, NAN, 3.0}}}};
    const std::string svg = render_svg(chart, "note");
    CHECK(svg == render_svg(chart, "note"));
    CHECK(svg.find("<!--") != std::string::npos);
    CHECK(svg.find(">one<") != std::string::npos);
}
