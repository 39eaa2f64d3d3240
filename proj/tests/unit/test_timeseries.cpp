#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "decentral/error.hpp"
#include "decentral/index.hpp"
#include "decentral/timeseries.hpp"
#include "deterministic_series.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace decentral;

namespace {

Date day0() { return Date{std::chrono::year{2021} / 7 / 1}; }

MarketSeries prices(const std::vector<double>& p) {
    MarketSeries m;
    Column c;
    for (std::size_t i = 0; i < p.size(); ++i) {
        m.dates.push_back(day0() + std::chrono::days{i});
        c.push_back(p[i]);
    }
    m.columns["PriceUSD"] = c;
    return m;
}

}  // namespace

TEST_CASE("sma matches prefix sums") {
    gen::Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = gen::gaussian(rng, gen::size_between(rng, 1, 120), 5.0);
        const std::size_t window = gen::size_between(rng, 1, 40);
        const Column got = sma(x, window);
        const auto want = oracle::sma_prefix(x, window);
        REQUIRE(got.size() == x.size());
        for (std::size_t t = 0; t < x.size(); ++t) {
            CHECK(got[t].has_value() == want[t].has_value());
            if (got[t] && want[t]) CHECK(*got[t] == doctest::Approx(*want[t]).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(sma(std::vector<double>{1.0}, 0), Error);
}

TEST_CASE("sma of the first full window") {
    std::vector<double> x(30);
    for (int i = 0; i < 30; ++i) x[i] = i + 1;
    const Column s = sma(x);
    CHECK_FALSE(s[28]);
    REQUIRE(s[29]);
    CHECK(*s[29] == doctest::Approx(15.5));
}

TEST_CASE("ema recursion") {
    const std::vector<double> x{1.0, 2.0, 3.0};
    const auto e = ema(x, 0.5);
    CHECK(e == std::vector<double>{1.0, 1.5, 2.25});
    CHECK(ema(x, 1.0) == x);
    CHECK_THROWS_AS(ema(x, 0.0), Error);
    CHECK_THROWS_AS(ema(x, 1.5), Error);
    gen::Rng rng(32);
    const auto y = gen::gaussian(rng, 500);
    const auto f = ema(y, kEmaAlpha);
    for (std::size_t t = 1; t < y.size(); ++t) CHECK(f[t] == doctest::Approx(0.1 * y[t] + 0.9 * f[t - 1]));
}

TEST_CASE("returns and volatility") {
    const Column p{100.0, 110.0, std::nullopt, 121.0, 133.1};
    const Column r1 = returns(p, 1);
    CHECK_FALSE(r1[0]);
    CHECK(*r1[1] == doctest::Approx(0.1));
    CHECK_FALSE(r1[2]);
    CHECK_FALSE(r1[3]);
    CHECK(*r1[4] == doctest::Approx(0.1));
    const Column r2 = returns(p, 2);
    CHECK(*r2[3] == doctest::Approx(0.1));
    CHECK_THROWS_AS(returns(Column{1.0, 0.0}, 1), Error);
    CHECK_THROWS_AS(returns(p, 0), Error);

    gen::Rng rng(33);
    Column q;
    double level = 50.0;
    for (int i = 0; i < 80; ++i) q.push_back(level *= std::exp(0.02 * gen::gaussian(rng, 1)[0]));
    const Column v = volatility30(q);
    for (std::size_t t = 0; t < 30; ++t) CHECK_FALSE(v[t]);
    for (std::size_t t = 30; t < q.size(); ++t) {
        std::vector<double> lr;
        for (std::size_t s = t - 29; s <= t; ++s) lr.push_back(std::log(*q[s] / *q[s - 1]));
        double m = 0.0;
        for (double a : lr) m += a;
        m /= 30.0;
        double ss = 0.0;
        for (double a : lr) ss += (a - m) * (a - m);
        REQUIRE(v[t]);
        CHECK(*v[t] == doctest::Approx(std::sqrt(ss / 29.0)).epsilon(1e-12));
    }
}

TEST_CASE("acf and pacf against reference values") {
    const auto x = fixed_series::noise(200);
    const auto a = acf(x, 3);
    REQUIRE(a.size() == 3);
    const auto p = pacf(x, 5);
    CHECK(p[0].coefficient == doctest::Approx(a[0]).epsilon(1e-12));
    REQUIRE(p.size() == 5);
    const double ref[] = {-0.4221309589497243, -0.07810517971198756, -0.04888935022221984, -0.41037388534906605,
                          0.6161423026900708};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(p[i].lag == i + 1);
        CHECK(p[i].coefficient == doctest::Approx(ref[i]).epsilon(1e-10));
        CHECK(p[i].band == doctest::Approx(1.96 / std::sqrt(200.0)));
    }
    CHECK_THROWS_AS(pacf(std::vector<double>(10, 2.0), 3), Error);
    CHECK_THROWS_AS(pacf(std::vector<double>{1.0, 2.0}, 5), Error);
}

TEST_CASE("index series from windows") {
    std::vector<DailyWindow> windows;
    for (int i = 0; i < 40; ++i) {
        windows.push_back({day0() + std::chrono::days{i}, std::vector<double>(static_cast<std::size_t>(i % 5 + 1), 1.0)});
    }
    const IndexSeries s = build_index_series(windows, 30, 0.1, 4);
    REQUIRE(s.size() == 40);
    CHECK(s.raw[0] == doctest::Approx(1.0));
    CHECK(s.raw[4] == doctest::Approx(5.0));
    CHECK_FALSE(s.sma30[28]);
    CHECK(*s.sma30[29] == doctest::Approx(3.0));
    CHECK(s.ema[0] == s.raw[0]);
    CHECK(s.position(day0() + std::chrono::days{3}) == 3u);
    CHECK_FALSE(s.position(day0() - std::chrono::days{1}));
    CHECK_THROWS_AS(make_index_series({day0(), day0()}, {1.0, 1.0}), Error);
}

TEST_CASE("return panel") {
    std::vector<double> p(45);
    for (int i = 0; i < 45; ++i) p[i] = 100.0 * std::pow(1.01, i);
    const FeatureTable t = return_panel(prices(p), "ETH");
    std::vector<std::string> names;
    for (const auto& [n, c] : t.columns) names.push_back(n);
    CHECK(names == std::vector<std::string>{"ETH_Ret", "ETH_Ret7", "ETH_Ret14", "ETH_Ret21", "ETH_Ret30",
                                            "ETH_VtyDayRet30d"});
    const Column& r30 = *t.find("ETH_Ret30");
    CHECK_FALSE(r30[29]);
    CHECK(*r30[30] == doctest::Approx(std::pow(1.01, 30) - 1.0));
    CHECK(*(*t.find("ETH_VtyDayRet30d"))[40] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(return_column_name("BTC", 1) == "BTC_Ret");
    std::ostringstream out;
    write_feature_csv(out, t);
    CHECK(out.str().rfind("date,ETH_Ret,", 0) == 0);

    MarketSeries none;
    none.dates = {day0()};
    CHECK_THROWS_AS(return_panel(none, "X"), Error);
}

TEST_CASE("smoothing worked examples") {
    const std::vector<double> c(50, 3.25);
    const Column s = sma(c);
    for (std::size_t t = 29; t < 50; ++t) CHECK(*s[t] == doctest::Approx(3.25).epsilon(1e-15));
    for (double v : ema(c)) CHECK(v == doctest::Approx(3.25).epsilon(1e-15));
    const auto e = ema(std::vector<double>{0.0, 1.0}, 0.1);
    CHECK(e[0] == 0.0);
    CHECK(e[1] == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("return and volatility worked examples") {
    const Column flat(40, 10.0);
    for (const auto& r : returns(flat, 7)) CHECK((!r || *r == 0.0));
    for (const auto& v : volatility30(flat)) CHECK((!v || *v == 0.0));

    Column doubling;
    for (int i = 0; i < 20; ++i) doubling.push_back(std::pow(2.0, i / 5.0));
    CHECK(*returns(doubling, 5)[12] == doctest::Approx(1.0).epsilon(1e-14));

    Column alternating;
    for (int i = 0; i < 40; ++i) alternating.push_back(i % 2 ? 20.0 : 10.0);
    const double want = std::log(2.0) * std::sqrt(30.0 / 29.0);
    const Column v = volatility30(alternating);
    for (std::size_t t = 30; t < 40; ++t) CHECK(*v[t] == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("fixture prices against an independent rolling oracle") {
    const MarketSeries eth = parse_market(std::filesystem::path(DECENTRAL_FIXTURE_DIR) / "market/eth.csv");
    const Column& p = *eth.find("PriceUSD");
    const Column r7 = returns(p, 7);
    const Column vol = volatility30(p);
    const Column& file_vol = *eth.find("VtyDayRet30d");
    for (std::size_t t = 0; t < p.size(); ++t) {
        if (t >= 7) CHECK(*r7[t] == doctest::Approx(static_cast<double>(static_cast<long double>(*p[t]) / *p[t - 7] - 1.0L)).epsilon(1e-12));
        if (t < 30) continue;
        long double mean = 0.0L, ss = 0.0L;
        for (std::size_t s = t - 29; s <= t; ++s) mean += std::log(static_cast<long double>(*p[s]) / *p[s - 1]);
        mean /= 30.0L;
        for (std::size_t s = t - 29; s <= t; ++s) {
            const long double d = std::log(static_cast<long double>(*p[s]) / *p[s - 1]) - mean;
            ss += d * d;
        }
        CHECK(*vol[t] == doctest::Approx(static_cast<double>(std::sqrt(ss / 29.0L))).epsilon(1e-12));
        // The generator wrote the same statistic rounded to 8 decimals.
        CHECK(std::abs(*vol[t] - *file_vol[t]) < 1e-8);
    }
}

TEST_CASE("pacf of white noise stays inside the band") {
    std::size_t inside = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        gen::Rng rng(3400 + seed);
        for (const auto& e : pacf(gen::gaussian(rng, 5000), 20)) {
            inside += std::abs(e.coefficient) <= e.band ? 1 : 0;
            ++total;
        }
    }
    CHECK(static_cast<double>(inside) / static_cast<double>(total) >= 0.93);
}

TEST_CASE("pacf at lag one equals the acf") {
    gen::Rng rng(35);
    const auto e = gen::gaussian(rng, 300);
    std::vector<double> x(300);
    x[0] = e[0];
    for (std::size_t t = 1; t < 300; ++t) x[t] = 0.7 * x[t - 1] + e[t];
    CHECK(pacf(x, 3)[0].coefficient == doctest::Approx(acf(x, 1)[0]).epsilon(1e-14));
}
