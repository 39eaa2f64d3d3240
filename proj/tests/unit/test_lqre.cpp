#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "decentral/error.hpp"
#include "decentral/lqre.hpp"
#include "oracles.hpp"

using namespace decentral;

TEST_CASE("three transactions at lambda = ln 2") {
    const LqreConfig cfg{3, std::numbers::ln2};
    const WeightDistribution w = lqre_weights(cfg);
    REQUIRE(w.size() == 3);
    CHECK(std::abs(w[0] - 1.0 / 7.0) < 1e-12);
    CHECK(std::abs(w[1] - 2.0 / 7.0) < 1e-12);
    CHECK(std::abs(w[2] - 4.0 / 7.0) < 1e-12);
    // exp of the entropy of (1/7, 2/7, 4/7), evaluated at 40 digits.
    CHECK(lqre_index(cfg) == doctest::Approx(2.600490005989659743).epsilon(1e-14));
}

TEST_CASE("lambda = 0 is uniform") {
    for (std::size_t n : {1u, 2u, 17u, 1000u, 100000u}) CHECK(lqre_index({n, 0.0}) == static_cast<double>(n));
}

TEST_CASE("closed-form geometric series oracle") {
    for (std::size_t n : {1u, 2u, 5u, 30u, 200u, 5000u}) {
        for (double lambda : {1e-6, 0.001, 0.01, 0.1, 0.5, 1.0, 3.0, 20.0, 300.0}) {
            CAPTURE(n);
            CAPTURE(lambda);
            CHECK(lqre_index({n, lambda}) == doctest::Approx(oracle::lqre_closed_form(n, lambda)).epsilon(1e-11));
        }
    }
}

TEST_CASE("extended precision agrees with double") {
    for (std::size_t n : {3u, 40u, 200u}) {
        for (double lambda : {0.0, 0.01, 1.0, 50.0}) {
            const double ext = static_cast<double>(lqre_index_extended({n, lambda}));
            CHECK(lqre_index({n, lambda}) == doctest::Approx(ext).epsilon(1e-13));
        }
    }
}

TEST_CASE("comparative statics") {
    double prev = lqre_index({100, 0.0});
    for (double lambda = 0.05; lambda <= 5.0; lambda += 0.05) {
        const double h = lqre_index({100, lambda});
        CHECK(h < prev);
        prev = h;
    }
    CHECK(std::abs(lqre_index({200, 500.0}) - 1.0) < 1e-6);
    const double extreme = lqre_index({10000, 10000.0});
    CHECK(std::isfinite(extreme));
    CHECK(extreme == doctest::Approx(1.0));
    for (std::size_t n = 2; n < 200; ++n) {
        CHECK(lqre_index_extended({n + 1, 1.0}) > lqre_index_extended({n, 1.0}));
        CHECK(lqre_index({n + 1, 0.1}) > lqre_index({n, 0.1}));
    }
}

TEST_CASE("invalid configurations") {
    CHECK_THROWS_AS(lqre_index({0, 1.0}), Error);
    CHECK_THROWS_AS(lqre_index({3, -1.0}), Error);
    CHECK_THROWS_AS(lqre_index({3, NAN}), Error);
    CHECK_THROWS_AS(sweep({{}, {1.0}}), Error);
    CHECK_THROWS_AS(sweep({{3, 2}, {1.0}}), Error);
    CHECK_THROWS_AS(sweep({{2, 3}, {1.0, 1.0}}), Error);
}

TEST_CASE("sweep layout and thread invariance") {
    const SweepGrid grid{linspace_counts(1, 500, 40), linspace(0.0, 3.0, 7)};
    const auto one = sweep(grid, 1);
    const auto many = sweep(grid, 8);
    REQUIRE(one.size() == grid.n_values.size() * grid.lambda_values.size());
    CHECK(one[0].n == 1);
    CHECK(one[1].n == 1);
    CHECK(one[1].lambda == 0.5);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].n == many[i].n);
        CHECK(one[i].lambda == many[i].lambda);
        CHECK(one[i].index == many[i].index);
    }
    std::ostringstream csv;
    write_sweep_csv(csv, one);
    CHECK(csv.str().rfind("n,lambda,index\n1,0,1\n", 0) == 0);
}

TEST_CASE("grids") {
    const auto l = linspace(0.0, 1.0, 5);
    CHECK(l == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    const auto c = linspace_counts(1, 4, 10);
    CHECK(c == std::vector<std::size_t>{1, 2, 3, 4});
    const auto big = linspace_counts(1, 10000, 200);
    CHECK(big.front() == 1);
    CHECK(big.back() == 10000);
    CHECK(big.size() == 200);
}

TEST_CASE("worked examples") {
    const WeightDistribution uniform = lqre_weights({5, 0.0});
    for (std::size_t i = 0; i < 5; ++i) CHECK(uniform[i] == doctest::Approx(0.2).epsilon(1e-15));
    const WeightDistribution steep = lqre_weights({2, 100.0});
    CHECK(steep[0] < 1e-40);
    CHECK(steep[0] == doctest::Approx(std::exp(-100.0)).epsilon(1e-12));
    CHECK(steep[1] == doctest::Approx(1.0));
    CHECK(lqre_index({100, 0.0}) == 100.0);
    for (double lambda : {0.0, 0.3, 1e4}) CHECK(lqre_index({1, lambda}) == 1.0);

    const auto single = sweep({{1}, {0.0}});
    REQUIRE(single.size() == 1);
    CHECK(single[0].n == 1);
    CHECK(single[0].lambda == 0.0);
    CHECK(single[0].index == 1.0);
    const auto pair = sweep({{2, 3}, {0.0}});
    CHECK(pair[0].index == 2.0);
    CHECK(pair[1].index == 3.0);
    const auto col = sweep({{3}, {0.0, std::numbers::ln2, 100.0}});
    CHECK(col[0].index > col[1].index);
    CHECK(col[1].index > col[2].index);
}
