#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "decentral/error.hpp"
#include "decentral/index.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace decentral;

namespace {

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

TEST_CASE("index of hand-derived values") {
    const std::vector<double> v{1.0, 1.0, 2.0};
    CHECK(decentralization_index(v) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-14));
    CHECK(decentralization_index(std::vector<double>{5.0}) == 1.0);
    CHECK(decentralization_index(std::vector<double>{3.0, 3.0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(decentralization_index(std::vector<double>{0.0, 7.0, 0.0}) == 1.0);
}

TEST_CASE("weights normalize values") {
    const WeightDistribution w = weights(std::vector<double>{1.0, 3.0});
    REQUIRE(w.size() == 2);
    CHECK(w[0] == doctest::Approx(0.25));
    CHECK(w[1] == doctest::Approx(0.75));
    CHECK(w.support_size() == 2);
    CHECK(shannon_entropy_bits(w) == doctest::Approx(0.8112781244591328));
}

TEST_CASE("invalid transaction values") {
    CHECK(code_of([] { decentralization_index(std::vector<double>{0.0, 0.0}); }) == ErrorCode::AllZero);
    CHECK(code_of([] { decentralization_index(std::vector<double>{}); }) == ErrorCode::AllZero);
    CHECK(code_of([] { decentralization_index(std::vector<double>{1.0, -1.0}); }) == ErrorCode::NegativeValue);
    CHECK(code_of([] { decentralization_index(std::vector<double>{1.0, NAN}); }) == ErrorCode::NegativeValue);
    CHECK(code_of([] { decentralization_index(std::vector<double>{1.0, INFINITY}); }) == ErrorCode::InvalidArgument);
    CHECK(is_validation_error(ErrorCode::AllZero));
}

TEST_CASE("weight distribution invariants") {
    CHECK_NOTHROW(WeightDistribution({0.5, 0.5}));
    CHECK_NOTHROW(WeightDistribution({0.5, 0.5 + 5e-10}));
    CHECK(code_of([] { WeightDistribution w(std::vector<double>{}); }) == ErrorCode::InvalidArgument);
    CHECK_THROWS_AS(WeightDistribution({0.5, 0.6}), Error);
    CHECK_THROWS_AS(WeightDistribution({1.5, -0.5}), Error);
    const auto u = WeightDistribution::uniform(4);
    CHECK(decentralization_index(u) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("auxiliary metrics") {
    CHECK(gini(WeightDistribution({0.0, 0.0, 0.0, 1.0})) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(gini(WeightDistribution::uniform(10)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(hhi(WeightDistribution({0.25, 0.25, 0.5})) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(nakamoto(WeightDistribution({0.4, 0.3, 0.2, 0.1})) == 2);
    CHECK(nakamoto(WeightDistribution::uniform(100)) == 51);
    CHECK(nakamoto(WeightDistribution({1.0})) == 1);
    CHECK(nakamoto(WeightDistribution({0.25, 0.25, 0.25, 0.25}), 0.5) == 2);
}

TEST_CASE("property: index agrees with a direct long double evaluation") {
    gen::Rng rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto v = gen::transaction_values(rng, gen::size_between(rng, 1, 300));
        const double h = decentralization_index(v);
        CHECK(h == doctest::Approx(oracle::index_direct(v)).epsilon(1e-11));
    }
}

TEST_CASE("property: bounds, symmetry, scale invariance, product form") {
    gen::Rng rng(12);
    for (int trial = 0; trial < 2000; ++trial) {
        auto v = gen::transaction_values(rng, gen::size_between(rng, 1, 200));
        const double h = decentralization_index(v);
        const auto positive = static_cast<double>(std::count_if(v.begin(), v.end(), [](double x) { return x > 0; }));
        CHECK(h >= 1.0 - 1e-12);
        CHECK(h <= positive + 1e-9);

        auto shuffled = v;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(decentralization_index(shuffled) == h);

        auto scaled = v;
        for (auto& x : scaled) x *= 1024.0 * 3.0;
        CHECK(decentralization_index(scaled) == doctest::Approx(h).epsilon(1e-12));

        CHECK(decentralization_index_product(v) == doctest::Approx(h).epsilon(1e-9));

        // Renyi-2 never exceeds Shannon.
        const WeightDistribution w = weights(v);
        CHECK(1.0 / hhi(w) <= h * (1.0 + 1e-9));
        CHECK(gini(w) >= 0.0);
        CHECK(gini(w) < 1.0);
        CHECK(nakamoto(w) >= 1);
        CHECK(nakamoto(w) <= w.support_size());
    }
}

TEST_CASE("property: joint of independent distributions multiplies") {
    gen::Rng rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = gen::probabilities(rng, gen::size_between(rng, 1, 8));
        const auto q = gen::probabilities(rng, gen::size_between(rng, 1, 8));
        std::vector<double> joint;
        for (double a : p)
            for (double b : q) joint.push_back(a * b);
        CHECK(decentralization_index(joint) ==
              doctest::Approx(decentralization_index(p) * decentralization_index(q)).epsilon(1e-9));
    }
}

TEST_CASE("property: adding a zero-valued transaction changes nothing") {
    gen::Rng rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        auto v = gen::transaction_values(rng, gen::size_between(rng, 1, 50));
        const double h = decentralization_index(v);
        v.push_back(0.0);
        CHECK(decentralization_index(v) == h);
    }
}

namespace {
std::vector<double> as_vector(const WeightDistribution& w) { return {w.weights().begin(), w.weights().end()}; }
}  // namespace

TEST_CASE("worked examples") {
    CHECK(as_vector(weights(std::vector<double>{1.0, 1.0, 2.0})) == std::vector<double>{0.25, 0.25, 0.5});
    CHECK(as_vector(weights(std::vector<double>{5.0})) == std::vector<double>{1.0});
    CHECK(as_vector(weights(std::vector<double>{0.0, 3.0, 1.0})) == std::vector<double>{0.0, 0.75, 0.25});
    for (double c : {1e-9, 1.0, 7.5, 1e21}) {
        CHECK(decentralization_index(std::vector<double>{c}) == 1.0);
        CHECK(decentralization_index(std::vector<double>{c, c, c, c}) == doctest::Approx(4.0).epsilon(1e-15));
    }
    CHECK(shannon_entropy_bits(WeightDistribution({1.0})) == 0.0);
    CHECK(shannon_entropy_bits(WeightDistribution({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(shannon_entropy_bits(WeightDistribution({0.25, 0.25, 0.5})) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(gini(WeightDistribution({1.0})) == 0.0);
    CHECK(hhi(WeightDistribution::uniform(4)) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(hhi(WeightDistribution({1.0})) == 1.0);
}

TEST_CASE("gini matches the pairwise-difference definition") {
    gen::Rng rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = gen::probabilities(rng, gen::size_between(rng, 1, 40));
        long double diff = 0.0L;
        for (double a : p)
            for (double b : p) diff += std::fabs(a - b);
        const long double want = diff / (2.0L * p.size());  // mean is 1/n, so 2 n^2 mean = 2 n
        CHECK(gini(WeightDistribution(p)) == doctest::Approx(static_cast<double>(want)).epsilon(1e-12));
    }
}

TEST_CASE("nakamoto matches exhaustive prefix sums") {
    gen::Rng rng(16);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = gen::probabilities(rng, gen::size_between(rng, 1, 30));
        std::sort(p.begin(), p.end(), std::greater<>());
        std::size_t want = p.size();
        double acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            acc += p[i];
            if (acc >= 0.51) {
                want = i + 1;
                break;
            }
        }
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(nakamoto(WeightDistribution(p)) == want);
    }
}
