#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

#include "edm/embedding.hpp"
#include "edm/types.hpp"

using namespace edm;

TEST_CASE("valid_count")
{
    CHECK(valid_count(100, {1, 1}) == 100);
    CHECK(valid_count(100, {3, 2}) == 96);
    CHECK_THROWS_AS(valid_count(5, {3, 2}), SeriesTooShort);
    // Exactly E + 2 points is the smallest accepted length.
    CHECK(valid_count(9, {3, 2}) == 5);
    CHECK_THROWS_AS(valid_count(8, {3, 2}), SeriesTooShort);
    CHECK_THROWS_AS(valid_count(10, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(valid_count(10, {2, 0}), std::invalid_argument);
}

TEST_CASE("valid_count plus the embedding span equals the length")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; trial++) {
        const int E = 1 + static_cast<int>(rng() % 20);
        const int tau = 1 + static_cast<int>(rng() % 5);
        const std::size_t L = 1 + rng() % 400;
        const EmbeddingSpec spec{E, tau};
        if (L >= spec.shift() + E + 2) {
            CHECK(valid_count(L, spec) + spec.shift() == L);
        } else {
            CHECK_THROWS_AS(valid_count(L, spec), SeriesTooShort);
        }
    }
}

TEST_CASE("embedded_point reads forward")
{
    const TimeSeries x({0, 1, 3});
    CHECK(embedded_point(x, {2, 1}, 0) == std::vector<double>{0, 1});
    CHECK(embedded_point(x, {2, 1}, 1) == std::vector<double>{1, 3});
    CHECK_THROWS_AS(embedded_point(x, {2, 1}, 2), std::out_of_range);

    const TimeSeries y({0, 1, 2, 3, 4});
    CHECK(embedded_point(y, {3, 2}, 0) == std::vector<double>{0, 2, 4});
    CHECK_THROWS_AS(embedded_point(y, {3, 2}, 1), std::out_of_range);
}

TEST_CASE("embedded_point is the reversed backward delay vector")
{
    std::mt19937_64 rng(3);
    std::vector<double> v(60);
    for (auto &e : v) e = static_cast<double>(rng() % 1000) / 7.0;
    const TimeSeries x(v);

    const EmbeddingSpec spec{4, 3};
    for (std::size_t i = 0; i + spec.shift() < x.size(); i++) {
        const auto p = embedded_point(x, spec, i);
        // Backward vector at t = i + (E-1)tau: (x[t], x[t-tau], ...).
        const std::size_t t = i + spec.shift();
        for (int k = 0; k < spec.E; k++) {
            CHECK(p[spec.E - 1 - k] == x[t - static_cast<std::size_t>(k) * spec.tau]);
        }
    }
}

TEST_CASE("TimeSeries rejects non-finite and empty input")
{
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(TimeSeries({1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(TimeSeries({std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
}

TEST_CASE("Dataset invariants")
{
    CHECK_THROWS_AS(Dataset(std::vector<TimeSeries>{}), std::invalid_argument);
    CHECK_THROWS_AS(Dataset({TimeSeries({1, 2}, "a"), TimeSeries({1}, "b")}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Dataset({TimeSeries({1, 2}, "a"), TimeSeries({1, 2}, "a")}),
                    std::invalid_argument);

    const Dataset d({TimeSeries({1, 2}, "a"), TimeSeries({3, 4}, "b")});
    CHECK(d.size() == 2);
    CHECK(d.length() == 2);
    CHECK(d.names() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("EmbeddingSpec::validate")
{
    const EmbeddingSpec ok{20, 1}, big{21, 1}, zero_E{0, 1}, zero_tau{2, 0};
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS_AS(big.validate(), std::invalid_argument);
    CHECK_NOTHROW(big.validate(30));
    CHECK_THROWS_AS(zero_E.validate(), std::invalid_argument);
    CHECK_THROWS_AS(zero_tau.validate(), std::invalid_argument);
}
