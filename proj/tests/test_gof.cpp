#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "rcskit/dists.hpp"
#include "rcskit/errors.hpp"
#include "rcskit/gof.hpp"

using namespace rcskit;

namespace {

// Brute force: evaluate the ECDF by counting at each sample point and just below it.
double ks_oracle(const std::vector<double>& data, const DistParams& fitted) {
    const double n = static_cast<double>(data.size());
    double d = 0.0;
    for (double x : data) {
        std::size_t at_or_below = 0, below = 0;
        for (double y : data) {
            if (y <= x) ++at_or_below;
            if (y < x) ++below;
        }
        const double f = cdf(fitted, x);
        d = std::max({d, std::abs(static_cast<double>(at_or_below) / n - f),
                      std::abs(static_cast<double>(below) / n - f)});
    }
    return d;
}

double mse_oracle(std::vector<double> data, const DistParams& fitted) {
    std::sort(data.begin(), data.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double e = static_cast<double>(i + 1) / static_cast<double>(data.size()) - cdf(fitted, data[i]);
        acc += e * e;
    }
    return acc / static_cast<double>(data.size());
}

}  // namespace

TEST_CASE("empirical CDF is right-continuous") {
    const std::vector<double> v{0.3, 0.1, 0.2, 0.2};
    const EmpiricalCdf ecdf(v);
    CHECK(ecdf(0.0) == 0.0);
    CHECK(ecdf(0.1) == 0.25);
    CHECK(ecdf(0.2) == 0.75);
    CHECK(ecdf(0.25) == 0.75);
    CHECK(ecdf(0.3) == 1.0);
    CHECK(ecdf(9.0) == 1.0);
    CHECK(std::is_sorted(ecdf.sorted_values().begin(), ecdf.sorted_values().end()));
    CHECK_THROWS_AS(EmpiricalCdf(std::vector<double>{}), DegenerateSample);
}

TEST_CASE("KS statistic hand cases") {
    const auto normal = DistParams::normal(0.0, 1.0);
    CHECK(ks_statistic(std::vector<double>{0.0}, normal) == 0.5);
    const auto expo = DistParams::exponential(1.0);
    CHECK(ks_statistic(std::vector<double>{std::log(2.0)}, expo) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, expo), DegenerateSample);
}

TEST_CASE("KS statistic against generator parameters respects the DKW bound") {
    const auto g = DistParams::gamma(0.9, 0.044);
    const auto data = sample(g, 100'000, 3).values;
    // DKW at 99%: sqrt(ln(2/0.01) / (2n)) ~ 0.0051.
    CHECK(ks_statistic(data, g) < 0.01);
}

TEST_CASE("MSE statistic hand cases") {
    const auto normal = DistParams::normal(0.0, 1.0);
    CHECK(mse_statistic(std::vector<double>{0.0}, normal) == 0.25);
    // Points at the 25% and 75% quantiles of N(0, 1).
    const double q = 0.6744897501960817;
    CHECK(mse_statistic(std::vector<double>{q, -q}, normal) == doctest::Approx(0.0625).epsilon(1e-12));
    // Fitted CDF equal to i/N at every sorted point.
    const auto u = DistParams::exponential(1.0);
    const std::vector<double> exact{-std::log(1.0 - 0.25), -std::log(1.0 - 0.5), -std::log(1.0 - 0.75)};
    CHECK(mse_statistic(exact, u) == doctest::Approx(((0.25 - 1.0 / 3) * (0.25 - 1.0 / 3) +
                                                      (0.5 - 2.0 / 3) * (0.5 - 2.0 / 3) + 0.25 * 0.25) /
                                                     3.0));
}

TEST_CASE("KS and MSE match brute-force oracles on random small cases") {
    std::mt19937_64 rng(314159);
    std::uniform_int_distribution<int> size(1, 20);
    std::uniform_int_distribution<int> pick(0, 5);
    const std::vector<DistParams> fitted{DistParams::normal(0.05, 0.04), DistParams::lognormal(-3.5, 1.4),
                                         DistParams::gamma(0.8, 0.06),   DistParams::weibull(0.05, 0.8),
                                         DistParams::rayleigh(0.05),     DistParams::exponential(0.05)};
    for (int trial = 0; trial < 100; ++trial) {
        const auto& f = fitted[static_cast<std::size_t>(pick(rng))];
        auto data = sample(DistParams::gamma(0.9, 0.05), static_cast<std::size_t>(size(rng)), rng()).values;
        if (trial % 7 == 0 && data.size() > 2) data[1] = data[0];  // ties
        const double ks = ks_statistic(data, f);
        CHECK(ks == ks_oracle(data, f));
        CHECK(ks >= 0.0);
        CHECK(ks <= 1.0);
        CHECK(std::abs(mse_statistic(data, f) - mse_oracle(data, f)) <= 1e-15);
    }
}

TEST_CASE("KS is invariant under joint rescaling of data and scale parameter") {
    const auto data = sample(DistParams::exponential(0.04), 500, 8).values;
    for (double k : {0.1, 3.0, 250.0}) {
        std::vector<double> scaled(data);
        for (auto& v : scaled) v *= k;
        CHECK(std::abs(ks_statistic(scaled, DistParams::exponential(0.04 * k)) -
                       ks_statistic(data, DistParams::exponential(0.04))) < 1e-12);
        CHECK(std::abs(ks_statistic(scaled, DistParams::rayleigh(0.05 * k)) -
                       ks_statistic(data, DistParams::rayleigh(0.05))) < 1e-12);
    }
}

TEST_CASE("rank_fits orders by KS and isolates per-family failures") {
    SUBCASE("gamma data") {
        const auto data = sample(DistParams::gamma(0.9, 0.044), 100'000, 4).values;
        const auto ranking =
            rank_fits(data, std::vector<DistributionFamily>(kFittedFamilies.begin(), kFittedFamilies.end()));
        REQUIRE(ranking.ranked.size() == 6);
        CHECK(ranking.excluded.empty());
        auto position = [&](DistributionFamily f) {
            return std::find_if(ranking.ranked.begin(), ranking.ranked.end(),
                                [f](const GofReport& r) { return r.family == f; }) -
                   ranking.ranked.begin();
        };
        CHECK(position(DistributionFamily::Gamma) < position(DistributionFamily::Normal));
        CHECK(position(DistributionFamily::Gamma) < position(DistributionFamily::Rayleigh));
        for (std::size_t i = 1; i < ranking.ranked.size(); ++i) {
            CHECK(ranking.ranked[i - 1].ks_stat <= ranking.ranked[i].ks_stat);
        }
    }
    SUBCASE("single family") {
        const std::vector<DistributionFamily> only{DistributionFamily::Lognormal};
        const auto ranking = rank_fits(std::vector<double>{1.0, 2.0, 3.0}, only);
        REQUIRE(ranking.ranked.size() == 1);
        CHECK(ranking.ranked[0].family == DistributionFamily::Lognormal);
    }
    SUBCASE("zero in the data") {
        const std::vector<double> data{0.0, 0.02, 0.05, 0.04, 0.1};
        const auto ranking =
            rank_fits(data, std::vector<DistributionFamily>(kFittedFamilies.begin(), kFittedFamilies.end()));
        REQUIRE(ranking.ranked.size() == 1);
        CHECK(ranking.ranked[0].family == DistributionFamily::Normal);
        CHECK(ranking.excluded.size() == 5);
    }
    SUBCASE("generalized gamma is reported as excluded") {
        const std::vector<DistributionFamily> fams{DistributionFamily::GeneralizedGamma,
                                                   DistributionFamily::Exponential};
        const auto ranking = rank_fits(std::vector<double>{0.1, 0.2, 0.4}, fams);
        CHECK(ranking.ranked.size() == 1);
        REQUIRE(ranking.excluded.size() == 1);
        CHECK(ranking.excluded[0].family == DistributionFamily::GeneralizedGamma);
    }
    CHECK_THROWS_AS(rank_fits(std::vector<double>{1.0}, kFittedFamilies), InsufficientData);
    CHECK_THROWS_AS(rank_fits(std::vector<double>{1.0, 2.0}, std::span<const DistributionFamily>{}),
                    InsufficientData);
}

TEST_CASE("rank_fits ties fall back to MSE then family order") {
    // Exponential(mean) and Gamma with shape 1 describe the same law; identical KS/MSE must keep enum order.
    const std::vector<double> data{0.5, 1.5, 2.5, 3.5};
    const std::vector<DistributionFamily> fams{DistributionFamily::Exponential, DistributionFamily::Exponential};
    const auto ranking = rank_fits(data, fams);
    REQUIRE(ranking.ranked.size() == 2);
    CHECK(ranking.ranked[0].ks_stat == ranking.ranked[1].ks_stat);
    const auto again = rank_fits(data, fams);
    CHECK(again.ranked[0].params == ranking.ranked[0].params);
}
