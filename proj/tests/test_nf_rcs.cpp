#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "reference_rows.hpp"
#include "rcskit/errors.hpp"
#include "rcskit/geometry.hpp"
#include "rcskit/montecarlo.hpp"
#include "rcskit/nf_rcs.hpp"

using namespace rcskit;
using rcskit::testing::kGeomA;
using rcskit::testing::kReferenceRows;
using rcskit::testing::offset_grid;

namespace {

constexpr double kLambda25 = kSpeedOfLight / 25e9;

double deg2rad(double deg) { return deg * 3.14159265358979323846 / 180.0; }

}  // namespace

TEST_CASE("order names") {
    CHECK(order_name(RcsOrder::Sigma2) == "sigma2");
    CHECK(order_from_name("sigma3") == RcsOrder::Sigma3);
    CHECK_FALSE(order_from_name("sigma4").has_value());
}

TEST_CASE("sigma model evaluation") {
    const NfRcsModel s1{RcsOrder::Sigma1, 2.0, 99.0, 99.0, 0.0};
    CHECK(sigma_model_eval(s1, 3.0, 0.01, 0.0) == doctest::Approx(18.0));
    const NfRcsModel s2{RcsOrder::Sigma2, 1.0, 2.0, 99.0, 0.0};
    CHECK(sigma_model_eval(s2, 2.0, 0.5, 0.0) == doctest::Approx(4.0 + 2.0 * 0.5 * 8.0));
    const NfRcsModel angular{RcsOrder::Sigma1, 1.0, 0.0, 0.0, 2.0};
    CHECK(sigma_model_eval(angular, 1.0, 0.01, 60.0) == doctest::Approx(0.25));

    // Direct expression with the 25 GHz third-order row.
    const auto& row = kReferenceRows[2].generator.model;
    const double d = 4.0, th = 20.0;
    const double expected = (row.a1 * d * d + row.a2 * kLambda25 * d * d * d + row.a3 * kLambda25 * kLambda25 * d * d * d * d) *
                            std::pow(std::cos(deg2rad(th)), row.m);
    CHECK(sigma_model_eval(row, d, kLambda25, th) == doctest::Approx(expected).epsilon(1e-13));

    CHECK_THROWS_AS(sigma_model_eval(s1, 1.0, 0.01, 90.0), DomainError);
    const NfRcsModel negative{RcsOrder::Sigma2, 1.0, -100.0, 0.0, 0.0};
    CHECK_THROWS_AS(sigma_model_eval(negative, 5.0, 0.01, 0.0), NonPositiveRcs);
}

TEST_CASE("predicted path loss") {
    const NfRcsModel unit{RcsOrder::Sigma1, 1.0, 0.0, 0.0, 0.0};
    // sigma = d^2 and n = 1 cancel: PL is flat at alpha.
    for (double d : {2.0, 5.0, 10.0}) CHECK(predict_pl(40.0, 1.0, unit, d, 0.01, 0.0) == doctest::Approx(40.0));
    NfRcsModel doubled = unit;
    doubled.a1 = 2.0;
    CHECK(predict_pl(40.0, 1.0, doubled, 3.0, 0.01, 0.0) - predict_pl(40.0, 1.0, unit, 3.0, 0.01, 0.0) ==
          doctest::Approx(-3.0102999566398));

    // predict_pl_at agrees with explicit geometry.
    const auto& r = kReferenceRows[0].generator;
    const BistaticGeometry g(kGeomA, 6.0);
    CHECK(predict_pl_at(r.alpha, r.n, r.model, kGeomA, 6.0, 25e9) ==
          doctest::Approx(predict_pl(r.alpha, r.n, r.model, bistatic_distance(g), kLambda25, bistatic_angle_deg(g))));
}

TEST_CASE("MFE and shadowing statistics") {
    const std::vector<double> meas{100.0, 50.0};
    const std::vector<double> model{90.0, 55.0};
    CHECK(mfe_percent(meas, model) == doctest::Approx(10.0));
    CHECK(mfe_percent(meas, meas) == 0.0);
    CHECK_THROWS_AS(mfe_percent(meas, std::vector<double>{1.0}), LengthMismatch);
    CHECK_THROWS_AS(mfe_percent(std::vector<double>{}, std::vector<double>{}), InsufficientData);
    CHECK_THROWS_AS(mfe_percent(std::vector<double>{0.0}, std::vector<double>{1.0}), DomainError);

    CHECK(shadowing_std(std::vector<double>{1.0, -1.0, 1.0, -1.0}) == doctest::Approx(1.0));
    CHECK(shadowing_std(std::vector<double>{3.0, 3.0, 3.0}) == 0.0);
    CHECK(shadowing_std(std::vector<double>{0.0, 1.0, 2.0}) == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(mfe_percent(std::vector<double>{100.0, 50.0}, std::vector<double>{99.0, 51.0}) == doctest::Approx(1.5));
    CHECK_THROWS_AS(shadowing_std(std::vector<double>{1.0}), InsufficientData);

    // Oracle with the textbook two-pass form.
    const std::vector<double> r{0.3, -1.2, 2.5, 0.1, -0.7, 1.9};
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / r.size();
    double ss = 0.0;
    for (double v : r) ss += (v - mean) * (v - mean);
    CHECK(shadowing_std(r) == doctest::Approx(std::sqrt(ss / r.size())).epsilon(1e-14));

    std::mt19937_64 rng(6);
    std::normal_distribution<double> g(60.0, 8.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(1 + trial), b(1 + trial);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = g(rng);
            b[i] = g(rng);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs((a[i] - b[i]) / a[i]);
        CHECK(std::abs(mfe_percent(a, b) - 100.0 * acc / a.size()) < 1e-12);
    }
}

TEST_CASE("third-order curve flattens with distance") {
    const auto& r = kReferenceRows[2].generator;
    auto pl = [&](double y) { return predict_pl_at(r.alpha, r.n, r.model, kGeomA, y, 25e9); };
    CHECK(pl(10) - pl(9) < pl(3) - pl(2));
    const NfRcsModel unit{RcsOrder::Sigma1, 1.0, 0.0, 0.0, 3.0};
    CHECK(predict_pl(12.5, 2.0, unit, 1.0, 0.01, 0.0) == doctest::Approx(12.5));
}

TEST_CASE("noiseless fits recover every reference row") {
    const auto grid = offset_grid();
    for (const auto& row : kReferenceRows) {
        CAPTURE(row.frequency_ghz);
        CAPTURE(static_cast<int>(row.order));
        const double f = row.frequency_ghz * 1e9;
        const auto obs = synth_pl_dataset(row.generator, kGeomA, grid, f, 0.0, 0);
        const auto fit = fit_pl(obs, kGeomA, row.order);
        CHECK(fit.converged);
        CHECK(fit.scale_degenerate);
        CHECK(fit.model.a1 == 1.0);
        CHECK(fit.mfe_percent < 0.1);
        double worst = 0.0;
        for (double y = 2.0; y <= 10.0; y += 0.1) {
            worst = std::max(worst, std::abs(predict_pl_at(fit.alpha, fit.n, fit.model, kGeomA, y, f) -
                                             predict_pl_at(row.generator.alpha, row.generator.n, row.generator.model,
                                                           kGeomA, y, f)));
        }
        CHECK(worst < 0.05);
        if (row.order == RcsOrder::Sigma1) {
            CHECK(std::abs((fit.alpha - 10 * std::log10(fit.model.a1)) -
                           (row.generator.alpha - 10 * std::log10(row.generator.model.a1))) < 1e-6);
            CHECK(std::abs((fit.n - 1) - (row.generator.n - 1)) < 1e-6);
            CHECK(std::abs(fit.model.m - row.generator.model.m) < 1e-6);
        }
    }
}

TEST_CASE("shadowed fits stay near the injected spread") {
    const auto grid = offset_grid();
    const auto& row = kReferenceRows[0];
    std::vector<double> xs;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto obs = synth_pl_dataset(row.generator, kGeomA, grid, 25e9, row.x_sigma, seed);
        const auto fit = fit_pl(obs, kGeomA, RcsOrder::Sigma1);
        xs.push_back(fit.x_sigma);
        CHECK(fit.x_sigma == doctest::Approx(shadowing_std(fit.residuals_db)));
        CHECK(fit.residuals_db.size() == grid.size());
    }
    std::sort(xs.begin(), xs.end());
    const double median = 0.5 * (xs[9] + xs[10]);
    CHECK(median > 0.65 * row.x_sigma);
    CHECK(median < 1.35 * row.x_sigma);
}

TEST_CASE("higher orders never fit worse in squared error") {
    const auto grid = offset_grid();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto obs = synth_pl_dataset(kReferenceRows[6].generator, kGeomA, grid, 27e9, 2.09, seed);
        const auto f1 = fit_pl(obs, kGeomA, RcsOrder::Sigma1);
        const auto f2 = fit_pl(obs, kGeomA, RcsOrder::Sigma2);
        const auto f3 = fit_pl(obs, kGeomA, RcsOrder::Sigma3);
        CHECK(f2.sse <= f1.sse + 1e-9);
        CHECK(f3.sse <= f2.sse + 1e-9);
    }
}

TEST_CASE("fit_pl input validation") {
    const auto& gen = kReferenceRows[0].generator;
    SUBCASE("degenerate geometry") {
        std::vector<PlObservation> obs(10, PlObservation{5.0, 25e9, 70.0});
        CHECK_THROWS_AS(fit_pl(obs, kGeomA, RcsOrder::Sigma1), DegenerateGeometry);
    }
    SUBCASE("too few points") {
        const std::vector<double> y{2, 3, 4, 5, 6, 7, 8};
        const auto obs = synth_pl_dataset(gen, kGeomA, y, 25e9, 0.0, 0);
        CHECK_THROWS_AS(fit_pl(obs, kGeomA, RcsOrder::Sigma1), InsufficientData);
    }
    SUBCASE("narrow distance span") {
        const std::vector<double> y{4, 4.2, 4.4, 4.6, 4.8, 5.0, 5.2, 5.4, 5.6};
        const auto obs = synth_pl_dataset(gen, kGeomA, y, 25e9, 0.0, 0);
        CHECK_THROWS_AS(fit_pl(obs, kGeomA, RcsOrder::Sigma1), InsufficientData);
    }
    SUBCASE("mixed frequency") {
        auto obs = synth_pl_dataset(gen, kGeomA, offset_grid(), 25e9, 0.0, 0);
        obs[3].frequency_hz = 26e9;
        CHECK_THROWS_AS(fit_pl(obs, kGeomA, RcsOrder::Sigma1), DomainError);
    }
    SUBCASE("offset outside the span") {
        const std::vector<double> y{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        const auto obs = synth_pl_dataset(gen, kGeomA, y, 25e9, 0.0, 0);
        CHECK_THROWS_AS(fit_pl(obs, kGeomA, RcsOrder::Sigma1), DomainError);
    }
    CHECK_THROWS_AS(fit_pl(std::vector<PlObservation>{}, kGeomA, RcsOrder::Sigma1), InsufficientData);
}
