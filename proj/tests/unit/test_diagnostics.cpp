#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hypstab/diagnostics.hpp"
#include "hypstab/errors.hpp"
#include "hypstab/suite/coordinate_oracle.hpp"

using namespace hypstab;

namespace {

DecaySeries synthetic(double amplitude, double rate, int count = 20, double dt = 0.25) {
    DecaySeries series;
    for (int k = 0; k < count; ++k) {
        DecayRecord r;
        r.t = k * dt;
        r.l2 = amplitude * std::exp(-rate * r.t);
        r.sup_norm = r.l2;
        series.append(r);
    }
    return series;
}

double smooth_l2(int m) {
    const RadialGrid grid(3.0, m);
    return l2_lyapunov(anisotropic_bump(grid, 0.1, -0.05), BackgroundGeometry(Background::Hyperbolic, 4));
}

}  // namespace

TEST_CASE("rates") {
    CHECK(alpha_rate(4) == 0.25);
    CHECK(alpha_rate(5) == doctest::Approx(3.75));
    CHECK(alpha_rate(6) == 8.25);
    CHECK(beta_rate(4) == doctest::Approx(0.25 / 6));
    CHECK(alpha_rate(3) < 0.0);
}

TEST_CASE("Lyapunov integrals") {
    const BackgroundGeometry flat2(Background::Euclidean, 2);
    SUBCASE("background") {
        const auto h = RadialMetricState::background(RadialGrid(2.0, 40));
        const BackgroundGeometry geom(Background::Hyperbolic, 4);
        CHECK(l2_lyapunov(h, geom) == 0.0);
        CHECK(sup_norm(h, geom) == 0.0);
        CHECK(max_gradient(h, geom) == 0.0);
        CHECK(kato_residual(h, geom) == 0.0);
    }
    SUBCASE("unit offset on the flat disk") {
        const RadialGrid grid(1.0, 16);
        const RadialMetricState twice(grid, std::vector<double>(17, 2.0), std::vector<double>(17, 2.0));
        CHECK(l2_lyapunov(twice, flat2) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-14));
        CHECK(sup_norm(twice, flat2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    }
    SUBCASE("quadrature converges at second order") {
        const double reference = smooth_l2(6400);
        const double e1 = std::abs(smooth_l2(100) - reference);
        const double e2 = std::abs(smooth_l2(200) - reference);
        CHECK(std::log2(e1 / e2) >= 1.9);
    }
    SUBCASE("truncated and p variants") {
        const RadialGrid grid(3.0, 120);
        const BackgroundGeometry geom(Background::Hyperbolic, 4);
        const auto state = anisotropic_bump(grid, 0.1, -0.05);
        const double full = l2_lyapunov(state, geom);
        CHECK(truncated_lyapunov(state, geom, 0.0) == doctest::Approx(full).epsilon(1e-14));
        CHECK(p_lyapunov(state, geom, 2.0, 0.0) == doctest::Approx(full).epsilon(1e-14));
        const double sup = sup_norm(state, geom);
        CHECK(truncated_lyapunov(state, geom, sup * sup * 1.01) == 0.0);
        double prev = full;
        for (double delta : {1e-6, 1e-4, 1e-3, 5e-3}) {
            const double v = truncated_lyapunov(state, geom, delta);
            CHECK(v <= prev);
            CHECK(p_lyapunov(state, geom, 3.0, delta) <= p_lyapunov(state, geom, 3.0, 0.0));
            prev = v;
        }
        CHECK_THROWS_AS(p_lyapunov(state, geom, 1.5, 0.0), DomainError);
        CHECK_THROWS_AS(truncated_lyapunov(state, geom, -1.0), DomainError);
    }
}

TEST_CASE("Kato residual on random profiles") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const auto pair = suite::random_profile_pair(rng, 0.2);
        const BackgroundGeometry geom(Background::Hyperbolic, 3 + i % 3);
        const auto state = suite::sample_profile(pair, RadialGrid(3.0, 120));
        CHECK(kato_residual(state, geom) <= 1e-10);
    }
}

TEST_CASE("series") {
    DecaySeries series;
    series.append({0.0});
    CHECK_THROWS_AS(series.append({0.0}), ConfigError);
    SeriesOptions options;
    options.p = 1.0;
    CHECK_THROWS_AS(options.validate(), ConfigError);

    DecayRecord r{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
    CHECK(field_value(r, SeriesField::L2) == 2.0);
    CHECK(field_value(r, SeriesField::Truncated) == 3.0);
    CHECK(field_value(r, SeriesField::PTruncated) == 4.0);
    CHECK(field_value(r, SeriesField::SupNorm) == 5.0);
    CHECK(field_value(r, SeriesField::MaxGrad) == 6.0);
    CHECK(field_value(r, SeriesField::Closeness) == 7.0);
}

TEST_CASE("decay fits") {
    SUBCASE("exact exponential") {
        const auto fit = fit_decay_rate(synthetic(3.0, 0.25), SeriesField::L2);
        CHECK(fit.rate == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(fit.log_amplitude == doctest::Approx(std::log(3.0)).epsilon(1e-12));
        CHECK(fit.rms_residual <= 1e-12);
        CHECK(fit.window.hi == doctest::Approx(19 * 0.25));
    }
    SUBCASE("constant series") {
        CHECK(std::abs(fit_decay_rate(synthetic(2.0, 0.0), SeriesField::L2).rate) <= 1e-14);
    }
    SUBCASE("explicit window") {
        const auto fit = fit_decay_rate(synthetic(1.0, 2.0), SeriesField::L2, FitWindow{0.0, 2.0});
        CHECK(fit.samples == 9);
        CHECK(fit.rate == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("failures") {
        auto series = synthetic(1.0, 1.0);
        series.records[15].l2 = 0.0;
        CHECK_THROWS_AS(fit_decay_rate(series, SeriesField::L2), FitError);
        CHECK_THROWS_AS(fit_decay_rate(synthetic(1.0, 1.0, 6), SeriesField::L2), FitError);
        CHECK_THROWS_AS(fit_decay_rate(DecaySeries{}, SeriesField::L2), FitError);
        CHECK_THROWS_AS(fit_decay_rate(synthetic(1.0, 1.0), SeriesField::L2, FitWindow{10.0, 20.0}),
                        FitError);
    }
    SUBCASE("floor-limited window stops before the noise floor") {
        const auto series = synthetic(1.0, 4.0, 40);  // reaches 1e-9 near t = 5.2
        const auto window = floor_limited_window(series, SeriesField::L2, 1e-9);
        CHECK(window.hi == 5.0);
        CHECK(window.lo == 2.5);
        const auto kept = truncate_at_floor(series, SeriesField::L2, 1e-9);
        CHECK(kept.size() == 21);
        CHECK(truncate_at_floor(series, SeriesField::L2, 2.0).size() == 1);
        const auto full = floor_limited_window(synthetic(1.0, 0.1, 40), SeriesField::L2, 1e-9);
        CHECK(full.lo == doctest::Approx(39 * 0.25 / 2));
        CHECK(full.hi == doctest::Approx(39 * 0.25));
    }
}

TEST_CASE("monotonicity check") {
    const double alpha = 0.25;
    const auto exact = monotonicity_check(synthetic(1.0, alpha), SeriesField::L2, alpha, 0.0);
    CHECK(exact.pass);
    CHECK(exact.worst_ratio == doctest::Approx(1.0).epsilon(1e-12));
    const auto slow = monotonicity_check(synthetic(1.0, alpha / 2), SeriesField::L2, alpha, 0.0);
    CHECK_FALSE(slow.pass);
    CHECK(slow.worst_ratio > 1.0);
    auto bump = synthetic(1.0, alpha);
    bump.records[7].l2 *= 1.2;
    const auto spike = monotonicity_check(bump, SeriesField::L2, alpha, 0.05);
    CHECK_FALSE(spike.pass);
    CHECK(spike.worst_index == 6);
}

TEST_CASE("interpolation inequality") {
    std::vector<double> u, du, d2u;
    for (int i = 0; i <= 400; ++i) {
        const double x = -6.0 + 12.0 * i / 400;
        u.push_back(std::sin(x));
        du.push_back(std::cos(x));
        d2u.push_back(-std::sin(x));
    }
    CHECK(interpolation_check(u, du, d2u) == 0.0);
    const std::vector<double> c(10, 4.0), zero(10, 0.0);
    CHECK(interpolation_check(c, zero, zero) == 0.0);
    // Inconsistent samples expose the formula itself.
    const std::vector<double> small(10, 0.01), one(10, 1.0);
    CHECK(interpolation_check(small, one, small) == doctest::Approx(1.0 - 32e-4));
}

TEST_CASE("constant-mode run decays at twice the metric rate") {
    FlowParams params;
    params.geom = BackgroundGeometry(Background::Hyperbolic, 4);
    params.boundary = BoundaryMode::NoBoundaryConstantMode;
    params.fixed_dt = 1e-3;
    params.t_end = 1.0;
    params.record_every = 25;
    const auto run = run_recorded(constant_metric(RadialGrid(2.0, 16), 1.02), params);
    REQUIRE(run.completed());
    CHECK(fit_decay_rate(run.series, SeriesField::L2).rate == doctest::Approx(12.0).epsilon(1e-4));
    CHECK(fit_decay_rate(run.series, SeriesField::SupNorm).rate ==
          doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("gradient monitor") {
    auto monitor = [](int m, int record_every) {
        FlowParams params;
        params.geom = BackgroundGeometry(Background::Hyperbolic, 4);
        params.t_end = 1.0;
        params.record_every = record_every;
        const auto run = run_recorded(tent_profile(RadialGrid(4.0, m), 0.05, 1.5, 0.5), params);
        REQUIRE(run.completed());
        return gradient_blowup_monitor(run.series);
    };
    SUBCASE("stable under refinement for kinked data") {
        const double coarse = monitor(100, 5);
        const double fine = monitor(200, 20);
        CHECK(std::isfinite(fine));
        CHECK(fine > 0.0);
        CHECK(fine / coarse <= 2.0);
        CHECK(coarse / fine <= 2.0);
    }
    SUBCASE("background run") {
        FlowParams params;
        params.geom = BackgroundGeometry(Background::Hyperbolic, 4);
        params.t_end = 0.2;
        params.record_every = 10;
        const auto run = run_recorded(RadialMetricState::background(RadialGrid(3.0, 40)), params);
        CHECK(gradient_blowup_monitor(run.series) == 0.0);
    }
}

TEST_CASE("higher dimensions decay faster than beta") {
    for (int n : {5, 6}) {
        CAPTURE(n);
        FlowParams params;
        params.geom = BackgroundGeometry(Background::Hyperbolic, n);
        params.t_end = 2.0;
        params.record_every = 50;
        const auto run = run_recorded(damped_bump(RadialGrid(4.0, 120), 0.01), params);
        REQUIRE(run.completed());
        const auto window = floor_limited_window(run.series, SeriesField::SupNorm, kDecayNoiseFloor);
        CHECK(fit_decay_rate(run.series, SeriesField::SupNorm, window).rate >= beta_rate(n));
        // The frozen round-off state would fail any strict decay test.
        const auto signal = truncate_at_floor(run.series, SeriesField::SupNorm, kDecayNoiseFloor);
        CHECK(signal.records.back().t < 2.0);
        CHECK(monotonicity_check(signal, SeriesField::L2, alpha_rate(n), 0.05).pass);
    }
}
