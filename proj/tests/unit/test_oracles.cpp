#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "hypstab/errors.hpp"
#include "hypstab/suite/coordinate_oracle.hpp"
#include "hypstab/suite/flow_defect.hpp"
#include "hypstab/suite/hyperdual.hpp"
#include "hypstab/suite/properties.hpp"
#include "hypstab/suite/shooting.hpp"

using namespace hypstab;
using suite::HyperDual;

namespace {

HyperDual seed(double x) { return {x, 1.0, 1.0, 0.0}; }

suite::ProfilePair constant_pair(double lambda) {
    suite::ProfilePair p;
    p.a.c0 = lambda - 1.0;
    p.b.c0 = lambda - 1.0;
    return p;
}

}  // namespace

TEST_CASE("hyper-dual arithmetic gives exact first and second derivatives") {
    const double x = 0.7;
    const auto cube = seed(x) * seed(x) * seed(x);
    CHECK(cube.v == doctest::Approx(x * x * x).epsilon(1e-15));
    CHECK(cube.e1 == doctest::Approx(3 * x * x).epsilon(1e-15));
    CHECK(cube.e2 == cube.e1);
    CHECK(cube.e12 == doctest::Approx(6 * x).epsilon(1e-15));

    const auto inv = HyperDual(1.0) / seed(x);
    CHECK(inv.e1 == doctest::Approx(-1 / (x * x)).epsilon(1e-15));
    CHECK(inv.e12 == doctest::Approx(2 / (x * x * x)).epsilon(1e-15));

    // f = e^x sin x, f'' = 2 e^x cos x
    const auto f = exp(seed(x)) * sin(seed(x));
    CHECK(f.e1 == doctest::Approx(std::exp(x) * (std::sin(x) + std::cos(x))).epsilon(1e-15));
    CHECK(f.e12 == doctest::Approx(2 * std::exp(x) * std::cos(x)).epsilon(1e-15));

    // cosh^2 - sinh^2 = 1 to all orders
    const auto one = cosh(seed(x)) * cosh(seed(x)) - sinh(seed(x)) * sinh(seed(x));
    CHECK(one.v == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(one.e1) <= 1e-14);
    CHECK(std::abs(one.e12) <= 1e-14);
    const auto c = cos(seed(x)) - HyperDual(0.0);
    CHECK(c.e12 == doctest::Approx(-std::cos(x)).epsilon(1e-15));
    CHECK((-seed(x)).e1 == -1.0);
}

TEST_CASE("coordinate oracle on simple metrics") {
    for (int n : {2, 3, 4}) {
        CAPTURE(n);
        for (auto kind : {Background::Hyperbolic, Background::Euclidean}) {
            const BackgroundGeometry geom(kind, n);
            const double curvature = kind == Background::Hyperbolic ? -1.0 : 0.0;
            SUBCASE("background") {
                for (double rho : {0.3, 1.0, 2.5}) {
                    const auto o = suite::coordinate_oracle(geom, constant_pair(1.0), rho);
                    CHECK(std::abs(o.d_a) + std::abs(o.d_b) + std::abs(o.mixed) <= 1e-13);
                    CHECK(std::abs(o.rate_a) <= 1e-12);
                    CHECK(std::abs(o.rate_b) <= 1e-12);
                    CHECK(std::abs(o.deturck) <= 1e-13);
                    CHECK(o.ricci_radial == doctest::Approx(curvature * (n - 1)).epsilon(1e-12));
                    CHECK(o.ricci_angular == doctest::Approx(curvature * (n - 1)).epsilon(1e-12));
                }
            }
            SUBCASE("constant multiples keep the Ricci tensor") {
                const double lambda = 1.3;
                const auto o = suite::coordinate_oracle(geom, constant_pair(lambda), 1.2);
                CHECK(o.ricci_radial == doctest::Approx(curvature * (n - 1)).epsilon(1e-12));
                const double expected = kind == Background::Hyperbolic
                                            ? 2.0 * (n - 1) * (1.0 - lambda)
                                            : 0.0;
                CHECK(o.rate_a == doctest::Approx(expected).epsilon(1e-12));
                CHECK(o.rate_b == doctest::Approx(expected).epsilon(1e-12));
                CHECK(std::abs(o.deturck) <= 1e-13);
            }
        }
    }
    CHECK_THROWS_AS(suite::coordinate_oracle(BackgroundGeometry(Background::Hyperbolic, 5),
                                             constant_pair(1.0), 1.0),
                    ConfigError);
    CHECK_THROWS_AS(suite::coordinate_oracle(BackgroundGeometry(Background::Hyperbolic, 3),
                                             constant_pair(1.0), 0.0),
                    DomainError);
}

TEST_CASE("random profile pairs are regular at the origin") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const auto p = suite::random_profile_pair(rng, 0.1);
        CHECK(p.a(0.0) == p.b(0.0));
        CHECK(p.a.width > 0.0);
        const auto d = p.a(seed(0.0));
        CHECK(d.e1 == 0.0);
    }
}

TEST_CASE("warped-product Ricci agrees with the coordinate oracle") {
    std::mt19937_64 rng(29);
    for (int n : {3, 4}) {
        for (auto kind : {Background::Hyperbolic, Background::Euclidean}) {
            const BackgroundGeometry geom(kind, n);
            const auto pair = suite::random_profile_pair(rng, 0.2);
            double prev = 0.0;
            for (int m : {200, 400}) {
                const RadialGrid grid(3.0, m);
                const auto ric = suite::warped_ricci(suite::sample_profile(pair, grid), geom);
                CHECK(ric.radial[0] == 0.0);
                CHECK(ric.angular[m] == 0.0);
                // Away from the axis: the angular term divides by psi^2 ~ rho^2.
                double err = 0.0;
                for (int j = 1; j < m; ++j) {
                    if (grid.node(j) < 0.25 || grid.node(j) > 2.75) continue;
                    const auto o = suite::coordinate_oracle(geom, pair, grid.node(j));
                    err = std::max({err, std::abs(ric.radial[j] - o.ricci_radial),
                                    std::abs(ric.angular[j] - o.ricci_angular)});
                }
                if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.9);
                prev = err;
            }
        }
    }
}

TEST_CASE("scaled flow defect of an exact constant solution") {
    const BackgroundGeometry geom(Background::Hyperbolic, 4);
    auto frames_on = [](int m) {
        const RadialGrid grid(3.0, m);
        std::vector<RadialMetricState> frames;
        for (int k = 0; k <= 10; ++k) {
            const double t = 1e-3 * k;
            auto state = constant_metric(grid, 1.0 + 0.1 * std::exp(-6.0 * t));
            state.t = t;
            frames.push_back(state);
        }
        return frames;
    };
    const double coarse = suite::scaled_flow_defect(frames_on(200), geom, 0.5, 2.5);
    const auto frames = frames_on(400);
    const double fine = suite::scaled_flow_defect(frames, geom, 0.5, 2.5);
    CHECK(fine <= 1e-3);
    CHECK(std::log2(coarse / fine) >= 1.9);
    auto wrong = frames;
    for (auto& f : wrong) {
        for (auto& v : f.a) v += f.t;
    }
    CHECK(suite::scaled_flow_defect(wrong, geom, 0.5, 2.5) >= 0.9);
}

TEST_CASE("shooting oracle") {
    SUBCASE("closed forms") {
        const double j0 = boost::math::cyl_bessel_j_zero(0.0, 1);
        CHECK(suite::shooting_first_eigenvalue(BackgroundGeometry(Background::Euclidean, 2), 1.0) ==
              doctest::Approx(j0 * j0).epsilon(1e-9));
        for (double R : {1.0, 5.0}) {
            const double exact = 1 + std::pow(std::numbers::pi / R, 2);
            CHECK(suite::shooting_first_eigenvalue(BackgroundGeometry(Background::Hyperbolic, 3),
                                                   R) == doctest::Approx(exact).epsilon(1e-9));
        }
    }
    SUBCASE("zero counts bracket the eigenvalue") {
        const BackgroundGeometry geom(Background::Hyperbolic, 3);
        const double exact = 1 + std::pow(std::numbers::pi / 5.0, 2);
        CHECK(suite::count_nodal_zeros(geom, 5.0, exact * 0.99) == 0);
        CHECK(suite::count_nodal_zeros(geom, 5.0, exact * 1.01) == 1);
        // sigma_2 = 1 + (2 pi / R)^2
        CHECK(suite::count_nodal_zeros(geom, 5.0, 1 + std::pow(2.1 * std::numbers::pi / 5.0, 2)) ==
              2);
    }
}

TEST_CASE("property suite") {
    for (const auto& outcome : suite::run_all_properties(7)) {
        CAPTURE(outcome.key);
        CAPTURE(outcome.detail);
        CHECK(outcome.pass);
        CHECK(outcome.cases > 0);
    }
}
