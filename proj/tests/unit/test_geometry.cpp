#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypstab/errors.hpp"
#include "hypstab/geometry.hpp"
#include "hypstab/interpolation.hpp"

using namespace hypstab;

namespace {
const BackgroundGeometry kHyp(Background::Hyperbolic, 3);
const BackgroundGeometry kEuc(Background::Euclidean, 3);
}  // namespace

TEST_CASE("warp values") {
    CHECK(warp(kHyp, 0.0) == 0.0);
    CHECK(warp(BackgroundGeometry(Background::Euclidean, 2), 2.0) == 2.0);
    // mpmath sinh(1)
    CHECK(warp(kHyp, 1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-15));
    CHECK(warp_derivative(kHyp, 0.0) == 1.0);
    CHECK(warp_derivative(kEuc, 0.0) == 1.0);
    CHECK_THROWS_AS(warp(kHyp, -0.1), DomainError);
}

TEST_CASE("warp log derivative") {
    // mpmath coth(1)
    CHECK(warp_log_derivative(kHyp, 1.0) == doctest::Approx(1.3130352854993313).epsilon(1e-15));
    CHECK(warp_log_derivative(kEuc, 0.5) == 2.0);
    CHECK_THROWS_AS(warp_log_derivative(kHyp, 0.0), DomainError);
    CHECK_THROWS_AS(warp_log_derivative(kEuc, -1.0), DomainError);

    SUBCASE("Laurent remainder vanishes at the origin") {
        for (double rho : {1e-2, 1e-4, 1e-6, 1e-8}) {
            CHECK(std::abs(warp_log_derivative(kHyp, rho) - 1.0 / rho) <= rho);
        }
    }
    SUBCASE("series and direct branch agree at the switchover") {
        const double r = kLogDerivativeSeriesThreshold;
        const double below = warp_log_derivative(kHyp, std::nextafter(r, 0.0));
        const double direct = std::cosh(r) / std::sinh(r);
        CHECK(std::abs(below - direct) / direct <= 1e-12);
        // mpmath coth(1e-3)
        CHECK(warp_log_derivative(kHyp, 1e-3) ==
              doctest::Approx(1000.0003333333111).epsilon(1e-15));
    }
    SUBCASE("coth exceeds one, decreases and tends to one") {
        double previous = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 60; ++i) {
            const double rho = std::pow(10.0, -5.0 + i * 0.1);
            const double v = warp_log_derivative(kHyp, rho);
            CHECK(v > 1.0);
            CHECK(v < previous);
            previous = v;
        }
        CHECK(warp_log_derivative(kHyp, 20.0) - 1.0 < 1e-15);
    }
}

TEST_CASE("volume weight") {
    CHECK(volume_weight(kEuc, 2.0) == 4.0);
    CHECK(volume_weight(BackgroundGeometry(Background::Hyperbolic, 2), 1.0) ==
          doctest::Approx(1.1752011936438014).epsilon(1e-15));
    CHECK(volume_weight(kHyp, 0.0) == 0.0);
    CHECK(volume_weight(kEuc, 0.0) == 0.0);
    for (const auto& geom : {kHyp, kEuc}) {
        double previous = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double v = volume_weight(geom, 0.05 * i);
            CHECK(v > previous);
            previous = v;
        }
    }
}

TEST_CASE("unit sphere measure") {
    CHECK(unit_sphere_measure(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(unit_sphere_measure(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(unit_sphere_measure(4) ==
          doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("disk model radius") {
    CHECK(disk_to_geodesic(0.0) == 0.0);
    CHECK(disk_to_geodesic(0.5) == doctest::Approx(1.0986122886681098).epsilon(1e-15));
    CHECK_THROWS_AS(disk_to_geodesic(1.0), DomainError);
    CHECK_THROWS_AS(disk_to_geodesic(-0.1), DomainError);
    for (int i = 1; i <= 9; ++i) {
        const double s = 0.1 * i;
        CHECK(std::abs(geodesic_to_disk(disk_to_geodesic(s)) - s) <= 1e-14);
        CHECK(disk_to_geodesic(s) > disk_to_geodesic(s - 0.05));
    }
}

TEST_CASE("background geometry and grid invariants") {
    CHECK_THROWS_AS(BackgroundGeometry(Background::Hyperbolic, 1), ConfigError);
    CHECK(kHyp.angular() == 2);
    CHECK_THROWS_AS(RadialGrid(1.0, 7), ConfigError);
    CHECK_THROWS_AS(RadialGrid(0.0, 10), ConfigError);
    const RadialGrid grid(6.0, 600);
    CHECK(grid.node(0) == 0.0);
    CHECK(grid.node(600) == 6.0);
    CHECK(grid.size() == 601);
    const auto nodes = grid.nodes();
    for (std::size_t j = 1; j < nodes.size(); ++j) CHECK(nodes[j] > nodes[j - 1]);
    CHECK(nodes.back() == 6.0);
}

TEST_CASE("cubic interpolation") {
    const RadialGrid grid(2.0, 40);
    std::vector<double> even(grid.size()), odd(grid.size());
    for (int j = 0; j <= 40; ++j) {
        const double r = grid.node(j);
        even[j] = 1.0 + 0.3 * r * r - 0.05 * r * r * r * r;
        odd[j] = r - 0.2 * r * r * r;
    }
    SUBCASE("cubic polynomials of the right parity are reproduced") {
        for (double x : {0.0, 0.013, 0.04, 0.777, 1.5, 1.99, 2.0}) {
            CHECK(interpolate_cubic(odd, grid, x, Parity::Odd) ==
                  doctest::Approx(x - 0.2 * x * x * x).epsilon(1e-13));
        }
    }
    SUBCASE("fourth-order accuracy on smooth data") {
        double err = 0.0;
        for (double x = 0.0; x <= 2.0; x += 0.0137) {
            err = std::max(err, std::abs(interpolate_cubic(even, grid, x, Parity::Even) -
                                         (1.0 + 0.3 * x * x - 0.05 * x * x * x * x)));
        }
        CHECK(err < 1e-6);
    }
    CHECK_THROWS_AS(interpolate_cubic(even, grid, 2.1, Parity::Even), RangeError);
    CHECK_THROWS_AS(interpolate_cubic(even, grid, -0.1, Parity::Even), RangeError);

    const HermiteSegment seg{0.0, 2.0, 1.0, 9.0, 0.0, 12.0};  // y = 1 + t^3
    CHECK(seg.value(1.0) == doctest::Approx(2.0));
    CHECK(seg.derivative(1.0) == doctest::Approx(3.0));
}
