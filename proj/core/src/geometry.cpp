#include "hypstab/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

void require_nonnegative(double rho, const char* op) {
    if (!(rho >= 0.0)) {
        throw DomainError(std::string(op) + ": radius must be nonnegative, got " +
                          std::to_string(rho));
    }
}

}  // namespace

BackgroundGeometry::BackgroundGeometry(Background kind, int dimension)
    : kind(kind), dimension(dimension) {
    if (dimension < 2) {
        throw ConfigError("dimension must be at least 2, got " + std::to_string(dimension));
    }
}

double warp(const BackgroundGeometry& geom, double rho) {
    require_nonnegative(rho, "warp");
    return geom.hyperbolic() ? std::sinh(rho) : rho;
}

double warp_derivative(const BackgroundGeometry& geom, double rho) {
    require_nonnegative(rho, "warp_derivative");
    return geom.hyperbolic() ? std::cosh(rho) : 1.0;
}

double warp_log_derivative(const BackgroundGeometry& geom, double rho) {
    if (!(rho > 0.0)) {
        throw DomainError("warp_log_derivative: radius must be positive, got " +
                          std::to_string(rho));
    }
    if (!geom.hyperbolic()) return 1.0 / rho;
    if (rho < kLogDerivativeSeriesThreshold) {
        // coth x = 1/x + x/3 - x^3/45 + O(x^5)
        return 1.0 / rho + rho / 3.0 - rho * rho * rho / 45.0;
    }
    return 1.0 / std::tanh(rho);
}

double volume_weight(const BackgroundGeometry& geom, double rho) {
    return std::pow(warp(geom, rho), geom.angular());
}

double unit_sphere_measure(int dimension) {
    const double half = 0.5 * dimension;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double disk_to_geodesic(double s) {
    if (!(s >= 0.0 && s < 1.0)) {
        throw DomainError("disk_to_geodesic: disk radius must lie in [0,1), got " +
                          std::to_string(s));
    }
    return 2.0 * std::atanh(s);
}

double geodesic_to_disk(double rho) {
    require_nonnegative(rho, "geodesic_to_disk");
    return std::tanh(0.5 * rho);
}

RadialGrid::RadialGrid(double radius, int intervals)
    : radius_(radius), intervals_(intervals), spacing_(radius / intervals) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ConfigError("grid radius must be positive and finite");
    }
    if (intervals < kMinIntervals) {
        throw ConfigError("grid needs at least " + std::to_string(kMinIntervals) +
                          " intervals, got " + std::to_string(intervals));
    }
}

std::vector<double> RadialGrid::nodes() const {
    std::vector<double> out(size());
    for (int j = 0; j <= intervals_; ++j) out[j] = node(j);
    return out;
}

}  // namespace hypstab
