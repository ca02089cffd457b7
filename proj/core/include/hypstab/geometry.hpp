#pragma once

#include <cstddef>
#include <vector>

namespace hypstab {

enum class Background { Hyperbolic, Euclidean };

/// Background metric h = d rho^2 + warp(rho)^2 g_{S^{n-1}} in geodesic polar
/// form. Hyperbolic means sectional curvature -1.
struct BackgroundGeometry {
    Background kind = Background::Hyperbolic;
    int dimension = 4;

    BackgroundGeometry() = default;
    BackgroundGeometry(Background kind, int dimension);

    /// Number of angular directions, n - 1.
    int angular() const noexcept { return dimension - 1; }
    bool hyperbolic() const noexcept { return kind == Background::Hyperbolic; }
};

/// Below this radius warp_log_derivative switches to its Laurent series.
inline constexpr double kLogDerivativeSeriesThreshold = 1e-3;

double warp(const BackgroundGeometry& geom, double rho);
double warp_derivative(const BackgroundGeometry& geom, double rho);

/// warp'(rho) / warp(rho): coth(rho) or 1/rho. Throws DomainError at rho <= 0.
double warp_log_derivative(const BackgroundGeometry& geom, double rho);

/// warp(rho)^{n-1}, the radial density of dvol_h without the sphere measure.
double volume_weight(const BackgroundGeometry& geom, double rho);

/// Measure of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_measure(int dimension);

/// Poincare-disk radius s in [0,1) to hyperbolic distance 2 artanh(s).
double disk_to_geodesic(double s);
double geodesic_to_disk(double rho);

/// Uniform radial grid rho_j = j R / m, j = 0..m.
class RadialGrid {
public:
    static constexpr int kMinIntervals = 8;

    RadialGrid(double radius, int intervals);

    double radius() const noexcept { return radius_; }
    int intervals() const noexcept { return intervals_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(intervals_) + 1; }
    double spacing() const noexcept { return spacing_; }
    double node(int j) const noexcept { return j == intervals_ ? radius_ : j * spacing_; }
    std::vector<double> nodes() const;

    friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

private:
    double radius_;
    int intervals_;
    double spacing_;
};

}  // namespace hypstab
