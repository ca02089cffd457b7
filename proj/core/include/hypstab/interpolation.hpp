#pragma once

#include <span>

#include "hypstab/geometry.hpp"

namespace hypstab {

/// Symmetry of a radial profile under rho -> -rho, used to fill ghost nodes.
enum class Parity { Even, Odd };

/// Four-point Lagrange interpolation of nodal values at radius x in [0, R].
/// Stencils crossing the origin use the reflected ghost values.
double interpolate_cubic(std::span<const double> values, const RadialGrid& grid, double x,
                         Parity parity);

/// Cubic Hermite interpolant on [t0, t1] from endpoint values and slopes.
struct HermiteSegment {
    double t0, t1;
    double y0, y1;
    double d0, d1;

    double value(double t) const noexcept;
    double derivative(double t) const noexcept;
};

}  // namespace hypstab
