#pragma once

#include "hypstab/geometry.hpp"

namespace hypstab::suite {

/// Zeros in (0, R] of the regular solution of u'' + (n-1) kappa u' + sigma u = 0,
/// u(0) = 1, integrated with an adaptive Runge-Kutta-Dormand-Prince scheme.
int count_nodal_zeros(const BackgroundGeometry& geom, double radius, double sigma);

/// First Dirichlet eigenvalue of the radial problem, bracketed by the zero
/// count (zero below sigma_1, at least one above) and bisected to `tolerance`.
double shooting_first_eigenvalue(const BackgroundGeometry& geom, double radius,
                                 double tolerance = 1e-10);

}  // namespace hypstab::suite
