#pragma once

#include <vector>

#include "hypstab/geometry.hpp"
#include "hypstab/radial_flow.hpp"

namespace hypstab::suite {

/// Ricci tensor of a radial metric in the h-orthonormal frame, from the
/// warped-product form g = a d rho^2 + psi^2 g_S with psi = sqrt(b) warp and
/// central differences. Entries at j = 0 and j = m are left at zero.
struct RadialRicci {
    std::vector<double> radial;
    std::vector<double> angular;
};

RadialRicci warped_ricci(const RadialMetricState& state, const BackgroundGeometry& geom);

/// Largest |d g/dt - (-2 Ric - 2(n-1) g)| over interior frames and nodes with
/// rho in [rho_lo, rho_hi], d/dt by central differences between frames. The
/// last term is dropped on a Euclidean background.
double scaled_flow_defect(const std::vector<RadialMetricState>& frames,
                          const BackgroundGeometry& geom, double rho_lo, double rho_hi);

}  // namespace hypstab::suite
