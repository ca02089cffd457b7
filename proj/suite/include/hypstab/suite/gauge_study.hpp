#pragma once

#include <string>
#include <vector>

#include "hypstab/gauge.hpp"
#include "hypstab/radial_flow.hpp"

namespace hypstab::suite {

/// Diffeomorphisms integrated from a recorded flow with either sign, with the
/// scaled-Ricci-flow defect of the corresponding pullbacks.
struct GaugeStudy {
    double defect_minus = 0.0;  ///< sign -1; infinity if the map broke down
    double defect_plus = 0.0;
    std::string failure_minus;
    std::string failure_plus;
    int selected_sign = 0;  ///< sign with the smaller defect
    std::vector<DiffeoState> maps;  ///< trajectory for the selected sign
    double max_displacement = 0.0;  ///< sup over maps and nodes of |s - rho|
};

/// Defects are measured on rho in [rho_lo, rho_hi].
GaugeStudy study_gauge(const std::vector<RadialMetricState>& frames,
                       const BackgroundGeometry& geom, double rho_lo, double rho_hi);

/// Map of `maps` whose time is closest to t.
const DiffeoState& map_near(const std::vector<DiffeoState>& maps, double t);

/// sup_j |s_j(t1) - s_j(t0)| using the maps nearest to t0 and t1.
double map_increment(const std::vector<DiffeoState>& maps, double t0, double t1);

/// Largest |e^{u(t)} - (e^{u0} + 2t)| over `samples` times evenly spaced in
/// [0, t_max], where e^{u(t)} is obtained by evolving the rescaled constant
/// conformal flow from u0 = log(1 + amplitude) to t~(t) with step `dt` and
/// mapping the result to unscaled time with the n = 2 time map.
double conformal_time_map_error(double amplitude, int samples, double t_max, double dt);

}  // namespace hypstab::suite
