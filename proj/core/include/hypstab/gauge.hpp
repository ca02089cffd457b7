#pragma once

#include <vector>

#include "hypstab/geometry.hpp"
#include "hypstab/radial_flow.hpp"

namespace hypstab {

/// Reparametrisation between Ricci flow time t and scaled Ricci flow time
/// t~ = log(1 + 2(n-1) t) / (2(n-1)).
class TimeMap {
public:
    explicit TimeMap(int dimension);

    int dimension() const noexcept { return dimension_; }
    double to_scaled(double t) const;
    double from_scaled(double scaled) const;
    /// 1 + 2(n-1) t, the factor relating the two metrics at matching times.
    double expansion(double t) const;

private:
    int dimension_;
    double rate_;  // 2(n-1)
};

double to_scaled_time(const TimeMap& map, double t);
double from_scaled_time(const TimeMap& map, double scaled);

/// Eigenvalue profile of a metric relative to h at one instant.
struct MetricSnapshot {
    std::vector<double> eigenvalues;
    double t = 0.0;
};

/// g(t) = (1 + 2(n-1) t) g~(t~): input time is scaled, output time is t.
MetricSnapshot scaled_to_unscaled_metric(const MetricSnapshot& scaled, const TimeMap& map);
/// g~(t~) = e^{-2(n-1) t~} g(t(t~)): input time is t, output time is scaled.
MetricSnapshot unscaled_to_scaled_metric(const MetricSnapshot& unscaled, const TimeMap& map);

RadialMetricState scaled_to_unscaled_metric(const RadialMetricState& scaled, const TimeMap& map);
RadialMetricState unscaled_to_scaled_metric(const RadialMetricState& unscaled,
                                            const TimeMap& map);

/// Radial component of V^k = g^{rs} (gGamma^k_rs - hGamma^k_rs):
///   a'/(2a^2) - (n-1) b'/(2ab) + (n-1) kappa (1/b - 1/a).
std::vector<double> deturck_field(const RadialMetricState& state, const BackgroundGeometry& geom);

/// Radial map rho -> s(rho, t) of a rotationally symmetric diffeomorphism.
struct DiffeoState {
    RadialGrid grid;
    std::vector<double> s;
    double t = 0.0;

    static DiffeoState identity(const RadialGrid& grid, double t = 0.0);
    /// Throws MonotonicityLoss unless s is strictly increasing with s(0) = 0.
    void check_monotone() const;
};

/// (outer o inner)(rho) = outer(inner(rho)).
DiffeoState compose(const DiffeoState& outer, const DiffeoState& inner);

/// Integrates ds/dt = sign * V(s, t) for every node by RK4 with `substeps`
/// steps per frame interval, V interpolated cubically in space and by cubic
/// Hermite in time. The origin and the outer sphere stay fixed. Returns one
/// map per frame, starting from the identity.
std::vector<DiffeoState> integrate_diffeo(const std::vector<RadialMetricState>& frames,
                                          const BackgroundGeometry& geom, int sign,
                                          int substeps = 2);

/// phi^* g for the radial map s: a~ = s'^2 a(s), b~ = b(s) warp(s)^2 / warp(rho)^2.
RadialMetricState pullback_metric(const RadialMetricState& state, const DiffeoState& diffeo,
                                  const BackgroundGeometry& geom);

}  // namespace hypstab
