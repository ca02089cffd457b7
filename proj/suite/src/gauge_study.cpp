#include "hypstab/suite/gauge_study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypstab/conformal2d.hpp"
#include "hypstab/errors.hpp"
#include "hypstab/suite/flow_defect.hpp"

namespace hypstab::suite {

GaugeStudy study_gauge(const std::vector<RadialMetricState>& frames,
                       const BackgroundGeometry& geom, double rho_lo, double rho_hi) {
    GaugeStudy out;
    std::vector<DiffeoState> kept[2];
    for (int sign : {-1, 1}) {
        double& defect = sign < 0 ? out.defect_minus : out.defect_plus;
        std::string& failure = sign < 0 ? out.failure_minus : out.failure_plus;
        try {
            auto maps = integrate_diffeo(frames, geom, sign);
            std::vector<RadialMetricState> pulled;
            pulled.reserve(maps.size());
            for (std::size_t i = 0; i < maps.size(); ++i) {
                pulled.push_back(pullback_metric(frames[i], maps[i], geom));
            }
            defect = scaled_flow_defect(pulled, geom, rho_lo, rho_hi);
            kept[sign > 0] = std::move(maps);
        } catch (const NumericalError& e) {
            defect = std::numeric_limits<double>::infinity();
            failure = e.what();
        } catch (const RangeError& e) {
            defect = std::numeric_limits<double>::infinity();
            failure = e.what();
        }
    }
    out.selected_sign = out.defect_minus <= out.defect_plus ? -1 : 1;
    out.maps = std::move(kept[out.selected_sign > 0]);
    for (const auto& map : out.maps) {
        for (int j = 0; j <= map.grid.intervals(); ++j) {
            out.max_displacement =
                std::max(out.max_displacement, std::abs(map.s[j] - map.grid.node(j)));
        }
    }
    return out;
}

const DiffeoState& map_near(const std::vector<DiffeoState>& maps, double t) {
    if (maps.empty()) throw RangeError("map_near: no maps");
    const auto it = std::min_element(maps.begin(), maps.end(), [t](const auto& x, const auto& y) {
        return std::abs(x.t - t) < std::abs(y.t - t);
    });
    return *it;
}

double map_increment(const std::vector<DiffeoState>& maps, double t0, double t1) {
    const auto& a = map_near(maps, t0);
    const auto& b = map_near(maps, t1);
    double worst = 0.0;
    for (std::size_t j = 0; j < a.s.size(); ++j) worst = std::max(worst, std::abs(b.s[j] - a.s[j]));
    return worst;
}

double conformal_time_map_error(double amplitude, int samples, double t_max, double dt) {
    const TimeMap map(2);
    const RadialGrid grid(1.0, RadialGrid::kMinIntervals);
    const double u0 = std::log1p(amplitude);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = t_max * i / (samples - 1);
        ConformalParams params;
        params.boundary = BoundaryMode::NoBoundaryConstantMode;
        params.fixed_dt = dt;
        params.t_end = map.to_scaled(t);
        params.record_every = 1 << 30;
        const ConformalState initial(grid, std::vector<double>(grid.size(), u0));
        const auto result = evolve(initial, params, nullptr);
        if (!result.completed()) std::rethrow_exception(result.failure);
        const MetricSnapshot scaled{{std::exp(result.final_state.u[0])}, result.final_state.t};
        const auto unscaled = scaled_to_unscaled_metric(scaled, map);
        worst = std::max(worst, std::abs(unscaled.eigenvalues[0] - (std::exp(u0) + 2.0 * t)));
    }
    return worst;
}

}  // namespace hypstab::suite
