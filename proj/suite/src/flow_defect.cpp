#include "hypstab/suite/flow_defect.hpp"

#include <algorithm>
#include <cmath>

#include "hypstab/errors.hpp"

namespace hypstab::suite {

RadialRicci warped_ricci(const RadialMetricState& state, const BackgroundGeometry& geom) {
    const auto& grid = state.grid;
    const int m = grid.intervals();
    const double h = grid.spacing();
    const double k = geom.angular();
    RadialRicci out{std::vector<double>(grid.size(), 0.0), std::vector<double>(grid.size(), 0.0)};

    std::vector<double> psi(grid.size());
    for (int j = 0; j <= m; ++j) psi[j] = std::sqrt(state.b[j]) * warp(geom, grid.node(j));

    for (int j = 1; j < m; ++j) {
        const double a = state.a[j];
        const double da = (state.a[j + 1] - state.a[j - 1]) / (2 * h);
        const double dpsi = (psi[j + 1] - psi[j - 1]) / (2 * h);
        const double ddpsi = (psi[j + 1] - 2 * psi[j] + psi[j - 1]) / (h * h);
        const double w = warp(geom, grid.node(j));
        out.radial[j] = -k * (ddpsi - da * dpsi / (2 * a)) / psi[j];
        const double sphere = -psi[j] * (ddpsi / a - da * dpsi / (2 * a * a)) -
                              (k - 1) * dpsi * dpsi / a + (k - 1);
        out.angular[j] = sphere / (w * w);
    }
    return out;
}

double scaled_flow_defect(const std::vector<RadialMetricState>& frames,
                          const BackgroundGeometry& geom, double rho_lo, double rho_hi) {
    if (frames.size() < 3) throw RangeError("scaled_flow_defect needs at least three frames");
    const auto& grid = frames.front().grid;
    const double shift = geom.hyperbolic() ? 2.0 * geom.angular() : 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < frames.size(); ++i) {
        const auto& prev = frames[i - 1];
        const auto& next = frames[i + 1];
        const auto& cur = frames[i];
        const double span = next.t - prev.t;
        const RadialRicci ric = warped_ricci(cur, geom);
        for (int j = 1; j < grid.intervals(); ++j) {
            const double rho = grid.node(j);
            if (rho < rho_lo || rho > rho_hi) continue;
            const double da = (next.a[j] - prev.a[j]) / span;
            const double db = (next.b[j] - prev.b[j]) / span;
            const double ta = -2.0 * ric.radial[j] - shift * cur.a[j];
            const double tb = -2.0 * ric.angular[j] - shift * cur.b[j];
            worst = std::max({worst, std::abs(da - ta), std::abs(db - tb)});
        }
    }
    return worst;
}

}  // namespace hypstab::suite
