#include "hypstab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypstab/errors.hpp"
#include "hypstab/interpolation.hpp"

namespace hypstab {

TimeMap::TimeMap(int dimension) : dimension_(dimension), rate_(2.0 * (dimension - 1)) {
    if (dimension < 2) throw ConfigError("TimeMap needs dimension >= 2");
}

double TimeMap::to_scaled(double t) const {
    if (!(t >= 0.0)) throw DomainError("to_scaled: time must be nonnegative");
    return std::log1p(rate_ * t) / rate_;
}

double TimeMap::from_scaled(double scaled) const {
    if (!(scaled >= 0.0)) throw DomainError("from_scaled: time must be nonnegative");
    return std::expm1(rate_ * scaled) / rate_;
}

double TimeMap::expansion(double t) const {
    if (!(t >= 0.0)) throw DomainError("expansion: time must be nonnegative");
    return 1.0 + rate_ * t;
}

double to_scaled_time(const TimeMap& map, double t) { return map.to_scaled(t); }
double from_scaled_time(const TimeMap& map, double scaled) { return map.from_scaled(scaled); }

MetricSnapshot scaled_to_unscaled_metric(const MetricSnapshot& scaled, const TimeMap& map) {
    const double t = map.from_scaled(scaled.t);
    const double factor = map.expansion(t);
    MetricSnapshot out{scaled.eigenvalues, t};
    for (auto& v : out.eigenvalues) v *= factor;
    return out;
}

MetricSnapshot unscaled_to_scaled_metric(const MetricSnapshot& unscaled, const TimeMap& map) {
    const double scaled = map.to_scaled(unscaled.t);
    // e^{-2(n-1) t~} = 1 / (1 + 2(n-1) t)
    const double factor = 1.0 / map.expansion(unscaled.t);
    MetricSnapshot out{unscaled.eigenvalues, scaled};
    for (auto& v : out.eigenvalues) v *= factor;
    return out;
}

RadialMetricState scaled_to_unscaled_metric(const RadialMetricState& scaled, const TimeMap& map) {
    RadialMetricState out = scaled;
    out.t = map.from_scaled(scaled.t);
    const double factor = map.expansion(out.t);
    for (auto& v : out.a) v *= factor;
    for (auto& v : out.b) v *= factor;
    return out;
}

RadialMetricState unscaled_to_scaled_metric(const RadialMetricState& unscaled,
                                            const TimeMap& map) {
    RadialMetricState out = unscaled;
    out.t = map.to_scaled(unscaled.t);
    const double factor = 1.0 / map.expansion(unscaled.t);
    for (auto& v : out.a) v *= factor;
    for (auto& v : out.b) v *= factor;
    return out;
}

std::vector<double> deturck_field(const RadialMetricState& state, const BackgroundGeometry& geom) {
    const auto& grid = state.grid;
    const int m = grid.intervals();
    const double h = grid.spacing();
    const double k = geom.angular();
    const auto& a = state.a;
    const auto& b = state.b;
    for (int j = 0; j <= m; ++j) {
        if (!(a[j] > 0.0) || !(b[j] > 0.0)) {
            throw DomainError("deturck_field: nonpositive eigenvalue at node " +
                              std::to_string(j));
        }
    }
    std::vector<double> v(grid.size(), 0.0);  // odd in rho, so v[0] = 0
    auto field = [&](int j, double da, double db) {
        const double kappa = warp_log_derivative(geom, grid.node(j));
        return da / (2.0 * a[j] * a[j]) - k * db / (2.0 * a[j] * b[j]) +
               k * kappa * (1.0 / b[j] - 1.0 / a[j]);
    };
    for (int j = 1; j < m; ++j) {
        v[j] = field(j, (a[j + 1] - a[j - 1]) / (2 * h), (b[j + 1] - b[j - 1]) / (2 * h));
    }
    v[m] = field(m, (3 * a[m] - 4 * a[m - 1] + a[m - 2]) / (2 * h),
                 (3 * b[m] - 4 * b[m - 1] + b[m - 2]) / (2 * h));
    return v;
}

DiffeoState DiffeoState::identity(const RadialGrid& grid, double t) {
    return {grid, grid.nodes(), t};
}

void DiffeoState::check_monotone() const {
    if (s.front() != 0.0) throw MonotonicityLoss(0, t);
    for (std::size_t j = 1; j < s.size(); ++j) {
        if (!(s[j] > s[j - 1])) throw MonotonicityLoss(static_cast<int>(j), t);
    }
}

DiffeoState compose(const DiffeoState& outer, const DiffeoState& inner) {
    if (!(outer.grid == inner.grid)) throw ConfigError("compose requires a shared grid");
    DiffeoState out = inner;
    for (auto& v : out.s) v = interpolate_cubic(outer.s, outer.grid, v, Parity::Odd);
    return out;
}

namespace {

// Three-point derivative estimates of nodal values across frames.
std::vector<std::vector<double>> frame_slopes(const std::vector<double>& times,
                                              const std::vector<std::vector<double>>& values) {
    const std::size_t count = times.size();
    std::vector<std::vector<double>> slopes(count, std::vector<double>(values[0].size(), 0.0));
    if (count < 2) return slopes;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t l, c, r;
        if (count == 2) {
            for (std::size_t j = 0; j < values[0].size(); ++j) {
                slopes[i][j] = (values[1][j] - values[0][j]) / (times[1] - times[0]);
            }
            continue;
        }
        if (i == 0) {
            l = 0, c = 1, r = 2;
        } else if (i + 1 == count) {
            l = count - 3, c = count - 2, r = count - 1;
        } else {
            l = i - 1, c = i, r = i + 1;
        }
        // Derivative at times[i] of the quadratic through frames l, c, r.
        const double x = times[i];
        const double tl = times[l], tc = times[c], tr = times[r];
        const double wl = ((x - tc) + (x - tr)) / ((tl - tc) * (tl - tr));
        const double wc = ((x - tl) + (x - tr)) / ((tc - tl) * (tc - tr));
        const double wr = ((x - tl) + (x - tc)) / ((tr - tl) * (tr - tc));
        for (std::size_t j = 0; j < values[0].size(); ++j) {
            slopes[i][j] = wl * values[l][j] + wc * values[c][j] + wr * values[r][j];
        }
    }
    return slopes;
}

}  // namespace

std::vector<DiffeoState> integrate_diffeo(const std::vector<RadialMetricState>& frames,
                                          const BackgroundGeometry& geom, int sign,
                                          int substeps) {
    if (sign != 1 && sign != -1) throw ConfigError("integrate_diffeo: sign must be +1 or -1");
    if (substeps < 1) throw ConfigError("integrate_diffeo: substeps must be positive");
    if (frames.empty()) throw RangeError("integrate_diffeo: empty trajectory");
    const RadialGrid grid = frames.front().grid;
    std::vector<double> times;
    std::vector<std::vector<double>> fields;
    for (const auto& f : frames) {
        if (!(f.grid == grid)) throw ConfigError("integrate_diffeo: frames use different grids");
        if (!times.empty() && !(f.t > times.back())) {
            throw ConfigError("integrate_diffeo: frame times must increase");
        }
        times.push_back(f.t);
        fields.push_back(deturck_field(f, geom));
    }
    const auto slopes = frame_slopes(times, fields);

    std::vector<DiffeoState> out;
    out.push_back(DiffeoState::identity(grid, times.front()));
    const int m = grid.intervals();
    DiffeoState current = out.back();

    for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
        const double t0 = times[i];
        const double t1 = times[i + 1];
        auto velocity = [&](double x, double t) {
            const double v0 = interpolate_cubic(fields[i], grid, x, Parity::Odd);
            const double v1 = interpolate_cubic(fields[i + 1], grid, x, Parity::Odd);
            const double d0 = interpolate_cubic(slopes[i], grid, x, Parity::Odd);
            const double d1 = interpolate_cubic(slopes[i + 1], grid, x, Parity::Odd);
            return sign * HermiteSegment{t0, t1, v0, v1, d0, d1}.value(t);
        };
        const double dt = (t1 - t0) / substeps;
        for (int sub = 0; sub < substeps; ++sub) {
            const double t = t0 + sub * dt;
            for (int j = 1; j < m; ++j) {
                const double s = current.s[j];
                const double k1 = velocity(s, t);
                const double k2 = velocity(s + 0.5 * dt * k1, t + 0.5 * dt);
                const double k3 = velocity(s + 0.5 * dt * k2, t + 0.5 * dt);
                const double k4 = velocity(s + dt * k3, t + dt);
                current.s[j] = s + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            }
            current.t = t + dt;
            current.check_monotone();
        }
        current.t = t1;
        out.push_back(current);
    }
    return out;
}

RadialMetricState pullback_metric(const RadialMetricState& state, const DiffeoState& diffeo,
                                  const BackgroundGeometry& geom) {
    if (!(state.grid == diffeo.grid)) throw ConfigError("pullback_metric: grids differ");
    diffeo.check_monotone();
    const auto& grid = state.grid;
    const int m = grid.intervals();
    const double h = grid.spacing();
    const auto& s = diffeo.s;
    RadialMetricState out = state;
    for (int j = 0; j <= m; ++j) {
        double ds;
        if (j == 0) {
            ds = s[1] / h;  // odd reflection s(-rho) = -s(rho)
        } else if (j == m) {
            ds = (3 * s[m] - 4 * s[m - 1] + s[m - 2]) / (2 * h);
        } else {
            ds = (s[j + 1] - s[j - 1]) / (2 * h);
        }
        const double a = interpolate_cubic(state.a, grid, s[j], Parity::Even);
        const double b = interpolate_cubic(state.b, grid, s[j], Parity::Even);
        const double ratio = j == 0 ? ds : warp(geom, s[j]) / warp(geom, grid.node(j));
        out.a[j] = ds * ds * a;
        out.b[j] = b * ratio * ratio;
    }
    return out;
}

}  // namespace hypstab
