#include "hypstab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

double deviation_squared(const RadialMetricState& s, const BackgroundGeometry& geom,
                         std::size_t j) {
    const double da = s.a[j] - 1.0;
    const double db = s.b[j] - 1.0;
    return da * da + geom.angular() * db * db;
}

template <class Integrand>
double radial_integral(const RadialMetricState& state, const BackgroundGeometry& geom,
                       Integrand integrand) {
    const auto& grid = state.grid;
    const int m = grid.intervals();
    double sum = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double w = (j == 0 || j == m) ? 0.5 : 1.0;
        sum += w * integrand(static_cast<std::size_t>(j)) * volume_weight(geom, grid.node(j));
    }
    return unit_sphere_measure(geom.dimension) * sum * grid.spacing();
}

}  // namespace

double alpha_rate(int dimension) {
    const double k = dimension - 1;
    return (2.0 * k * k - 17.0) / 4.0;
}

double beta_rate(int dimension) { return alpha_rate(dimension) / (dimension + 2); }

double l2_lyapunov(const RadialMetricState& state, const BackgroundGeometry& geom) {
    return radial_integral(state, geom,
                           [&](std::size_t j) { return deviation_squared(state, geom, j); });
}

double truncated_lyapunov(const RadialMetricState& state, const BackgroundGeometry& geom,
                          double delta) {
    return p_lyapunov(state, geom, 2.0, delta);
}

double p_lyapunov(const RadialMetricState& state, const BackgroundGeometry& geom, double p,
                  double delta) {
    if (!(p >= 2.0)) throw DomainError("p_lyapunov: p must be at least 2");
    if (!(delta >= 0.0)) throw DomainError("p_lyapunov: delta must be nonnegative");
    return radial_integral(state, geom, [&](std::size_t j) {
        const double sq = deviation_squared(state, geom, j);
        const double power = p == 2.0 ? sq : std::pow(sq, 0.5 * p);
        return std::max(power - delta, 0.0);
    });
}

double sup_norm(const RadialMetricState& state, const BackgroundGeometry& geom) {
    double worst = 0.0;
    for (std::size_t j = 0; j < state.a.size(); ++j) {
        worst = std::max(worst, deviation_squared(state, geom, j));
    }
    return std::sqrt(worst);
}

double max_gradient(const RadialMetricState& state, const BackgroundGeometry& geom) {
    const auto grad = frame_first_derivatives(state, geom);
    double worst = 0.0;
    for (std::size_t j = 0; j < state.a.size(); ++j) {
        worst = std::max(worst, grad.norm_squared(j, geom.angular()));
    }
    return std::sqrt(worst);
}

double kato_residual(const RadialMetricState& state, const BackgroundGeometry& geom) {
    const auto grad = frame_first_derivatives(state, geom);
    const int k = geom.angular();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < state.a.size(); ++j) {
        const double full = grad.norm_squared(j, k);
        const double z2 = deviation_squared(state, geom, j);
        double scalar = 0.0;
        if (z2 > 0.0) {
            // Z is diagonal in the frame, so only the d_a and d_b components
            // pair with it: d|Z| = <Z, nabla_rho Z> / |Z|.
            const double pairing =
                (state.a[j] - 1.0) * grad.d_a[j] + k * (state.b[j] - 1.0) * grad.d_b[j];
            scalar = pairing * pairing / z2;
        }
        worst = std::max(worst, scalar - full);
    }
    return worst;
}

double field_value(const DecayRecord& r, SeriesField field) {
    switch (field) {
        case SeriesField::L2: return r.l2;
        case SeriesField::Truncated: return r.truncated;
        case SeriesField::PTruncated: return r.p_truncated;
        case SeriesField::SupNorm: return r.sup_norm;
        case SeriesField::MaxGrad: return r.max_grad;
        case SeriesField::Closeness: return r.closeness;
    }
    return 0.0;
}

void SeriesOptions::validate() const {
    if (!(delta >= 0.0)) throw ConfigError("delta must be nonnegative");
    if (!(p >= 2.0)) throw ConfigError("p must be at least 2");
}

void DecaySeries::append(const DecayRecord& record) {
    if (!records.empty() && !(record.t > records.back().t)) {
        throw ConfigError("series times must increase strictly");
    }
    records.push_back(record);
}

DecayRecord measure(const RadialMetricState& state, const BackgroundGeometry& geom,
                    const SeriesOptions& options) {
    DecayRecord r;
    r.t = state.t;
    r.l2 = l2_lyapunov(state, geom);
    r.truncated = truncated_lyapunov(state, geom, options.delta);
    r.p_truncated = p_lyapunov(state, geom, options.p, options.delta);
    r.sup_norm = sup_norm(state, geom);
    r.max_grad = max_gradient(state, geom);
    r.closeness = state.closeness();
    return r;
}

RadialMetricState as_radial_metric(const ConformalState& state) {
    std::vector<double> e(state.u.size());
    std::transform(state.u.begin(), state.u.end(), e.begin(),
                   [](double u) { return std::exp(u); });
    return {state.grid, e, e, state.t};
}

DecaySeries truncate_at_floor(const DecaySeries& series, SeriesField field, double floor) {
    DecaySeries out;
    for (const auto& r : series.records) {
        if (field_value(r, field) < floor) {
            if (out.empty()) out.records.push_back(r);
            break;
        }
        out.records.push_back(r);
    }
    return out;
}

FitWindow floor_limited_window(const DecaySeries& series, SeriesField field, double floor) {
    if (series.empty()) throw FitError("cannot choose a window for an empty series");
    const double t0 = series.records.front().t;
    const double cut = truncate_at_floor(series, field, floor).records.back().t;
    return {t0 + 0.5 * (cut - t0), cut};
}

FitResult fit_decay_rate(const DecaySeries& series, SeriesField field,
                         std::optional<FitWindow> window) {
    if (series.empty()) throw FitError("cannot fit an empty series");
    FitWindow w;
    if (window) {
        w = *window;
    } else {
        const double t_end = series.records.back().t;
        w = {series.records.front().t + 0.5 * (t_end - series.records.front().t), t_end};
    }
    if (w.lo < series.records.front().t || w.hi > series.records.back().t || w.lo > w.hi) {
        throw FitError("fit window lies outside the series range");
    }
    std::vector<double> ts, ys;
    for (const auto& r : series.records) {
        if (r.t < w.lo || r.t > w.hi) continue;
        const double v = field_value(r, field);
        if (!(v > 0.0)) {
            throw FitError("nonpositive value at t = " + std::to_string(r.t) +
                           "; shrink the fit window");
        }
        ts.push_back(r.t);
        ys.push_back(std::log(v));
    }
    if (ts.size() < 5) throw FitError("need at least 5 samples in the fit window");

    const double n = static_cast<double>(ts.size());
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        mt += ts[i];
        my += ys[i];
    }
    mt /= n;
    my /= n;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - mt) * (ts[i] - mt);
        sty += (ts[i] - mt) * (ys[i] - my);
    }
    if (!(stt > 0.0)) throw FitError("fit window contains a single time");
    const double slope = sty / stt;
    FitResult out;
    out.rate = -slope;
    out.log_amplitude = my - slope * mt;
    double ss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = ys[i] - (out.log_amplitude + slope * ts[i]);
        ss += r * r;
    }
    out.rms_residual = std::sqrt(ss / n);
    out.window = w;
    out.samples = ts.size();
    return out;
}

MonotonicityResult monotonicity_check(const DecaySeries& series, SeriesField field, double rate,
                                      double tol) {
    MonotonicityResult out;
    for (std::size_t k = 0; k + 1 < series.records.size(); ++k) {
        const auto& r0 = series.records[k];
        const auto& r1 = series.records[k + 1];
        const double allowed = std::exp(-rate * (r1.t - r0.t)) * field_value(r0, field);
        const double next = field_value(r1, field);
        double ratio;
        if (allowed > 0.0) {
            ratio = next / allowed;
        } else {
            ratio = next > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }
        if (k == 0 || ratio > out.worst_ratio) {
            out.worst_ratio = ratio;
            out.worst_index = k;
        }
        if (ratio > 1.0 + tol) out.pass = false;
    }
    return out;
}

double gradient_blowup_monitor(const DecaySeries& series) {
    double worst = 0.0;
    for (const auto& r : series.records) {
        if (r.t > 0.0 && r.t <= 1.0) worst = std::max(worst, r.t * r.max_grad * r.max_grad);
    }
    return worst;
}

double interpolation_check(std::span<const double> u, std::span<const double> du,
                           std::span<const double> d2u) {
    auto sup = [](std::span<const double> v) {
        double s = 0.0;
        for (double x : v) s = std::max(s, std::abs(x));
        return s;
    };
    const double grad = sup(du);
    return std::max(0.0, grad * grad - 32.0 * sup(u) * sup(d2u));
}

RecordedRun run_recorded(const RadialMetricState& initial, const FlowParams& params,
                         const SeriesOptions& options, bool keep_frames) {
    options.validate();
    RecordedRun out{initial, {}, {}, 0, nullptr, {}};
    auto result = evolve(initial, params, [&](const RadialMetricState& s) {
        out.series.append(measure(s, params.geom, options));
        if (keep_frames) out.frames.push_back(s);
    });
    out.final_state = std::move(result.final_state);
    out.steps = result.steps;
    out.failure = result.failure;
    out.failure_message = std::move(result.failure_message);
    return out;
}

}  // namespace hypstab
