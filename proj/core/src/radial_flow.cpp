#include "hypstab/radial_flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hypstab/errors.hpp"

namespace hypstab {

RadialMetricState::RadialMetricState(RadialGrid grid_, std::vector<double> a_,
                                     std::vector<double> b_, double t_)
    : grid(grid_), a(std::move(a_)), b(std::move(b_)), t(t_) {
    if (a.size() != grid.size() || b.size() != grid.size()) {
        throw ConfigError("metric profiles must have one value per grid node");
    }
}

RadialMetricState RadialMetricState::background(const RadialGrid& grid, double t) {
    return {grid, std::vector<double>(grid.size(), 1.0), std::vector<double>(grid.size(), 1.0),
            t};
}

double RadialMetricState::closeness() const {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        worst = std::max({worst, std::abs(a[j] - 1.0), std::abs(b[j] - 1.0)});
    }
    return worst;
}

RadialMetricState anisotropic_bump(const RadialGrid& grid, double amp_a, double amp_b) {
    std::vector<double> a(grid.size());
    std::vector<double> b(grid.size());
    const double R = grid.radius();
    for (int j = 0; j <= grid.intervals(); ++j) {
        const double rho = grid.node(j);
        const double damp = 1.0 - (rho / R) * (rho / R);
        const double weight = std::exp(-rho * rho) * damp * damp;
        // a - b is O(rho^2) so the metric stays smooth at the origin.
        const double mix = std::exp(-rho * rho);
        a[j] = 1.0 + amp_a * weight;
        b[j] = 1.0 + (amp_b + (amp_a - amp_b) * mix) * weight;
    }
    a.back() = 1.0;
    b.back() = 1.0;
    return {grid, std::move(a), std::move(b)};
}

RadialMetricState damped_bump(const RadialGrid& grid, double amplitude) {
    return anisotropic_bump(grid, amplitude, amplitude);
}

RadialMetricState tent_profile(const RadialGrid& grid, double amplitude, double center,
                               double half_width) {
    if (!(half_width > 0.0)) throw ConfigError("tent_profile: half width must be positive");
    if (center - half_width < 0.0 || center + half_width >= grid.radius()) {
        throw ConfigError("tent_profile: support must lie inside (0, R)");
    }
    std::vector<double> values(grid.size());
    for (int j = 0; j <= grid.intervals(); ++j) {
        const double x = std::abs(grid.node(j) - center) / half_width;
        values[j] = 1.0 + amplitude * std::max(0.0, 1.0 - x);
    }
    return {grid, values, values};
}

RadialMetricState constant_metric(const RadialGrid& grid, double lambda) {
    return {grid, std::vector<double>(grid.size(), lambda),
            std::vector<double>(grid.size(), lambda)};
}

void FlowParams::validate() const {
    if (!(cfl > 0.0 && cfl <= 0.5)) {
        throw ConfigError("cfl must lie in (0, 0.5], got " + std::to_string(cfl));
    }
    if (!(eps_abort > 0.0 && eps_abort < 1.0)) {
        throw ConfigError("eps_abort must lie in (0, 1), got " + std::to_string(eps_abort));
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw ConfigError("t_end must be finite and nonnegative");
    }
    if (record_every < 1) throw ConfigError("record_every must be at least 1");
    if (fixed_dt < 0.0) throw ConfigError("fixed_dt must be nonnegative");
}

FrameGradient frame_first_derivatives(const RadialMetricState& state,
                                      const BackgroundGeometry& geom) {
    const auto& grid = state.grid;
    const int m = grid.intervals();
    const double h = grid.spacing();
    FrameGradient out{std::vector<double>(grid.size(), 0.0),
                      std::vector<double>(grid.size(), 0.0),
                      std::vector<double>(grid.size(), 0.0)};
    const auto& a = state.a;
    const auto& b = state.b;
    // Even reflection at the origin makes all three components vanish at j = 0.
    for (int j = 1; j < m; ++j) {
        out.d_a[j] = (a[j + 1] - a[j - 1]) / (2 * h);
        out.d_b[j] = (b[j + 1] - b[j - 1]) / (2 * h);
        out.mixed[j] = warp_log_derivative(geom, grid.node(j)) * (a[j] - b[j]);
    }
    out.d_a[m] = (3 * a[m] - 4 * a[m - 1] + a[m - 2]) / (2 * h);
    out.d_b[m] = (3 * b[m] - 4 * b[m - 1] + b[m - 2]) / (2 * h);
    out.mixed[m] = warp_log_derivative(geom, grid.node(m)) * (a[m] - b[m]);
    return out;
}

RadialFlowSolver::RadialFlowSolver(const RadialGrid& grid, FlowParams params)
    : grid_(grid), params_(params), log_derivative_(grid.size(), 0.0) {
    params_.validate();
    for (int j = 1; j <= grid.intervals(); ++j) {
        log_derivative_[j] = warp_log_derivative(params_.geom, grid.node(j));
    }
    for (auto* k : {&k1_, &k2_, &k3_, &k4_}) {
        k->a.assign(grid.size(), 0.0);
        k->b.assign(grid.size(), 0.0);
    }
    stage_a_.assign(grid.size(), 0.0);
    stage_b_.assign(grid.size(), 0.0);
}

void RadialFlowSolver::evaluate(std::span<const double> a, std::span<const double> b, double t,
                                std::span<double> da, std::span<double> db) const {
    const int m = grid_.intervals();
    const double h = grid_.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const double inv_2h = 1.0 / (2 * h);
    const double k = params_.geom.angular();
    const bool curved = params_.geom.hyperbolic();

    for (int j = 0; j <= m; ++j) {
        if (!(a[j] > 0.0) || !(b[j] > 0.0)) throw PositivityLoss(j, t);
    }

    // 2 g_ij g^{kl}(h_kl - g_kl) + 2 (g_ij - h_ij) in the h-orthonormal frame.
    auto zeroth = [&](double aj, double bj, double& za, double& zb) {
        if (!curved) {
            za = zb = 0.0;
            return;
        }
        const double trace = (1.0 - aj) / aj + k * (1.0 - bj) / bj;
        za = 2.0 * aj * trace + 2.0 * (aj - 1.0);
        zb = 2.0 * bj * trace + 2.0 * (bj - 1.0);
    };

    if (params_.boundary == BoundaryMode::NoBoundaryConstantMode) {
        for (int j = 0; j <= m; ++j) {
            if (a[j] != a[0] || b[j] != a[0]) {
                throw ConfigError(
                    "constant mode requires spatially constant a = b at every node");
            }
        }
        double za = 0.0;
        double zb = 0.0;
        zeroth(a[0], b[0], za, zb);
        std::fill(da.begin(), da.end(), za);
        std::fill(db.begin(), db.end(), za);
        return;
    }

    {
        // Origin: even extension, a_{-1} = a_1. The radial and angular rows
        // share one expression so that a_0 = b_0 is preserved exactly.
        const double a2 = 2.0 * (a[1] - a[0]) * inv_h2;
        const double b2 = 2.0 * (b[1] - b[0]) * inv_h2;
        double za = 0.0;
        double zb = 0.0;
        zeroth(a[0], a[0], za, zb);
        da[0] = db[0] = (a2 + k * b2) / a[0] + za;
    }

    for (int j = 1; j < m; ++j) {
        const double aj = a[j];
        const double bj = b[j];
        const double a1 = (a[j + 1] - a[j - 1]) * inv_2h;
        const double b1 = (b[j + 1] - b[j - 1]) * inv_2h;
        const double a2 = (a[j + 1] - 2.0 * aj + a[j - 1]) * inv_h2;
        const double b2 = (b[j + 1] - 2.0 * bj + b[j - 1]) * inv_h2;
        const double kappa = log_derivative_[j];
        const double c = aj - bj;
        const double mixed = kappa * c;

        // g^{ab} h-nabla_a h-nabla_b g
        const double lap_a = a2 / aj + (k / bj) * (kappa * a1 - 2.0 * kappa * mixed);
        const double lap_b = b2 / aj + (2.0 * kappa * mixed + k * kappa * b1) / bj;

        // (1/2) g^{ab} g^{pq} (nabla g * nabla g) terms
        const double quad_a =
            0.5 * (-3.0 * a1 * a1 / (aj * aj) + k * (b1 * b1 - 4.0 * b1 * mixed) / (bj * bj));
        const double quad_b = -(b1 * b1 + 2.0 * mixed * mixed) / (aj * bj);

        double za = 0.0;
        double zb = 0.0;
        zeroth(aj, bj, za, zb);
        da[j] = lap_a + quad_a + za;
        db[j] = lap_b + quad_b + zb;
    }
    da[m] = 0.0;
    db[m] = 0.0;
}

void RadialFlowSolver::rhs(const RadialMetricState& state, MetricRate& out) const {
    if (!(state.grid == grid_)) throw ConfigError("state grid does not match solver grid");
    out.a.resize(grid_.size());
    out.b.resize(grid_.size());
    evaluate(state.a, state.b, state.t, out.a, out.b);
}

void RadialFlowSolver::check_closeness(const RadialMetricState& state) const {
    const double eps = state.closeness();
    if (!(eps <= params_.eps_abort)) throw ClosenessAbort(eps, params_.eps_abort, state.t);
}

void RadialFlowSolver::advance(RadialMetricState& state, double dt) {
    if (!(state.grid == grid_)) throw ConfigError("state grid does not match solver grid");
    const std::size_t size = grid_.size();
    const double t = state.t;
    auto stage = [&](const MetricRate& k, double factor) {
        for (std::size_t j = 0; j < size; ++j) {
            stage_a_[j] = state.a[j] + factor * k.a[j];
            stage_b_[j] = state.b[j] + factor * k.b[j];
        }
    };

    evaluate(state.a, state.b, t, k1_.a, k1_.b);
    stage(k1_, 0.5 * dt);
    evaluate(stage_a_, stage_b_, t + 0.5 * dt, k2_.a, k2_.b);
    stage(k2_, 0.5 * dt);
    evaluate(stage_a_, stage_b_, t + 0.5 * dt, k3_.a, k3_.b);
    stage(k3_, dt);
    evaluate(stage_a_, stage_b_, t + dt, k4_.a, k4_.b);

    const double w = dt / 6.0;
    for (std::size_t j = 0; j < size; ++j) {
        state.a[j] += w * (k1_.a[j] + 2.0 * k2_.a[j] + 2.0 * k3_.a[j] + k4_.a[j]);
        state.b[j] += w * (k1_.b[j] + 2.0 * k2_.b[j] + 2.0 * k3_.b[j] + k4_.b[j]);
    }
    if (params_.boundary == BoundaryMode::Dirichlet) {
        state.a.back() = 1.0;
        state.b.back() = 1.0;
        state.b.front() = state.a.front();
    }
    state.t = t + dt;

    for (std::size_t j = 0; j < size; ++j) {
        if (!(state.a[j] > 0.0) || !(state.b[j] > 0.0)) {
            throw PositivityLoss(static_cast<int>(j), state.t);
        }
    }
    check_closeness(state);
}

MetricRate rhs(const RadialMetricState& state, const FlowParams& params) {
    RadialFlowSolver solver(state.grid, params);
    MetricRate out;
    solver.rhs(state, out);
    return out;
}

double time_step(const RadialMetricState& state, const FlowParams& params) {
    if (params.fixed_dt > 0.0) return params.fixed_dt;
    const double lo = std::min(*std::min_element(state.a.begin(), state.a.end()),
                               *std::min_element(state.b.begin(), state.b.end()));
    const double h = state.grid.spacing();
    return params.cfl * h * h * lo;
}

RadialMetricState step(const RadialMetricState& state, const FlowParams& params, double dt) {
    RadialFlowSolver solver(state.grid, params);
    RadialMetricState next = state;
    solver.advance(next, dt);
    return next;
}

RadialMetricState step(const RadialMetricState& state, const FlowParams& params) {
    return step(state, params, time_step(state, params));
}

EvolveResult evolve(RadialMetricState initial, const FlowParams& params, const StateSink& sink) {
    RadialFlowSolver solver(initial.grid, params);
    EvolveResult result{std::move(initial), 0, nullptr, {}};
    auto& state = result.final_state;
    const double t_end = params.t_end;
    if (sink) sink(state);

    bool recorded_last = true;
    try {
        while (state.t < t_end) {
            double dt = time_step(state, params);
            // Land exactly on t_end rather than overshooting.
            const bool last = t_end - state.t <= dt * (1.0 + 1e-9);
            if (last) dt = t_end - state.t;
            solver.advance(state, dt);
            if (last) state.t = t_end;
            ++result.steps;
            recorded_last = false;
            if (result.steps % static_cast<std::size_t>(params.record_every) == 0 || last) {
                if (sink) sink(state);
                recorded_last = true;
            }
        }
    } catch (const NumericalError& e) {
        result.failure = std::current_exception();
        result.failure_message = e.what();
        if (sink && !recorded_last) sink(state);
    }
    return result;
}

double zeroth_order_term(std::span<const double> lambda) {
    double sq = 0.0;
    double weighted = 0.0;
    double inverse = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double l = lambda[i];
        if (!(l > 0.0)) {
            throw DomainError("zeroth_order_term: eigenvalue " + std::to_string(i) +
                              " is not positive");
        }
        sq += (l - 1.0) * (l - 1.0);
        weighted += l * (l - 1.0);
        inverse += 1.0 - 1.0 / l;
    }
    return 4.0 * sq - 4.0 * weighted * inverse;
}

}  // namespace hypstab
