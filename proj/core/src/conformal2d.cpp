#include "hypstab/conformal2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

const BackgroundGeometry kDisk{Background::Hyperbolic, 2};

void check_finite(std::span<const double> u, double t) {
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!std::isfinite(u[j])) {
            throw NumericalError("conformal exponent not finite at node " + std::to_string(j) +
                                 ", t = " + std::to_string(t));
        }
    }
}

double source(double u, ConformalMode mode) {
    const double e = std::exp(-u);
    return mode == ConformalMode::Rescaled ? 2.0 * (e - 1.0) : 2.0 * e;
}

}  // namespace

ConformalState::ConformalState(RadialGrid grid_, std::vector<double> u_, double t_,
                               ConformalMode mode_)
    : grid(grid_), u(std::move(u_)), t(t_), mode(mode_) {
    if (u.size() != grid.size()) {
        throw ConfigError("conformal profile must have one value per grid node");
    }
}

void ConformalParams::validate() const {
    if (!(cfl > 0.0 && cfl <= 0.5)) {
        throw ConfigError("cfl must lie in (0, 0.5], got " + std::to_string(cfl));
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw ConfigError("t_end must be finite and nonnegative");
    }
    if (record_every < 1) throw ConfigError("record_every must be at least 1");
    if (fixed_dt < 0.0) throw ConfigError("fixed_dt must be nonnegative");
}

double barrier(double amplitude, double t) {
    if (!(amplitude > -1.0)) {
        throw DomainError("barrier amplitude must exceed -1, got " + std::to_string(amplitude));
    }
    if (!(t >= 0.0)) throw DomainError("barrier time must be nonnegative");
    return std::log1p(amplitude * std::exp(-2.0 * t));
}

ConformalSolver::ConformalSolver(const RadialGrid& grid, ConformalParams params)
    : grid_(grid), params_(params), log_derivative_(grid.size(), 0.0) {
    params_.validate();
    for (int j = 1; j <= grid.intervals(); ++j) {
        log_derivative_[j] = warp_log_derivative(kDisk, grid.node(j));
    }
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &stage_}) v->assign(grid.size(), 0.0);
}

void ConformalSolver::rhs(std::span<const double> u, ConformalMode mode,
                          std::span<double> out) const {
    const int m = grid_.intervals();
    const double h = grid_.spacing();
    if (params_.boundary == BoundaryMode::NoBoundaryConstantMode) {
        for (int j = 0; j <= m; ++j) {
            if (u[j] != u[0]) throw ConfigError("constant mode requires spatially constant u");
        }
        std::fill(out.begin(), out.end(), source(u[0], mode));
        return;
    }
    const double inv_h2 = 1.0 / (h * h);
    // Delta_h u(0) = 2 u''(0) with u''(0) from the even ghost node.
    out[0] = std::exp(-u[0]) * 4.0 * (u[1] - u[0]) * inv_h2 + source(u[0], mode);
    for (int j = 1; j < m; ++j) {
        const double d1 = (u[j + 1] - u[j - 1]) / (2 * h);
        const double d2 = (u[j + 1] - 2 * u[j] + u[j - 1]) * inv_h2;
        out[j] = std::exp(-u[j]) * (d2 + log_derivative_[j] * d1) + source(u[j], mode);
    }
    out[m] = 0.0;
}

void ConformalSolver::advance(ConformalState& state, double dt) {
    if (!(state.grid == grid_)) throw ConfigError("state grid does not match solver grid");
    const std::size_t size = grid_.size();
    auto stage = [&](const std::vector<double>& k, double factor) {
        for (std::size_t j = 0; j < size; ++j) stage_[j] = state.u[j] + factor * k[j];
    };
    rhs(state.u, state.mode, k1_);
    stage(k1_, 0.5 * dt);
    rhs(stage_, state.mode, k2_);
    stage(k2_, 0.5 * dt);
    rhs(stage_, state.mode, k3_);
    stage(k3_, dt);
    rhs(stage_, state.mode, k4_);
    const double w = dt / 6.0;
    for (std::size_t j = 0; j < size; ++j) {
        state.u[j] += w * (k1_[j] + 2.0 * k2_[j] + 2.0 * k3_[j] + k4_[j]);
    }
    state.t += dt;
    check_finite(state.u, state.t);
}

std::vector<double> rhs_conformal(const ConformalState& state, BoundaryMode boundary) {
    ConformalParams params;
    params.boundary = boundary;
    ConformalSolver solver(state.grid, params);
    std::vector<double> out(state.grid.size());
    solver.rhs(state.u, state.mode, out);
    return out;
}

std::vector<double> rhs_conformal_disk(std::span<const double> u, double s_max,
                                       ConformalMode mode) {
    if (!(s_max > 0.0 && s_max < 1.0)) throw DomainError("disk radius must lie in (0, 1)");
    if (u.size() < 9) throw ConfigError("disk grid needs at least 8 intervals");
    const int m = static_cast<int>(u.size()) - 1;
    const double h = s_max / m;
    std::vector<double> out(u.size(), 0.0);
    auto conformal_factor = [](double s) {  // e^{-f}
        const double q = 1.0 - s * s;
        return 0.25 * q * q;
    };
    out[0] = std::exp(-u[0]) * conformal_factor(0.0) * 4.0 * (u[1] - u[0]) / (h * h) +
             source(u[0], mode);
    for (int j = 1; j < m; ++j) {
        const double s = j * h;
        const double d1 = (u[j + 1] - u[j - 1]) / (2 * h);
        const double d2 = (u[j + 1] - 2 * u[j] + u[j - 1]) / (h * h);
        out[j] = std::exp(-u[j]) * conformal_factor(s) * (d2 + d1 / s) + source(u[j], mode);
    }
    return out;
}

double time_step(const ConformalState& state, const ConformalParams& params) {
    if (params.fixed_dt > 0.0) return params.fixed_dt;
    const double lo = *std::min_element(state.u.begin(), state.u.end());
    const double h = state.grid.spacing();
    return params.cfl * h * h * std::exp(lo);
}

ConformalState step(const ConformalState& state, const ConformalParams& params, double dt) {
    ConformalSolver solver(state.grid, params);
    ConformalState next = state;
    solver.advance(next, dt);
    return next;
}

ConformalState step(const ConformalState& state, const ConformalParams& params) {
    return step(state, params, time_step(state, params));
}

ConformalEvolveResult evolve(ConformalState initial, const ConformalParams& params,
                             const ConformalSink& sink) {
    ConformalSolver solver(initial.grid, params);
    ConformalEvolveResult result{std::move(initial), 0, nullptr, {}};
    auto& state = result.final_state;
    const double t_end = params.t_end;
    if (sink) sink(state);
    bool recorded_last = true;
    try {
        while (state.t < t_end) {
            double dt = time_step(state, params);
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

ConformalTrajectory::ConformalTrajectory(RadialGrid grid, ConformalMode mode,
                                         BoundaryMode boundary)
    : grid_(grid), mode_(mode), boundary_(boundary) {}

void ConformalTrajectory::append(const ConformalState& state) {
    if (!(state.grid == grid_) || state.mode != mode_) {
        throw ConfigError("frame does not match trajectory grid or mode");
    }
    if (!frames_.empty() && !(state.t > frames_.back().t)) {
        throw ConfigError("trajectory frames must have strictly increasing times");
    }
    frames_.push_back({state.t, state.u, rhs_conformal(state, boundary_)});
}

double ConformalTrajectory::start_time() const {
    if (frames_.empty()) throw RangeError("empty trajectory");
    return frames_.front().t;
}

double ConformalTrajectory::end_time() const {
    if (frames_.empty()) throw RangeError("empty trajectory");
    return frames_.back().t;
}

void ConformalTrajectory::sample(double t, std::vector<double>& u,
                                 std::vector<double>& rate) const {
    const double span = end_time() - start_time();
    const double slack = 1e-12 * std::max(1.0, span);
    if (t < start_time() - slack || t > end_time() + slack) {
        throw RangeError("time " + std::to_string(t) + " outside recorded range [" +
                         std::to_string(start_time()) + ", " + std::to_string(end_time()) + "]");
    }
    u.resize(grid_.size());
    rate.resize(grid_.size());
    if (frames_.size() == 1) {
        u = frames_.front().u;
        rate = frames_.front().rate;
        return;
    }
    auto upper = std::upper_bound(frames_.begin(), frames_.end(), t,
                                  [](double value, const Frame& f) { return value < f.t; });
    std::size_t hi = std::clamp<std::size_t>(upper - frames_.begin(), 1, frames_.size() - 1);
    const Frame& f0 = frames_[hi - 1];
    const Frame& f1 = frames_[hi];
    for (std::size_t j = 0; j < grid_.size(); ++j) {
        const HermiteSegment seg{f0.t, f1.t, f0.u[j], f1.u[j], f0.rate[j], f1.rate[j]};
        u[j] = seg.value(t);
        rate[j] = seg.derivative(t);
    }
}

ConformalTrajectory record_trajectory(const ConformalState& initial,
                                      const ConformalParams& params) {
    ConformalTrajectory trajectory(initial.grid, initial.mode, params.boundary);
    auto result =
        evolve(initial, params, [&](const ConformalState& s) { trajectory.append(s); });
    if (!result.completed()) std::rethrow_exception(result.failure);
    return trajectory;
}

ComparisonResult comparison_check(const ConformalState& lo, const ConformalState& hi,
                                  const ComparisonSetup& setup) {
    if (!(lo.grid == hi.grid)) throw ConfigError("comparison requires identical grids");
    if (lo.mode != hi.mode) throw ConfigError("comparison requires identical modes");
    if (setup.record_every < 1) throw ConfigError("record_every must be at least 1");

    ComparisonResult result;
    auto record = [&](const ConformalState& l, const ConformalState& u) {
        double worst = 0.0;
        for (std::size_t j = 0; j < l.u.size(); ++j) worst = std::max(worst, l.u[j] - u.u[j]);
        result.max_violation = std::max(result.max_violation, worst);
        if (worst > setup.tol) result.ordered = false;
        ++result.records;
    };

    ConformalParams lo_params{setup.lo_boundary, setup.cfl, setup.t_end, setup.record_every,
                              setup.fixed_dt};
    ConformalParams hi_params{setup.hi_boundary, setup.cfl, setup.t_end, setup.record_every,
                              setup.fixed_dt};
    ConformalSolver lo_solver(lo.grid, lo_params);
    ConformalSolver hi_solver(hi.grid, hi_params);
    ConformalState l = lo;
    ConformalState u = hi;
    l.t = u.t = 0.0;
    record(l, u);
    if (!result.ordered) throw ConfigError("comparison requires lo <= hi initially");

    std::size_t steps = 0;
    while (l.t < setup.t_end) {
        double dt = std::min(time_step(l, lo_params), time_step(u, hi_params));
        const bool last = setup.t_end - l.t <= dt * (1.0 + 1e-9);
        if (last) dt = setup.t_end - l.t;
        lo_solver.advance(l, dt);
        hi_solver.advance(u, dt);
        ++steps;
        if (steps % static_cast<std::size_t>(setup.record_every) == 0 || last) record(l, u);
        if (last) break;
    }
    return result;
}

double gamma_shift_residual(const ConformalTrajectory& trajectory, double gamma, double t_end,
                            int samples) {
    if (trajectory.mode() != ConformalMode::Unrescaled) {
        throw ConfigError("gamma_shift_residual needs an unrescaled trajectory");
    }
    if (samples < 2) throw ConfigError("gamma_shift_residual needs at least two samples");
    const double t0 = trajectory.start_time();
    if (t_end < 0.0) t_end = trajectory.end_time();
    const double dilation = std::exp(-gamma);
    if (t0 + dilation * (t_end - t0) > trajectory.end_time() * (1.0 + 1e-12)) {
        throw RangeError("e^{-gamma} t_end exceeds the recorded range");
    }

    ConformalParams params;
    params.boundary = trajectory.boundary();
    ConformalSolver solver(trajectory.grid(), params);
    const std::size_t size = trajectory.grid().size();
    const std::size_t interior =
        trajectory.boundary() == BoundaryMode::Dirichlet ? size - 1 : size;
    std::vector<double> u, rate, shifted(size), operator_value(size);

    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = t0 + (t_end - t0) * i / (samples - 1);
        trajectory.sample(t0 + dilation * (t - t0), u, rate);
        for (std::size_t j = 0; j < size; ++j) shifted[j] = u[j] + gamma;
        solver.rhs(shifted, ConformalMode::Unrescaled, operator_value);
        for (std::size_t j = 0; j < interior; ++j) {
            worst = std::max(worst, std::abs(dilation * rate[j] - operator_value[j]));
        }
    }
    return worst;
}

}  // namespace hypstab
