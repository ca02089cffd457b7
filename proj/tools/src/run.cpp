#include "hypstab/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "hypstab/cli/report.hpp"
#include "hypstab/conformal2d.hpp"
#include "hypstab/diagnostics.hpp"
#include "hypstab/gauge.hpp"
#include "hypstab/spectral.hpp"
#include "hypstab/suite/gauge_study.hpp"
#include "hypstab/suite/properties.hpp"

namespace hypstab::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kClosedFormTol = 1e-6;
constexpr double kNonincreasingTol = 1e-10;
constexpr double kBarrierTol = 1e-8;
constexpr double kTimeMapTol = 1e-10;
constexpr double kRayleighTol = 1e-10;

BackgroundGeometry geometry_of(const ExperimentConfig& c) { return {c.background, c.n}; }

void describe_run(Summary& s, const ExperimentConfig& c, int dimension) {
    s.text("command", command_name(c.command));
    s.integer("n", dimension);
    s.text("background", c.background == Background::Hyperbolic ? "hyperbolic" : "euclidean");
    s.number("R", c.radius);
    s.integer("m", c.intervals);
    s.number("drho", c.radius / c.intervals);
}

void describe_time_stepping(Summary& s, const ExperimentConfig& c) {
    s.text("boundary", c.boundary == BoundaryMode::Dirichlet ? "dirichlet" : "constant");
    s.text("profile", profile_name(c.profile));
    s.number("amplitude", c.amplitude);
    if (c.profile == ProfileFamily::Anisotropic) s.number("amplitude_b", c.amplitude_b);
    s.number("cfl", c.cfl);
    if (c.dt > 0.0) s.number("dt", c.dt);
    s.number("t_end", c.t_end);
    s.integer("record_every", c.record_every);
    s.number("delta", c.delta);
    s.number("p", c.p);
}

RadialMetricState initial_metric(const ExperimentConfig& c, const RadialGrid& grid) {
    switch (c.profile) {
        case ProfileFamily::Bump: return damped_bump(grid, c.amplitude);
        case ProfileFamily::Anisotropic: return anisotropic_bump(grid, c.amplitude, c.amplitude_b);
        case ProfileFamily::Tent:
            return tent_profile(grid, c.amplitude, c.tent_center, c.tent_half_width);
        case ProfileFamily::Constant: return constant_metric(grid, 1.0 + c.amplitude);
    }
    throw ConfigError("unknown profile");
}

ConformalState initial_conformal(const ExperimentConfig& c, const RadialGrid& grid) {
    std::vector<double> u(grid.size());
    if (c.profile == ProfileFamily::Constant) {
        u.assign(grid.size(), std::log1p(c.amplitude));
    } else if (c.profile == ProfileFamily::Bump) {
        const auto bump = damped_bump(grid, c.amplitude);
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = bump.a[j] - 1.0;
    } else {
        throw ConfigError("conformal runs accept profile = bump or constant");
    }
    return {grid, std::move(u), 0.0, c.mode};
}

FlowParams flow_params(const ExperimentConfig& c) {
    FlowParams p;
    p.geom = geometry_of(c);
    p.boundary = c.boundary;
    p.cfl = c.cfl;
    p.t_end = c.t_end;
    p.record_every = c.record_every;
    p.eps_abort = c.eps_abort;
    p.fixed_dt = c.dt;
    p.validate();
    return p;
}

struct FlowRun {
    DecaySeries series;
    std::vector<double> origin_a;  // a_0 at every record
    std::vector<RadialMetricState> frames;
    EvolveResult result;
};

FlowRun run_flow(const ExperimentConfig& c, const fs::path& dir, bool keep_frames) {
    if (c.n < 3) throw ConfigError("radial flows need n >= 3");
    const RadialGrid grid(c.radius, c.intervals);
    const auto params = flow_params(c);
    const SeriesOptions options{c.delta, c.p};
    options.validate();
    SeriesCsv csv(dir / c.csv);
    FlowRun run{{}, {}, {}, EvolveResult{RadialMetricState::background(grid), 0, nullptr, {}}};
    run.result = evolve(initial_metric(c, grid), params, [&](const RadialMetricState& state) {
        const auto record = measure(state, params.geom, options);
        run.series.append(record);
        run.origin_a.push_back(state.a.front());
        csv.row(record);
        if (keep_frames) run.frames.push_back(state);
    });
    return run;
}

void describe_outcome(Summary& s, std::size_t steps, std::size_t records, bool completed,
                      const std::string& failure) {
    s.integer("steps", static_cast<long long>(steps));
    s.integer("records", static_cast<long long>(records));
    s.text("completed", completed ? "yes" : "no");
    if (!completed) s.text("failure", failure);
}

std::optional<double> report_fit(Summary& s, const std::string& key, const DecaySeries& series,
                                 SeriesField field) {
    try {
        const auto window = floor_limited_window(series, field, kDecayNoiseFloor);
        const auto fit = fit_decay_rate(series, field, window);
        s.number(key + "_rate", fit.rate);
        s.number(key + "_window_lo", fit.window.lo);
        s.number(key + "_window_hi", fit.window.hi);
        s.number(key + "_rms_residual", fit.rms_residual);
        return fit.rate;
    } catch (const FitError& e) {
        s.text(key + "_rate", "unavailable");
        s.text(key + "_fit_note", e.what());
        return std::nullopt;
    }
}

int verdict(Summary& s, bool completed, bool pass) {
    if (!completed) {
        s.text("result", "numerical-failure");
        return kExitNumericalFailure;
    }
    s.flag("result", pass);
    return pass ? kExitPass : kExitCheckFailure;
}

int radial_flow_command(const ExperimentConfig& c, const fs::path& dir, Summary& s) {
    const auto geom = geometry_of(c);
    describe_run(s, c, c.n);
    describe_time_stepping(s, c);
    s.number("alpha", alpha_rate(c.n));
    s.number("beta", beta_rate(c.n));
    s.number("constant_mode_rate", geom.hyperbolic() ? 2.0 * (c.n - 1) : 0.0);
    if (geom.hyperbolic()) s.number("mckean_bound", mckean_bound(c.n));

    auto run = run_flow(c, dir, false);
    describe_outcome(s, run.result.steps, run.series.size(), run.result.completed(),
                     run.result.failure_message);
    const auto sup_rate = report_fit(s, "sup_norm", run.series, SeriesField::SupNorm);
    report_fit(s, "l2", run.series, SeriesField::L2);

    bool pass = true;
    if (c.boundary == BoundaryMode::NoBoundaryConstantMode) {
        const double lambda0 = 1.0 + c.amplitude;
        const double rate = geom.hyperbolic() ? 2.0 * (c.n - 1) : 0.0;
        double worst = 0.0;
        for (std::size_t i = 0; i < run.series.size(); ++i) {
            const double exact = 1.0 + (lambda0 - 1.0) * std::exp(-rate * run.series.records[i].t);
            worst = std::max(worst, std::abs(run.origin_a[i] - exact) / exact);
        }
        s.number("closed_form_max_relative_error", worst);
        s.flag("check_closed_form", worst <= kClosedFormTol);
        pass = worst <= kClosedFormTol;
    } else if (geom.hyperbolic()) {
        const auto signal = truncate_at_floor(run.series, SeriesField::SupNorm, kDecayNoiseFloor);
        s.number("monotonicity_cut_time", signal.records.back().t);
        const auto nonincreasing =
            monotonicity_check(signal, SeriesField::L2, 0.0, kNonincreasingTol);
        s.flag("check_l2_nonincreasing", nonincreasing.pass);
        pass = nonincreasing.pass;
        if (c.n >= 4) {
            const auto mono = monotonicity_check(signal, SeriesField::L2, alpha_rate(c.n), c.tol);
            s.number("alpha_worst_ratio", mono.worst_ratio);
            s.number("tol", c.tol);
            s.flag("check_l2_decay_alpha", mono.pass);
            const bool beta_ok = sup_rate && *sup_rate >= beta_rate(c.n);
            s.flag("check_sup_rate_beta", beta_ok);
            pass = pass && mono.pass && beta_ok;
        } else {
            s.text("decay_claim", "none for n = 3 (alpha < 0)");
        }
    } else {
        const auto signal = truncate_at_floor(run.series, SeriesField::SupNorm, kDecayNoiseFloor);
        s.number("monotonicity_cut_time", signal.records.back().t);
        const auto mono =
            monotonicity_check(signal, SeriesField::PTruncated, 0.0, kNonincreasingTol);
        s.number("p_truncated_worst_ratio", mono.worst_ratio);
        s.flag("check_p_truncated_nonincreasing", mono.pass);
        pass = mono.pass;
    }
    s.number("gradient_monitor", gradient_blowup_monitor(run.series));
    return verdict(s, run.result.completed(), pass);
}

int conformal_command(const ExperimentConfig& c, const fs::path& dir, Summary& s) {
    if (c.background != Background::Hyperbolic) {
        throw ConfigError("conformal runs live on the hyperbolic disk (background = hyperbolic)");
    }
    describe_run(s, c, 2);
    describe_time_stepping(s, c);
    s.text("mode", c.mode == ConformalMode::Rescaled ? "rescaled" : "unrescaled");

    const RadialGrid grid(c.radius, c.intervals);
    const BackgroundGeometry geom(Background::Hyperbolic, 2);
    ConformalParams params;
    params.boundary = c.boundary;
    params.cfl = c.cfl;
    params.t_end = c.t_end;
    params.record_every = c.record_every;
    params.fixed_dt = c.dt;
    params.validate();
    const SeriesOptions options{c.delta, c.p};
    options.validate();

    const auto initial = initial_conformal(c, grid);
    double sup0 = 0.0;
    for (double v : initial.u) sup0 = std::max(sup0, std::abs(v));
    const double u0 = initial.u.front();

    SeriesCsv csv(dir / c.csv);
    DecaySeries series;
    ConformalTrajectory trajectory(grid, c.mode, c.boundary);
    double barrier_violation = 0.0;
    double closed_form_error = 0.0;
    const auto result = evolve(initial, params, [&](const ConformalState& state) {
        const auto record = measure(as_radial_metric(state), geom, options);
        series.append(record);
        csv.row(record);
        trajectory.append(state);
        if (c.mode == ConformalMode::Rescaled && c.boundary == BoundaryMode::Dirichlet) {
            const double hi = barrier(std::expm1(sup0), state.t);
            const double lo = barrier(std::expm1(-sup0), state.t);
            for (double v : state.u) barrier_violation = std::max({barrier_violation, v - hi, lo - v});
        }
        if (c.boundary == BoundaryMode::NoBoundaryConstantMode) {
            const double exact = c.mode == ConformalMode::Rescaled
                                     ? std::exp(barrier(std::expm1(u0), state.t))
                                     : std::exp(u0) + 2.0 * state.t;
            closed_form_error =
                std::max(closed_form_error, std::abs(std::exp(state.u.front()) - exact));
        }
    });
    describe_outcome(s, result.steps, series.size(), result.completed(), result.failure_message);
    report_fit(s, "sup_norm", series, SeriesField::SupNorm);

    bool pass = true;
    if (c.boundary == BoundaryMode::NoBoundaryConstantMode) {
        s.number("closed_form_max_error", closed_form_error);
        pass = closed_form_error <= kBarrierTol;
        s.flag("check_closed_form", pass);
    } else if (c.mode == ConformalMode::Rescaled) {
        s.number("barrier_sandwich_violation", barrier_violation);
        pass = barrier_violation <= kBarrierTol;
        s.flag("check_barrier_sandwich", pass);
    } else if (result.completed() && trajectory.frames().size() >= 2) {
        s.number("gamma", c.gamma);
        s.number("gamma_shift_residual", gamma_shift_residual(trajectory, c.gamma));
        s.number("base_residual", gamma_shift_residual(trajectory, 0.0));
    }
    return verdict(s, result.completed(), pass);
}

int eigen_command(const ExperimentConfig& c, Summary& s) {
    const auto geom = geometry_of(c);
    describe_run(s, c, c.n);
    const RadialEigenProblem problem{geom, c.radius, c.intervals};
    problem.validate();
    const auto estimate = first_dirichlet_eigenvalue(problem);
    const auto pair = discrete_first_eigenpair(problem);
    const double quotient = rayleigh_quotient(problem, pair.eigenfunction);
    s.number("sigma1", estimate.sigma1);
    s.number("sigma1_coarse", estimate.coarse);
    s.number("sigma1_fine", estimate.fine);
    s.number("error_estimate", estimate.error_estimate);
    s.integer("iterations", pair.iterations);
    const double rayleigh_error = std::abs(quotient - pair.eigenvalue) / pair.eigenvalue;
    s.number("rayleigh_relative_error", rayleigh_error);
    bool pass = rayleigh_error <= kRayleighTol;
    s.flag("check_rayleigh", pass);
    if (geom.hyperbolic()) {
        s.number("mckean_bound", mckean_bound(c.n));
        s.number("mckean_gap", estimate.sigma1 - mckean_bound(c.n));
        const bool bound = estimate.sigma1 > mckean_bound(c.n);
        s.flag("check_mckean", bound);
        pass = pass && bound;
    }
    return verdict(s, true, pass);
}

int gauge_command(const ExperimentConfig& c, const fs::path& dir, Summary& s) {
    const auto geom = geometry_of(c);
    describe_run(s, c, c.n);
    describe_time_stepping(s, c);
    auto run = run_flow(c, dir, true);
    describe_outcome(s, run.result.steps, run.series.size(), run.result.completed(),
                     run.result.failure_message);
    if (!run.result.completed()) return verdict(s, false, false);
    if (run.frames.size() < 3) throw ConfigError("gauge-check needs at least three records");

    const double rho_lo = std::min(0.5, 0.25 * c.radius);
    const double rho_hi = 0.5 * c.radius;
    const auto study = suite::study_gauge(run.frames, geom, rho_lo, rho_hi);
    s.number("defect_window_lo", rho_lo);
    s.number("defect_window_hi", rho_hi);
    s.number("defect_sign_minus", study.defect_minus);
    s.number("defect_sign_plus", study.defect_plus);
    if (!study.failure_minus.empty()) s.text("failure_sign_minus", study.failure_minus);
    if (!study.failure_plus.empty()) s.text("failure_sign_plus", study.failure_plus);
    s.integer("selected_sign", study.selected_sign);
    const bool separated = study.defect_minus != study.defect_plus;
    s.flag("check_sign_separated", separated);
    bool pass = separated && !study.maps.empty();
    if (!study.maps.empty()) {
        s.number("max_displacement", study.max_displacement);
        if (c.t_end >= 3.0) {
            const double early = suite::map_increment(study.maps, 1.0, 2.0);
            const double late = suite::map_increment(study.maps, c.t_end - 1.0, c.t_end);
            s.number("map_increment_early", early);
            s.number("map_increment_late", late);
            const bool contracts = late <= 0.5 * early;
            s.flag("check_map_contraction", contracts);
            pass = pass && contracts;
        } else {
            s.text("map_contraction", "skipped (needs t_end >= 3)");
        }
    }
    const double cross = suite::conformal_time_map_error(0.5, 20, 3.0, 1e-3);
    s.number("time_map_cross_check_error", cross);
    s.flag("check_time_map_cross", cross <= kTimeMapTol);
    pass = pass && cross <= kTimeMapTol;
    return verdict(s, true, pass);
}

int verify_command(const ExperimentConfig& c, Summary& s) {
    s.text("command", "verify");
    s.text("seed", std::to_string(c.seed));
    bool pass = true;
    for (const auto& p : suite::run_all_properties(c.seed)) {
        s.integer(p.key + "_cases", p.cases);
        s.number(p.key + "_measured", p.measured);
        s.number(p.key + "_threshold", p.threshold);
        s.flag(p.key, p.pass);
        pass = pass && p.pass;
    }
    return verdict(s, true, pass);
}

}  // namespace

int run(const ExperimentConfig& config, const RunOptions& options, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    Summary summary;
    int code = kExitPass;
    try {
        fs::create_directories(options.out_dir);
        switch (config.command) {
            case Command::RadialFlow:
                code = radial_flow_command(config, options.out_dir, summary);
                break;
            case Command::Conformal:
                code = conformal_command(config, options.out_dir, summary);
                break;
            case Command::Eigen: code = eigen_command(config, summary); break;
            case Command::GaugeCheck:
                code = gauge_command(config, options.out_dir, summary);
                break;
            case Command::Verify: code = verify_command(config, summary); break;
        }
    } catch (const NumericalError& e) {
        summary.text("failure", e.what());
        summary.text("result", "numerical-failure");
        code = kExitNumericalFailure;
    } catch (const std::logic_error& e) {
        // ConfigError, DomainError and RangeError: the requested run is invalid.
        log << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const fs::filesystem_error& e) {
        log << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    }

    const std::string text = summary.render();
    std::ofstream(options.out_dir / config.summary, std::ios::binary) << text;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream(options.out_dir / "timing.txt", std::ios::binary)
        << "wall_clock_seconds = " << format_full(seconds) << '\n';
    if (!options.quiet) log << text << "wall_clock_seconds = " << seconds << '\n';
    return code;
}

}  // namespace hypstab::cli
