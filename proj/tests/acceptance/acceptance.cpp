// Acceptance criteria, one PASS/FAIL line each. `--only N` runs a single one.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hypstab/conformal2d.hpp"
#include "hypstab/diagnostics.hpp"
#include "hypstab/errors.hpp"
#include "hypstab/gauge.hpp"
#include "hypstab/radial_flow.hpp"
#include "hypstab/spectral.hpp"
#include "hypstab/suite/gauge_study.hpp"
#include "hypstab/suite/properties.hpp"
#include "hypstab/suite/shooting.hpp"

using namespace hypstab;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int number;
    std::string name;
    double time_limit;  // seconds; 0 when none is pinned
    std::function<Verdict()> check;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// Criterion-1 run: n = 4, hyperbolic, R = 6, m = 600, 0.01 bump, t_end = 5.
RecordedRun bump_run(Background background, bool keep_frames) {
    FlowParams params;
    params.geom = BackgroundGeometry(background, 4);
    params.t_end = 5.0;
    params.record_every = 1000;
    SeriesOptions options;
    options.delta = 1e-6;
    options.p = 2.0;
    return run_recorded(damped_bump(RadialGrid(6.0, 600), 0.01), params, options, keep_frames);
}

Verdict l2_decay() {
    const auto run = bump_run(Background::Hyperbolic, false);
    if (!run.completed()) return {false, "run failed: " + run.failure_message};
    const auto mono = monotonicity_check(run.series, SeriesField::L2, alpha_rate(4), 0.05);
    return {mono.pass, fmt("alpha = %.4g, tol = 0.05, worst ratio %.6f over %zu records",
                           alpha_rate(4), mono.worst_ratio, run.series.size())};
}

Verdict sup_rate() {
    const auto run = bump_run(Background::Hyperbolic, false);
    if (!run.completed()) return {false, "run failed: " + run.failure_message};
    const auto window = floor_limited_window(run.series, SeriesField::SupNorm, kDecayNoiseFloor);
    const auto fit = fit_decay_rate(run.series, SeriesField::SupNorm, window);
    const double beta = beta_rate(4);
    return {fit.rate >= beta, fmt("fitted rate %.4f on [%.3g, %.3g], beta = %.6f", fit.rate,
                                  window.lo, window.hi, beta)};
}

Verdict constant_mode() {
    FlowParams params;
    params.geom = BackgroundGeometry(Background::Hyperbolic, 4);
    params.boundary = BoundaryMode::NoBoundaryConstantMode;
    params.fixed_dt = 1e-3;
    params.t_end = 2.0;
    params.record_every = 500;
    double worst = 0.0;
    int checked = 0;
    const auto result = evolve(constant_metric(RadialGrid(1.0, 8), 1.05), params,
                               [&](const RadialMetricState& s) {
                                   for (double t : {0.5, 1.0, 2.0}) {
                                       if (std::abs(s.t - t) > 1e-9) continue;
                                       const double exact = 1 + 0.05 * std::exp(-6 * t);
                                       worst = std::max(worst, std::abs(s.a[0] / exact - 1));
                                       ++checked;
                                   }
                               });
    const bool pass = result.completed() && checked == 3 && worst <= 1e-6;
    return {pass, fmt("max relative error %.3g at %d times, dt = 1e-3", worst, checked)};
}

Verdict conformal_barrier() {
    ConformalParams params;
    params.boundary = BoundaryMode::NoBoundaryConstantMode;
    params.fixed_dt = 1e-4;
    params.t_end = 1.0;
    const RadialGrid grid(1.0, 8);
    const auto result =
        evolve(ConformalState(grid, std::vector<double>(grid.size(), std::log(1.5))), params,
               nullptr);
    if (!result.completed()) return {false, "run failed: " + result.failure_message};
    const double err = std::abs(result.final_state.u[0] - barrier(0.5, 1.0));
    return {err <= 1e-8, fmt("|u(1) - barrier(0.5, 1)| = %.3g", err)};
}

Verdict time_map_cross_check() {
    const double err = suite::conformal_time_map_error(0.5, 20, 3.0, 1e-4);
    return {err <= 1e-10, fmt("max |e^u - (1.5 + 2t)| = %.3g at 20 times in [0, 3]", err)};
}

Verdict mckean() {
    const BackgroundGeometry hyp(Background::Hyperbolic, 2);
    const BackgroundGeometry flat(Background::Euclidean, 2);
    const int m = 512;
    bool above = true;
    double agreement = 0.0;
    double gap10 = 0.0;
    for (double R : {2.0, 5.0, 10.0}) {
        const double sigma = first_dirichlet_eigenvalue({hyp, R, m}).sigma1;
        above = above && sigma > mckean_bound(2);
        agreement = std::max(agreement,
                             std::abs(sigma - suite::shooting_first_eigenvalue(hyp, R)));
        if (R == 10.0) gap10 = sigma - mckean_bound(2);
    }
    const double disk = first_dirichlet_eigenvalue({flat, 1.0, m}).sigma1;
    agreement = std::max(agreement, std::abs(disk - suite::shooting_first_eigenvalue(flat, 1.0)));
    const double disk_err = std::abs(disk - 5.7832);
    const bool gap_ok = gap10 <= 0.05;
    const bool pass = above && gap_ok && disk_err <= 0.01 && agreement <= 1e-6;
    return {pass, fmt("sigma1 > 0.25: %s; sigma1(B_10) - 0.25 = %.4f (limit 0.05: %s); "
                      "|disk - 5.7832| = %.2g; solver vs shooting %.2g",
                      above ? "yes" : "no", gap10, gap_ok ? "ok" : "exceeded", disk_err,
                      agreement)};
}

Verdict properties() {
    bool pass = true;
    std::string detail;
    for (const auto& p : suite::run_all_properties(1)) {
        pass = pass && p.pass;
        detail += fmt("%s %s (%.3g); ", p.key.c_str(), p.pass ? "ok" : "FAILED", p.measured);
    }
    if (!detail.empty()) detail.resize(detail.size() - 2);
    return {pass, detail};
}

Verdict euclidean_truncated() {
    const auto run = bump_run(Background::Euclidean, false);
    if (!run.completed()) return {false, "run failed: " + run.failure_message};
    const auto mono = monotonicity_check(run.series, SeriesField::PTruncated, 0.0, 1e-10);
    return {mono.pass, fmt("p = 2, delta = 1e-6, worst ratio %.6f over %zu records",
                           mono.worst_ratio, run.series.size())};
}

Verdict diffeo_convergence() {
    const auto run = bump_run(Background::Hyperbolic, true);
    if (!run.completed()) return {false, "run failed: " + run.failure_message};
    const BackgroundGeometry geom(Background::Hyperbolic, 4);
    const auto study = suite::study_gauge(run.frames, geom, 0.5, 3.0);
    if (study.selected_sign == 0 || study.maps.empty()) {
        return {false, "no sign produced a monotone map: " + study.failure_minus};
    }
    bool monotone = true;
    for (const auto& map : study.maps) {
        try {
            map.check_monotone();
        } catch (const MonotonicityLoss&) {
            monotone = false;
        }
    }
    const double early = suite::map_increment(study.maps, 1.0, 2.0);
    const double late = suite::map_increment(study.maps, 4.0, 5.0);

    // Second, non-conformal run for sign stability.
    FlowParams params;
    params.geom = geom;
    params.t_end = 2.0;
    params.record_every = 200;
    const auto other =
        run_recorded(anisotropic_bump(RadialGrid(4.0, 300), 0.02, -0.01), params, {}, true);
    if (!other.completed()) return {false, "second run failed: " + other.failure_message};
    const auto second = suite::study_gauge(other.frames, geom, 0.5, 2.0);
    const bool stable = second.selected_sign == study.selected_sign;

    const bool pass = monotone && late <= 0.5 * early && stable;
    return {pass, fmt("increment [1,2] %.3g, [4,5] %.3g; monotone %s; sign %+d / %+d "
                      "(defects %.3g vs %.3g, %.3g vs %.3g)",
                      early, late, monotone ? "yes" : "no", study.selected_sign,
                      second.selected_sign, study.defect_minus, study.defect_plus,
                      second.defect_minus, second.defect_plus)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::optional<int> only;
    app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "L2 decay against alpha(4)", 60.0, l2_decay},
        {2, "sup-norm rate >= beta(4)", 0.0, sup_rate},
        {3, "constant-mode closed form", 5.0, constant_mode},
        {4, "conformal barrier", 5.0, conformal_barrier},
        {5, "time-map cross-check", 0.0, time_map_cross_check},
        {6, "first eigenvalue and McKean bound", 30.0, mckean},
        {7, "property suites", 120.0, properties},
        {8, "Euclidean I^p_delta nonincreasing", 0.0, euclidean_truncated},
        {9, "diffeomorphism convergence", 0.0, diffeo_convergence},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only && *only != c.number) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing = fmt("%.2f s", seconds);
        if (c.time_limit > 0.0) {
            timing += fmt(" (limit %.0f s)", c.time_limit);
            if (seconds >= c.time_limit) {
                v.pass = false;
                timing += " over limit";
            }
        }
        std::printf("criterion %d: %s  %s: %s [%s]\n", c.number, v.pass ? "PASS" : "FAIL",
                    c.name.c_str(), v.detail.c_str(), timing.c_str());
        std::fflush(stdout);
        if (!v.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
