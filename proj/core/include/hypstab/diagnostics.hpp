#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypstab/conformal2d.hpp"
#include "hypstab/geometry.hpp"
#include "hypstab/radial_flow.hpp"

namespace hypstab {

/// (2(n-1)^2 - 17) / 4, the L2 decay rate guaranteed for n >= 4.
double alpha_rate(int dimension);
/// alpha / (n + 2), the guaranteed sup-norm decay rate.
double beta_rate(int dimension);

/// omega_{n-1} * int_0^R [(a-1)^2 + (n-1)(b-1)^2] w^{n-1} d rho (trapezoid).
double l2_lyapunov(const RadialMetricState& state, const BackgroundGeometry& geom);
/// Same quadrature of (|g - h|^2 - delta)_+.
double truncated_lyapunov(const RadialMetricState& state, const BackgroundGeometry& geom,
                          double delta);
/// Same quadrature of (|g - h|^p - delta)_+, p >= 2.
double p_lyapunov(const RadialMetricState& state, const BackgroundGeometry& geom, double p,
                  double delta);

/// max_j |g - h|_h = sqrt((a-1)^2 + (n-1)(b-1)^2).
double sup_norm(const RadialMetricState& state, const BackgroundGeometry& geom);
/// max_j |h-nabla g|.
double max_gradient(const RadialMetricState& state, const BackgroundGeometry& geom);
/// max_j (|nabla |Z||^2 - |nabla Z|^2) with Z = g - h; nonpositive by Kato.
double kato_residual(const RadialMetricState& state, const BackgroundGeometry& geom);

struct DecayRecord {
    double t = 0.0;
    double l2 = 0.0;
    double truncated = 0.0;
    double p_truncated = 0.0;
    double sup_norm = 0.0;
    double max_grad = 0.0;
    double closeness = 0.0;
};

enum class SeriesField { L2, Truncated, PTruncated, SupNorm, MaxGrad, Closeness };

double field_value(const DecayRecord& record, SeriesField field);

struct SeriesOptions {
    double delta = 1e-6;
    double p = 2.0;

    void validate() const;
};

struct DecaySeries {
    std::vector<DecayRecord> records;

    std::size_t size() const noexcept { return records.size(); }
    bool empty() const noexcept { return records.empty(); }
    /// Appends, enforcing strictly increasing times.
    void append(const DecayRecord& record);
};

DecayRecord measure(const RadialMetricState& state, const BackgroundGeometry& geom,
                    const SeriesOptions& options = {});

/// View of e^u h as a radial metric with a = b = e^u (n = 2).
RadialMetricState as_radial_metric(const ConformalState& state);

struct FitWindow {
    double lo = 0.0;
    double hi = 0.0;
};

struct FitResult {
    double rate = 0.0;           ///< minus the slope of log(value) against t
    double log_amplitude = 0.0;  ///< intercept at t = 0
    double rms_residual = 0.0;
    FitWindow window;
    std::size_t samples = 0;
};

/// Least-squares line through (t, log value) over `window`, defaulting to the
/// second half of the series. FitError for fewer than five samples or
/// nonpositive values.
FitResult fit_decay_rate(const DecaySeries& series, SeriesField field,
                         std::optional<FitWindow> window = std::nullopt);

/// Leading records up to the last one before `field` first drops below
/// `floor` (the first record alone if it is already below).
DecaySeries truncate_at_floor(const DecaySeries& series, SeriesField field, double floor);

/// Default fit window cut off where `field` first drops below `floor`: with
/// t_cut the last record time before that, returns [t0 + (t_cut - t0)/2, t_cut].
/// Without such a drop this is the default second-half window.
FitWindow floor_limited_window(const DecaySeries& series, SeriesField field, double floor);

/// Smallest field value still treated as signal by fits and monotonicity
/// checks; the explicit schemes stall near 1e-12 once increments fall below
/// one ulp of 1, and a frozen state fails any strict decay test.
inline constexpr double kDecayNoiseFloor = 1e-9;

struct MonotonicityResult {
    bool pass = true;
    double worst_ratio = 0.0;
    std::size_t worst_index = 0;  ///< index k of the worst step k -> k+1
};

/// Checks v(t_{k+1}) <= e^{-rate (t_{k+1} - t_k)} v(t_k) (1 + tol) for all k.
MonotonicityResult monotonicity_check(const DecaySeries& series, SeriesField field, double rate,
                                      double tol);

/// max over records with 0 < t <= 1 of t * max_grad^2.
double gradient_blowup_monitor(const DecaySeries& series);

/// max(0, ||Du||^2 - 32 ||u|| ||D^2 u||) over samples of u, Du, D^2 u on a line.
double interpolation_check(std::span<const double> u, std::span<const double> du,
                           std::span<const double> d2u);

/// An evolve() run with every record turned into a DecayRecord and,
/// optionally, the recorded states kept.
struct RecordedRun {
    RadialMetricState final_state;
    DecaySeries series;
    std::vector<RadialMetricState> frames;
    std::size_t steps = 0;
    std::exception_ptr failure;
    std::string failure_message;

    bool completed() const noexcept { return !failure; }
};

RecordedRun run_recorded(const RadialMetricState& initial, const FlowParams& params,
                         const SeriesOptions& options = {}, bool keep_frames = false);

}  // namespace hypstab
