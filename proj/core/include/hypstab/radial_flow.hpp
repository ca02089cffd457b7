#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hypstab/geometry.hpp"

namespace hypstab {

/// Rotationally symmetric metric g = a d rho^2 + b warp^2 g_{S^{n-1}} stored by
/// its two eigenvalue profiles relative to the background h.
struct RadialMetricState {
    RadialGrid grid;
    std::vector<double> a;  ///< radial eigenvalue g(e_rho, e_rho)
    std::vector<double> b;  ///< angular eigenvalue, multiplicity n - 1
    double t = 0.0;

    RadialMetricState(RadialGrid grid, std::vector<double> a, std::vector<double> b,
                      double t = 0.0);

    /// The background metric itself, a = b = 1.
    static RadialMetricState background(const RadialGrid& grid, double t = 0.0);

    /// max_j max(|a_j - 1|, |b_j - 1|).
    double closeness() const;
};

/// a = b = 1 + amplitude * exp(-rho^2) * (1 - (rho/R)^2)^2. Matches h to
/// second order at rho = R.
RadialMetricState damped_bump(const RadialGrid& grid, double amplitude);

/// a = 1 + amp_a * phi, b = 1 + (amp_b + (amp_a - amp_b) e^{-rho^2}) * phi with
/// phi the damped bump weight above. a(0) = b(0); unequal amplitudes give a
/// non-conformal perturbation away from the origin.
RadialMetricState anisotropic_bump(const RadialGrid& grid, double amp_a, double amp_b);

/// a = b = 1 + amplitude * max(0, 1 - |rho - center| / half_width): Lipschitz
/// data with corners, for interior-estimate experiments.
RadialMetricState tent_profile(const RadialGrid& grid, double amplitude, double center,
                               double half_width);

/// a = b = lambda everywhere.
RadialMetricState constant_metric(const RadialGrid& grid, double lambda);

enum class BoundaryMode {
    Dirichlet,              ///< g = h on the outer sphere
    NoBoundaryConstantMode  ///< spatially constant data, zeroth-order ODE only
};

struct FlowParams {
    BackgroundGeometry geom{Background::Hyperbolic, 4};
    BoundaryMode boundary = BoundaryMode::Dirichlet;
    double cfl = 0.2;
    double t_end = 5.0;
    int record_every = 1000;
    double eps_abort = 0.5;
    double fixed_dt = 0.0;  ///< when positive, replaces the CFL step

    void validate() const;
};

/// Frame components of h-nabla g: d_a = a', d_b = b', mixed = coth-type
/// coefficient times (a - b).
struct FrameGradient {
    std::vector<double> d_a;
    std::vector<double> d_b;
    std::vector<double> mixed;

    /// |h-nabla g|^2 = d_a^2 + (n-1) d_b^2 + 2 (n-1) mixed^2 at node j.
    double norm_squared(std::size_t j, int angular) const noexcept {
        return d_a[j] * d_a[j] + angular * d_b[j] * d_b[j] + 2.0 * angular * mixed[j] * mixed[j];
    }
};

FrameGradient frame_first_derivatives(const RadialMetricState& state,
                                      const BackgroundGeometry& geom);

struct MetricRate {
    std::vector<double> a;
    std::vector<double> b;
};

/// Time derivative of (a, b) under the rescaled Ricci harmonic map heat flow
/// (plain harmonic map heat flow over a Euclidean background).
MetricRate rhs(const RadialMetricState& state, const FlowParams& params);

/// cfl * drho^2 * min(a, b), or params.fixed_dt when set.
double time_step(const RadialMetricState& state, const FlowParams& params);

/// One classical RK4 step.
RadialMetricState step(const RadialMetricState& state, const FlowParams& params);
RadialMetricState step(const RadialMetricState& state, const FlowParams& params, double dt);

/// Reusable integrator holding precomputed grid coefficients and RK4 stages.
class RadialFlowSolver {
public:
    RadialFlowSolver(const RadialGrid& grid, FlowParams params);

    const FlowParams& params() const noexcept { return params_; }
    void rhs(const RadialMetricState& state, MetricRate& out) const;
    void advance(RadialMetricState& state, double dt);

private:
    void evaluate(std::span<const double> a, std::span<const double> b, double t,
                  std::span<double> da, std::span<double> db) const;
    void check_closeness(const RadialMetricState& state) const;

    RadialGrid grid_;
    FlowParams params_;
    std::vector<double> log_derivative_;  // kappa_j, unused at j = 0
    MetricRate k1_, k2_, k3_, k4_;
    std::vector<double> stage_a_, stage_b_;
};

using StateSink = std::function<void(const RadialMetricState&)>;

struct EvolveResult {
    RadialMetricState final_state;
    std::size_t steps = 0;
    std::exception_ptr failure;  ///< set when the run aborted early
    std::string failure_message;

    bool completed() const noexcept { return !failure; }
};

/// Integrates to params.t_end, passing the initial state, every
/// record_every-th state and the final state to `sink`. Positivity loss and
/// closeness aborts end the run early and are reported in the result.
EvolveResult evolve(RadialMetricState initial, const FlowParams& params, const StateSink& sink);

/// 4 sum (l_i - 1)^2 - 4 (sum l_i (l_i - 1)) (sum (1 - 1/l_k)).
double zeroth_order_term(std::span<const double> lambda);

}  // namespace hypstab
