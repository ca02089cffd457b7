#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hypstab/geometry.hpp"
#include "hypstab/interpolation.hpp"
#include "hypstab/radial_flow.hpp"

namespace hypstab {

/// Rescaled: u_t = e^{-u} Delta_h u + 2 (e^{-u} - 1), fixed point u = 0.
/// Unrescaled: u_t = e^{-u} Delta_h u + 2 e^{-u}, plain Ricci flow of e^u h.
enum class ConformalMode { Rescaled, Unrescaled };

/// Radial conformal exponent u on a hyperbolic disk, metric e^u h.
struct ConformalState {
    RadialGrid grid;
    std::vector<double> u;
    double t = 0.0;
    ConformalMode mode = ConformalMode::Rescaled;

    ConformalState(RadialGrid grid, std::vector<double> u, double t = 0.0,
                   ConformalMode mode = ConformalMode::Rescaled);
};

struct ConformalParams {
    BoundaryMode boundary = BoundaryMode::Dirichlet;
    double cfl = 0.2;
    double t_end = 1.0;
    int record_every = 100;
    double fixed_dt = 0.0;

    void validate() const;
};

/// Right-hand side in geodesic polar form. In Dirichlet mode the boundary row
/// is zero; constant mode evaluates the spatially constant ODE.
std::vector<double> rhs_conformal(const ConformalState& state,
                                  BoundaryMode boundary = BoundaryMode::Dirichlet);

/// Same equation written on the Poincare disk, e^{-u-f} Delta_delta u + ...
/// with f = log 4 - 2 log(1 - s^2). `u` is sampled at s_j = j * s_max / m.
/// Interior nodes only; entries 0 and m are computed with the origin limit and
/// a zero boundary row respectively.
std::vector<double> rhs_conformal_disk(std::span<const double> u, double s_max,
                                       ConformalMode mode);

/// log(1 + a e^{-2t}), the spatially constant solution of the rescaled flow.
double barrier(double amplitude, double t);

double time_step(const ConformalState& state, const ConformalParams& params);

class ConformalSolver {
public:
    ConformalSolver(const RadialGrid& grid, ConformalParams params);

    const ConformalParams& params() const noexcept { return params_; }
    void rhs(std::span<const double> u, ConformalMode mode, std::span<double> out) const;
    void advance(ConformalState& state, double dt);

private:
    RadialGrid grid_;
    ConformalParams params_;
    std::vector<double> log_derivative_;
    std::vector<double> k1_, k2_, k3_, k4_, stage_;
};

ConformalState step(const ConformalState& state, const ConformalParams& params);
ConformalState step(const ConformalState& state, const ConformalParams& params, double dt);

using ConformalSink = std::function<void(const ConformalState&)>;

struct ConformalEvolveResult {
    ConformalState final_state;
    std::size_t steps = 0;
    std::exception_ptr failure;
    std::string failure_message;

    bool completed() const noexcept { return !failure; }
};

ConformalEvolveResult evolve(ConformalState initial, const ConformalParams& params,
                             const ConformalSink& sink);

/// Recorded frames together with their exact time derivatives, so that the
/// solution can be evaluated between frames by cubic Hermite interpolation.
class ConformalTrajectory {
public:
    struct Frame {
        double t;
        std::vector<double> u;
        std::vector<double> rate;
    };

    ConformalTrajectory(RadialGrid grid, ConformalMode mode, BoundaryMode boundary);

    void append(const ConformalState& state);

    const RadialGrid& grid() const noexcept { return grid_; }
    ConformalMode mode() const noexcept { return mode_; }
    BoundaryMode boundary() const noexcept { return boundary_; }
    const std::vector<Frame>& frames() const noexcept { return frames_; }
    double start_time() const;
    double end_time() const;

    /// Nodal values and time derivatives at time t (RangeError outside).
    void sample(double t, std::vector<double>& u, std::vector<double>& rate) const;

private:
    RadialGrid grid_;
    ConformalMode mode_;
    BoundaryMode boundary_;
    std::vector<Frame> frames_;
};

/// Evolves `initial` and keeps every record_every-th state as a frame.
ConformalTrajectory record_trajectory(const ConformalState& initial,
                                      const ConformalParams& params);

struct ComparisonSetup {
    BoundaryMode lo_boundary = BoundaryMode::Dirichlet;
    BoundaryMode hi_boundary = BoundaryMode::Dirichlet;
    double t_end = 1.0;
    double cfl = 0.2;
    double fixed_dt = 0.0;
    int record_every = 50;
    double tol = 1e-8;
};

struct ComparisonResult {
    bool ordered = true;
    double max_violation = 0.0;  ///< max over records and nodes of lo - hi, floored at 0
    std::size_t records = 0;
};

/// Evolves lo and hi with a common step and checks lo <= hi + tol at every
/// record.
ComparisonResult comparison_check(const ConformalState& lo, const ConformalState& hi,
                                  const ComparisonSetup& setup);

/// Max-norm residual of the unrescaled equation on
/// u_gamma(p, t) = u(p, e^{-gamma} t) + gamma for t in [0, t_end], sampled at
/// `samples` evenly spaced times. t_end < 0 means the trajectory end.
double gamma_shift_residual(const ConformalTrajectory& trajectory, double gamma,
                            double t_end = -1.0, int samples = 97);

}  // namespace hypstab
