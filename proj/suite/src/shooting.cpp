#include "hypstab/suite/shooting.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "hypstab/errors.hpp"

namespace hypstab::suite {

namespace {

using State = std::array<double, 2>;
namespace odeint = boost::numeric::odeint;

constexpr double kStartFraction = 1e-6;

}  // namespace

int count_nodal_zeros(const BackgroundGeometry& geom, double radius, double sigma) {
    if (!(radius > 0.0)) throw DomainError("shooting needs a positive radius");
    const double k = geom.angular();
    const auto system = [&](const State& y, State& dy, double rho) {
        dy[0] = y[1];
        dy[1] = -k * warp_log_derivative(geom, rho) * y[1] - sigma * y[0];
    };

    // Regular series start away from the singular point.
    const double r0 = kStartFraction * radius;
    State y{1.0 - sigma * r0 * r0 / (2.0 * geom.dimension), -sigma * r0 / geom.dimension};

    int zeros = 0;
    double previous = y[0];
    const auto observer = [&](const State& s, double) {
        if ((previous > 0.0 && s[0] <= 0.0) || (previous < 0.0 && s[0] >= 0.0)) ++zeros;
        if (s[0] != 0.0) previous = s[0];
    };
    auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_adaptive(stepper, system, y, r0, radius, radius * 1e-3, observer);
    return zeros;
}

double shooting_first_eigenvalue(const BackgroundGeometry& geom, double radius,
                                 double tolerance) {
    double lo = 0.0;
    double hi = 1.0;
    while (count_nodal_zeros(geom, radius, hi) == 0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw NumericalError("shooting: no eigenvalue bracket found");
    }
    while (hi - lo > tolerance * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (count_nodal_zeros(geom, radius, mid) == 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace hypstab::suite
