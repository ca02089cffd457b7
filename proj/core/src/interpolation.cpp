#include "hypstab/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

double ghost(std::span<const double> values, int j, Parity parity) {
    if (j >= 0) return values[j];
    const double mirrored = values[-j];
    return parity == Parity::Even ? mirrored : -mirrored;
}

}  // namespace

double interpolate_cubic(std::span<const double> values, const RadialGrid& grid, double x,
                         Parity parity) {
    const int m = grid.intervals();
    const double h = grid.spacing();
    const double slack = 1e-12 * grid.radius();
    if (x < -slack || x > grid.radius() + slack) {
        throw RangeError("interpolate_cubic: radius " + std::to_string(x) +
                         " outside grid [0, " + std::to_string(grid.radius()) + "]");
    }
    x = std::clamp(x, 0.0, grid.radius());

    int cell = std::min(static_cast<int>(std::floor(x / h)), m - 1);
    int first = std::min(cell - 1, m - 3);
    double out = 0.0;
    for (int i = 0; i < 4; ++i) {
        double weight = 1.0;
        const double xi = (first + i) * h;
        for (int k = 0; k < 4; ++k) {
            if (k == i) continue;
            const double xk = (first + k) * h;
            weight *= (x - xk) / (xi - xk);
        }
        out += weight * ghost(values, first + i, parity);
    }
    return out;
}

double HermiteSegment::value(double t) const noexcept {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * h * d1;
}

double HermiteSegment::derivative(double t) const noexcept {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * y0 + (6 * s - 6 * s2) * y1) / h + (3 * s2 - 4 * s + 1) * d0 +
           (3 * s2 - 2 * s) * d1;
}

}  // namespace hypstab
