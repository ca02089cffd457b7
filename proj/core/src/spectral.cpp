#include "hypstab/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

struct WeightedOperator {
    std::vector<double> flux;  // w(rho_{j+1/2}) / h, j = 0..m-1
    std::vector<double> mass;  // control-volume integral of w, j = 0..m-1
};

// Three-point Gauss-Legendre on [lo, hi].
double integrate_weight(const BackgroundGeometry& geom, double lo, double hi) {
    static constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += weights[i] * volume_weight(geom, mid + half * nodes[i]);
    return half * sum;
}

WeightedOperator assemble(const RadialEigenProblem& p) {
    const int m = p.intervals;
    const double h = p.radius / m;
    WeightedOperator op{std::vector<double>(m), std::vector<double>(m)};
    for (int j = 0; j < m; ++j) {
        op.flux[j] = volume_weight(p.geom, (j + 0.5) * h) / h;
        const double lo = j == 0 ? 0.0 : (j - 0.5) * h;
        op.mass[j] = integrate_weight(p.geom, lo, (j + 0.5) * h);
    }
    return op;
}

// K u for the unknowns u_0..u_{m-1} (u_m = 0).
double apply_stiffness(const WeightedOperator& op, const std::vector<double>& u, int j) {
    const int m = static_cast<int>(op.flux.size());
    double out = op.flux[j] * (u[j] - (j + 1 < m ? u[j + 1] : 0.0));
    if (j > 0) out += op.flux[j - 1] * (u[j] - u[j - 1]);
    return out;
}

}  // namespace

void RadialEigenProblem::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ConfigError("eigenproblem radius must be positive");
    }
    if (intervals < kMinEigenIntervals) {
        throw ConfigError("eigenproblem needs at least " + std::to_string(kMinEigenIntervals) +
                          " intervals");
    }
}

DiscreteEigenpair discrete_first_eigenpair(const RadialEigenProblem& problem) {
    problem.validate();
    const int m = problem.intervals;
    const auto op = assemble(problem);

    // Symmetric form B = M^{-1/2} K M^{-1/2}, tridiagonal.
    std::vector<double> diag(m), off(m > 1 ? m - 1 : 0), scale(m);
    for (int j = 0; j < m; ++j) scale[j] = 1.0 / std::sqrt(op.mass[j]);
    for (int j = 0; j < m; ++j) {
        const double k = op.flux[j] + (j > 0 ? op.flux[j - 1] : 0.0);
        diag[j] = k * scale[j] * scale[j];
        if (j + 1 < m) off[j] = -op.flux[j] * scale[j] * scale[j + 1];
    }

    // LDL^T factorisation of the SPD tridiagonal matrix, reused every iteration.
    std::vector<double> pivot(m), lower(m > 1 ? m - 1 : 0);
    pivot[0] = diag[0];
    for (int j = 1; j < m; ++j) {
        lower[j - 1] = off[j - 1] / pivot[j - 1];
        pivot[j] = diag[j] - lower[j - 1] * off[j - 1];
        if (!(pivot[j] > 0.0)) throw NumericalError("eigen operator is not positive definite");
    }
    auto solve = [&](std::vector<double>& x) {
        for (int j = 1; j < m; ++j) x[j] -= lower[j - 1] * x[j - 1];
        for (int j = 0; j < m; ++j) x[j] /= pivot[j];
        for (int j = m - 2; j >= 0; --j) x[j] -= lower[j] * x[j + 1];
    };
    auto apply = [&](const std::vector<double>& x, int j) {
        double y = diag[j] * x[j];
        if (j > 0) y += off[j - 1] * x[j - 1];
        if (j + 1 < m) y += off[j] * x[j + 1];
        return y;
    };
    auto normalise = [](std::vector<double>& x) {
        double norm = 0.0;
        for (double v : x) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : x) v /= norm;
    };

    // The residual cannot fall much below eps * ||B||; the eigenvalue error is
    // quadratic in the residual, so this threshold still resolves sigma to
    // round-off.
    double operator_norm = 0.0;
    for (int j = 0; j < m; ++j) {
        operator_norm = std::max(operator_norm, std::abs(diag[j]) +
                                                    (j > 0 ? std::abs(off[j - 1]) : 0.0) +
                                                    (j + 1 < m ? std::abs(off[j]) : 0.0));
    }
    const double tolerance = kEigenResidualTolerance * operator_norm;

    std::vector<double> x(m, 1.0);
    normalise(x);
    double sigma = 0.0;
    int iteration = 0;
    for (; iteration < kEigenIterationCap; ++iteration) {
        solve(x);
        normalise(x);
        double quotient = 0.0;
        for (int j = 0; j < m; ++j) quotient += x[j] * apply(x, j);
        double residual = 0.0;
        for (int j = 0; j < m; ++j) {
            const double r = apply(x, j) - quotient * x[j];
            residual += r * r;
        }
        sigma = quotient;
        if (std::sqrt(residual) <= tolerance) break;
    }
    if (iteration == kEigenIterationCap) {
        throw NumericalError("inverse iteration did not converge within " +
                             std::to_string(kEigenIterationCap) + " iterations");
    }

    DiscreteEigenpair out;
    out.eigenvalue = sigma;
    out.iterations = iteration + 1;
    out.eigenfunction.assign(m + 1, 0.0);
    for (int j = 0; j < m; ++j) out.eigenfunction[j] = x[j] * scale[j];
    double peak = 0.0;
    for (double v : out.eigenfunction) peak = std::max(peak, std::abs(v));
    const double sign = out.eigenfunction[0] < 0.0 ? -1.0 : 1.0;
    for (double& v : out.eigenfunction) v *= sign / peak;
    return out;
}

double rayleigh_quotient(const RadialEigenProblem& problem, const std::vector<double>& u) {
    problem.validate();
    if (u.size() != static_cast<std::size_t>(problem.intervals) + 1) {
        throw ConfigError("rayleigh_quotient: wrong vector length");
    }
    const auto op = assemble(problem);
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < problem.intervals; ++j) {
        num += u[j] * apply_stiffness(op, u, j);
        den += u[j] * op.mass[j] * u[j];
    }
    return num / den;
}

EigenEstimate first_dirichlet_eigenvalue(const RadialEigenProblem& problem) {
    problem.validate();
    RadialEigenProblem fine = problem;
    fine.intervals = 2 * problem.intervals;
    EigenEstimate out;
    out.coarse = discrete_first_eigenpair(problem).eigenvalue;
    out.fine = discrete_first_eigenpair(fine).eigenvalue;
    out.sigma1 = (4.0 * out.fine - out.coarse) / 3.0;
    out.error_estimate = std::abs(out.sigma1 - out.fine);
    return out;
}

double mckean_bound(int dimension) {
    const double k = dimension - 1;
    return 0.25 * k * k;
}

double mckean_gap(const BackgroundGeometry& geom, double radius, int intervals) {
    if (!geom.hyperbolic()) throw DomainError("mckean_gap is defined for hyperbolic balls only");
    const auto estimate = first_dirichlet_eigenvalue({geom, radius, intervals});
    return estimate.sigma1 - mckean_bound(geom.dimension);
}

}  // namespace hypstab
