#pragma once

#include <vector>

#include "hypstab/geometry.hpp"

namespace hypstab {

/// -(u'' + (n-1) kappa u') = sigma u on [0, R], u'(0) = 0, u(R) = 0.
struct RadialEigenProblem {
    BackgroundGeometry geom;
    double radius = 1.0;
    int intervals = 256;

    void validate() const;
};

inline constexpr int kEigenIterationCap = 10000;
inline constexpr int kMinEigenIntervals = 64;
/// Inverse iteration stops once ||B x - sigma x|| <= this times ||B||_inf.
inline constexpr double kEigenResidualTolerance = 1e-12;

struct DiscreteEigenpair {
    double eigenvalue = 0.0;
    /// Nodal values u_0..u_m (u_m = 0), normalised to max |u| = 1, u_0 > 0.
    std::vector<double> eigenfunction;
    int iterations = 0;
};

/// Lowest eigenpair of the finite-volume discretisation
///   K u = sigma M u,  K_{j,j+1} = -w(rho_{j+1/2}) / h,  M_j = cell volume,
/// which is symmetric in the volume-weighted inner product. Inverse iteration
/// with shift zero; NumericalError after kEigenIterationCap iterations.
DiscreteEigenpair discrete_first_eigenpair(const RadialEigenProblem& problem);

/// u^T K u / u^T M u for nodal values on the problem's grid.
double rayleigh_quotient(const RadialEigenProblem& problem, const std::vector<double>& u);

struct EigenEstimate {
    double sigma1 = 0.0;          ///< Richardson extrapolation of coarse and fine
    double coarse = 0.0;          ///< m intervals
    double fine = 0.0;            ///< 2m intervals
    double error_estimate = 0.0;  ///< |sigma1 - fine|
};

EigenEstimate first_dirichlet_eigenvalue(const RadialEigenProblem& problem);

/// (n-1)^2 / 4.
double mckean_bound(int dimension);

/// sigma1(B_R) - (n-1)^2/4 on hyperbolic balls; DomainError for Euclidean.
double mckean_gap(const BackgroundGeometry& geom, double radius, int intervals);

}  // namespace hypstab
