#pragma once

#include <random>

#include "hypstab/geometry.hpp"
#include "hypstab/radial_flow.hpp"
#include "hypstab/suite/hyperdual.hpp"

namespace hypstab::suite {

/// Even radial profile 1 + c0 + (c1 r^2 + c2 r^4) exp(-r^2 / width).
struct SmoothProfile {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double width = 1.0;

    template <class T>
    T operator()(const T& r) const {
        const T r2 = r * r;
        return T(1.0 + c0) + (T(c1) + T(c2) * r2) * r2 * exp(-r2 * T(1.0 / width));
    }
    double operator()(double r) const { return (*this)(HyperDual(r)).v; }
};

struct ProfilePair {
    SmoothProfile a;
    SmoothProfile b;
};

/// Random pair with sup |profile - 1| of order `amplitude` and a(0) = b(0).
ProfilePair random_profile_pair(std::mt19937_64& rng, double amplitude);

/// Samples the pair on a grid. The last node is left as sampled.
RadialMetricState sample_profile(const ProfilePair& pair, const RadialGrid& grid);

/// Quantities of g = a(rho) d rho^2 + b(rho) warp^2 g_S computed from
/// Christoffel symbols in polar coordinates (rho, theta_1, ..., theta_{n-1}),
/// with exact metric derivatives. Tensor components are reported in the
/// h-orthonormal frame at one point.
struct OracleSample {
    double d_a = 0.0;    ///< (h-nabla_rho g)(e_rho, e_rho)
    double d_b = 0.0;    ///< (h-nabla_rho g)(e_theta, e_theta)
    double mixed = 0.0;  ///< (h-nabla_theta g)(e_rho, e_theta)
    double gradient_norm_squared = 0.0;
    double rate_a = 0.0;  ///< (-2 Ric + L_V g - 2(n-1) g)(e_rho, e_rho); no last term if flat
    double rate_b = 0.0;
    double deturck = 0.0;  ///< V^rho, V^k = g^{rs}(gGamma - hGamma)^k_rs
    double ricci_radial = 0.0;
    double ricci_angular = 0.0;
};

/// Supports dimensions 2, 3 and 4. rho must be positive.
OracleSample coordinate_oracle(const BackgroundGeometry& geom, const ProfilePair& pair,
                               double rho);

}  // namespace hypstab::suite
