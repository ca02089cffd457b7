#pragma once

#include <cmath>

namespace hypstab::suite {

/// x + e1 dx1 + e2 dx2 + e1 e2 dx12 with e1^2 = e2^2 = 0. Evaluating f on
/// (x, 1, 1, 0)-seeded inputs yields f, two first partials and the mixed
/// second partial exactly, without step-size error.
struct HyperDual {
    double v = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double e12 = 0.0;

    constexpr HyperDual() = default;
    constexpr HyperDual(double value) : v(value) {}
    constexpr HyperDual(double value, double d1, double d2, double d12)
        : v(value), e1(d1), e2(d2), e12(d12) {}
};

inline HyperDual operator+(HyperDual a, HyperDual b) {
    return {a.v + b.v, a.e1 + b.e1, a.e2 + b.e2, a.e12 + b.e12};
}
inline HyperDual operator-(HyperDual a, HyperDual b) {
    return {a.v - b.v, a.e1 - b.e1, a.e2 - b.e2, a.e12 - b.e12};
}
inline HyperDual operator-(HyperDual a) { return {-a.v, -a.e1, -a.e2, -a.e12}; }
inline HyperDual operator*(HyperDual a, HyperDual b) {
    return {a.v * b.v, a.e1 * b.v + a.v * b.e1, a.e2 * b.v + a.v * b.e2,
            a.e12 * b.v + a.e1 * b.e2 + a.e2 * b.e1 + a.v * b.e12};
}

/// Applies a scalar function given its value and first two derivatives.
inline HyperDual chain(HyperDual a, double f, double df, double d2f) {
    return {f, df * a.e1, df * a.e2, df * a.e12 + d2f * a.e1 * a.e2};
}

inline HyperDual reciprocal(HyperDual a) {
    const double inv = 1.0 / a.v;
    return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}
inline HyperDual operator/(HyperDual a, HyperDual b) { return a * reciprocal(b); }

inline HyperDual exp(HyperDual a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
}
inline HyperDual sin(HyperDual a) {
    return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}
inline HyperDual cos(HyperDual a) {
    return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}
inline HyperDual sinh(HyperDual a) {
    return chain(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v));
}
inline HyperDual cosh(HyperDual a) {
    return chain(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v));
}

}  // namespace hypstab::suite
