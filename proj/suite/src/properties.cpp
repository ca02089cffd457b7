#include "hypstab/suite/properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "hypstab/diagnostics.hpp"
#include "hypstab/gauge.hpp"
#include "hypstab/radial_flow.hpp"
#include "hypstab/spectral.hpp"
#include "hypstab/suite/coordinate_oracle.hpp"

namespace hypstab::suite {

namespace {

constexpr double kStationaryTol = 1e-13;
constexpr double kKatoTol = 1e-10;
constexpr double kMinOrder = 1.9;
constexpr double kRoundTripTol = 1e-14;

std::string describe(const char* label, double value) {
    std::ostringstream os;
    os.precision(6);
    os << label << value;
    return os.str();
}

}  // namespace

PropertyOutcome stationarity_property() {
    PropertyOutcome out{"stationarity", "stationarity of h", true, 0.0, kStationaryTol, 0, {}};
    for (int n = 3; n <= 6; ++n) {
        for (auto kind : {Background::Hyperbolic, Background::Euclidean}) {
            const BackgroundGeometry geom(kind, n);
            const RadialGrid grid(6.0, 200);
            const auto h = RadialMetricState::background(grid);
            FlowParams params;
            params.geom = geom;
            const auto rate = rhs(h, params);
            const auto v = deturck_field(h, geom);
            for (std::size_t j = 0; j < grid.size(); ++j) {
                out.measured = std::max({out.measured, std::abs(rate.a[j]), std::abs(rate.b[j]),
                                         std::abs(v[j])});
            }
            ++out.cases;
        }
    }
    out.pass = out.measured <= kStationaryTol;
    out.detail = describe("max |rhs(h)|, |V(h)| = ", out.measured);
    return out;
}

PropertyOutcome kato_property(std::uint64_t seed, int cases) {
    PropertyOutcome out{"kato", "Kato inequality", true, -std::numeric_limits<double>::infinity(),
                        kKatoTol, cases, {}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(3, 6);
    std::uniform_int_distribution<int> intervals(64, 256);
    std::uniform_real_distribution<double> radius(2.0, 6.0);
    std::uniform_real_distribution<double> amplitude(1e-4, 0.1);
    for (int c = 0; c < cases; ++c) {
        const BackgroundGeometry geom(c % 2 ? Background::Euclidean : Background::Hyperbolic,
                                      dim(rng));
        const RadialGrid grid(radius(rng), intervals(rng));
        const auto pair = random_profile_pair(rng, amplitude(rng));
        out.measured = std::max(out.measured, kato_residual(sample_profile(pair, grid), geom));
    }
    out.pass = out.measured <= kKatoTol;
    out.detail = describe("max kato residual = ", out.measured);
    return out;
}

PropertyOutcome interpolation_property(std::uint64_t seed, int cases) {
    PropertyOutcome out{"interpolation", "1D interpolation inequality", true, 0.0, 0.0, cases, {}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> modes(1, 8);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    constexpr int kSamples = 4096;
    std::vector<double> u(kSamples), du(kSamples), d2u(kSamples);
    for (int c = 0; c < cases; ++c) {
        const int top = modes(rng);
        const double mean = coeff(rng);
        std::vector<double> ca(top + 1), cb(top + 1);
        for (int k = 1; k <= top; ++k) {
            ca[k] = coeff(rng);
            cb[k] = coeff(rng);
        }
        for (int i = 0; i < kSamples; ++i) {
            const double x = 2.0 * std::numbers::pi * i / kSamples;
            double v = mean, dv = 0.0, ddv = 0.0;
            for (int k = 1; k <= top; ++k) {
                const double ck = std::cos(k * x);
                const double sk = std::sin(k * x);
                v += ca[k] * ck + cb[k] * sk;
                dv += k * (-ca[k] * sk + cb[k] * ck);
                ddv -= k * k * (ca[k] * ck + cb[k] * sk);
            }
            u[i] = v;
            du[i] = dv;
            d2u[i] = ddv;
        }
        out.measured = std::max(out.measured, interpolation_check(u, du, d2u));
    }
    out.pass = out.measured == 0.0;
    out.detail = describe("max violation = ", out.measured);
    return out;
}

PropertyOutcome zeroth_order_property(std::uint64_t seed, int cases) {
    PropertyOutcome out{"zeroth_order", "zeroth-order term bound (c(n) = 8n)", true,
                        -std::numeric_limits<double>::infinity(), 0.0, cases, {}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(2, 6);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> size(1e-4, 0.1);
    for (int c = 0; c < cases; ++c) {
        const int n = dim(rng);
        const double eps = size(rng);
        std::vector<double> d(n);
        for (auto& x : d) x = unit(rng);
        // Rescale so that max |d_i| is exactly eps.
        const double top = std::abs(*std::max_element(
            d.begin(), d.end(), [](double x, double y) { return std::abs(x) < std::abs(y); }));
        std::vector<double> lambda(n);
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < n; ++i) {
            d[i] *= eps / top;
            lambda[i] = 1.0 + d[i];
            sum += d[i];
            sq += d[i] * d[i];
        }
        const double bound = 4.0 * sq - 4.0 * sum * sum + 8.0 * n * eps * sq;
        const double excess = zeroth_order_term(lambda) - bound;
        // Relative to the size of the compared terms, to absorb rounding.
        out.measured = std::max(out.measured, excess / (4.0 * sq));
    }
    out.threshold = 1e-12;
    out.pass = out.measured <= out.threshold;
    out.detail = describe("max (S - bound) / (4 sum d^2) = ", out.measured);
    return out;
}

PropertyOutcome frame_reduction_property(std::uint64_t seed, int profiles) {
    PropertyOutcome out{"frame_reduction", "frame reduction vs coordinate oracle (n = 3)", true,
                        std::numeric_limits<double>::infinity(), kMinOrder, profiles, {}};
    std::mt19937_64 rng(seed);
    constexpr int kQuantities = 6;
    constexpr double kRadius = 3.0;
    double mixed_error = 0.0;
    for (int p = 0; p < profiles; ++p) {
        const BackgroundGeometry geom(p % 2 ? Background::Euclidean : Background::Hyperbolic, 3);
        const auto pair = random_profile_pair(rng, 0.1);
        FlowParams params;
        params.geom = geom;
        std::array<double, kQuantities> previous{};
        for (int m : {100, 200, 400}) {
            const RadialGrid grid(kRadius, m);
            const auto state = sample_profile(pair, grid);
            const auto grad = frame_first_derivatives(state, geom);
            const auto rate = rhs(state, params);
            const auto v = deturck_field(state, geom);
            std::array<double, kQuantities> err{};
            for (int j = 1; j < m; ++j) {
                const auto o = coordinate_oracle(geom, pair, grid.node(j));
                const std::array<double, kQuantities> diff{
                    grad.d_a[j] - o.d_a,
                    grad.d_b[j] - o.d_b,
                    grad.norm_squared(j, geom.angular()) - o.gradient_norm_squared,
                    rate.a[j] - o.rate_a,
                    rate.b[j] - o.rate_b,
                    v[j] - o.deturck};
                for (int q = 0; q < kQuantities; ++q) err[q] = std::max(err[q], std::abs(diff[q]));
                mixed_error = std::max(mixed_error, std::abs(grad.mixed[j] - o.mixed));
            }
            if (m > 100) {
                for (int q = 0; q < kQuantities; ++q) {
                    out.measured = std::min(out.measured, std::log2(previous[q] / err[q]));
                }
            }
            previous = err;
        }
    }
    // The mixed component involves no difference quotient and must agree exactly.
    out.pass = out.measured >= kMinOrder && mixed_error <= 1e-12;
    out.detail = describe("min observed order = ", out.measured) +
                 describe(", mixed component error = ", mixed_error);
    return out;
}

PropertyOutcome time_map_property() {
    PropertyOutcome out{"time_map", "time map round trips", true, 0.0, kRoundTripTol, 0, {}};
    for (int n = 2; n <= 6; ++n) {
        const TimeMap map(n);
        for (int i = 0; i < 100; ++i) {
            // Ricci flow times span [1e-6, 1e3]; scaled times span [1e-6, 3].
            const double t = std::pow(10.0, -6.0 + 9.0 * i / 99.0);
            const double scaled = 1e-6 * std::pow(3e6, i / 99.0);
            const double forward = map.from_scaled(map.to_scaled(t));
            const double backward = map.to_scaled(map.from_scaled(scaled));
            const MetricSnapshot snap{{1.0 + 0.01 * i, 0.97, 1.2}, scaled};
            const auto back = unscaled_to_scaled_metric(scaled_to_unscaled_metric(snap, map), map);
            double metric_error = std::abs(back.t - scaled) / scaled;
            for (std::size_t e = 0; e < snap.eigenvalues.size(); ++e) {
                metric_error = std::max(metric_error, std::abs(back.eigenvalues[e] -
                                                               snap.eigenvalues[e]) /
                                                          snap.eigenvalues[e]);
            }
            out.measured = std::max({out.measured, std::abs(forward - t) / t,
                                     std::abs(backward - scaled) / scaled, metric_error});
            ++out.cases;
        }
    }
    out.pass = out.measured <= kRoundTripTol;
    out.detail = describe("max relative round-trip error = ", out.measured);
    return out;
}

PropertyOutcome mckean_property() {
    PropertyOutcome out{"mckean", "McKean bound", true, std::numeric_limits<double>::infinity(), 0.0, 0,
                        {}};
    for (int n = 2; n <= 6; ++n) {
        for (double radius : {1.0, 2.0, 5.0, 10.0}) {
            const RadialEigenProblem problem{BackgroundGeometry(Background::Hyperbolic, n), radius,
                                             256};
            const auto estimate = first_dirichlet_eigenvalue(problem);
            out.measured = std::min(out.measured, estimate.sigma1 - mckean_bound(n));
            ++out.cases;
        }
    }
    out.pass = out.measured > out.threshold;
    out.detail = describe("smallest sigma_1 - (n-1)^2/4 = ", out.measured);
    return out;
}

std::vector<PropertyOutcome> run_all_properties(std::uint64_t seed) {
    return {stationarity_property(),
            kato_property(seed),
            interpolation_property(seed + 1),
            zeroth_order_property(seed + 2),
            frame_reduction_property(seed + 3),
            time_map_property(),
            mckean_property()};
}

}  // namespace hypstab::suite
