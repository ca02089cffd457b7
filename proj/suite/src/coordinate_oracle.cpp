#include "hypstab/suite/coordinate_oracle.hpp"

#include <array>
#include <cmath>

#include "hypstab/errors.hpp"

namespace hypstab::suite {

namespace {

template <int N>
using Mat = std::array<std::array<double, N>, N>;

template <int N>
using Tensor3 = std::array<Mat<N>, N>;

template <int N>
using Tensor4 = std::array<Tensor3<N>, N>;

// Metric value with its first and second coordinate derivatives.
template <int N>
struct Jet {
    Mat<N> g{};
    Tensor3<N> d{};   // d[k][i][j] = d_k g_ij
    Tensor4<N> dd{};  // dd[k][l][i][j] = d_k d_l g_ij
};

constexpr double kAngle = 1.1;

template <class T>
T warp_of(const BackgroundGeometry& geom, const T& r) {
    if (geom.hyperbolic()) return sinh(r);
    return r;
}

// Diagonal polar metric: scale_0 d rho^2 + scale_1 warp^2 sum_i prod_{k<i} sin^2 x_k dx_i^2.
template <int N, class T, class F0, class F1>
std::array<T, N> diagonal_metric(const BackgroundGeometry& geom, const std::array<T, N>& x,
                                 const F0& radial, const F1& angular) {
    std::array<T, N> diag{};
    const T w = warp_of(geom, x[0]);
    diag[0] = radial(x[0]);
    T sphere(1.0);
    const T outer = angular(x[0]) * w * w;
    for (int i = 1; i < N; ++i) {
        diag[i] = outer * sphere;
        const T s = sin(x[i]);
        sphere = sphere * s * s;
    }
    return diag;
}

template <int N, class F0, class F1>
Jet<N> metric_jet(const BackgroundGeometry& geom, const std::array<double, N>& point,
                  const F0& radial, const F1& angular) {
    Jet<N> jet;
    for (int k = 0; k < N; ++k) {
        for (int l = k; l < N; ++l) {
            std::array<HyperDual, N> x;
            for (int i = 0; i < N; ++i) x[i] = HyperDual(point[i]);
            x[k].e1 = 1.0;
            x[l].e2 = 1.0;
            const auto diag = diagonal_metric<N>(geom, x, radial, angular);
            for (int i = 0; i < N; ++i) {
                jet.g[i][i] = diag[i].v;
                jet.d[k][i][i] = diag[i].e1;
                jet.d[l][i][i] = diag[i].e2;
                jet.dd[k][l][i][i] = diag[i].e12;
                jet.dd[l][k][i][i] = diag[i].e12;
            }
        }
    }
    return jet;
}

template <int N>
Mat<N> invert(const Mat<N>& m) {
    Mat<N> a = m;
    Mat<N> inv{};
    for (int i = 0; i < N; ++i) inv[i][i] = 1.0;
    for (int c = 0; c < N; ++c) {
        int pivot = c;
        for (int r = c + 1; r < N; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
        }
        std::swap(a[c], a[pivot]);
        std::swap(inv[c], inv[pivot]);
        const double p = a[c][c];
        for (int j = 0; j < N; ++j) {
            a[c][j] /= p;
            inv[c][j] /= p;
        }
        for (int r = 0; r < N; ++r) {
            if (r == c) continue;
            const double f = a[r][c];
            for (int j = 0; j < N; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

template <int N>
struct Connection {
    Mat<N> inv{};
    Tensor3<N> d_inv{};    // d_inv[m][k][l] = d_m g^{kl}
    Tensor3<N> gamma{};    // gamma[k][i][j] = Gamma^k_ij
    Tensor4<N> d_gamma{};  // d_gamma[m][k][i][j] = d_m Gamma^k_ij
};

template <int N>
Connection<N> connection(const Jet<N>& jet) {
    Connection<N> c;
    c.inv = invert<N>(jet.g);
    for (int m = 0; m < N; ++m) {
        for (int k = 0; k < N; ++k) {
            for (int l = 0; l < N; ++l) {
                double s = 0.0;
                for (int a = 0; a < N; ++a) {
                    for (int b = 0; b < N; ++b) s -= c.inv[k][a] * jet.d[m][a][b] * c.inv[b][l];
                }
                c.d_inv[m][k][l] = s;
            }
        }
    }
    for (int k = 0; k < N; ++k) {
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                double s = 0.0;
                for (int l = 0; l < N; ++l) {
                    s += c.inv[k][l] * (jet.d[i][l][j] + jet.d[j][l][i] - jet.d[l][i][j]);
                }
                c.gamma[k][i][j] = 0.5 * s;
                for (int m = 0; m < N; ++m) {
                    double ds = 0.0;
                    for (int l = 0; l < N; ++l) {
                        const double lower = jet.d[i][l][j] + jet.d[j][l][i] - jet.d[l][i][j];
                        const double d_lower =
                            jet.dd[m][i][l][j] + jet.dd[m][j][l][i] - jet.dd[m][l][i][j];
                        ds += c.d_inv[m][k][l] * lower + c.inv[k][l] * d_lower;
                    }
                    c.d_gamma[m][k][i][j] = 0.5 * ds;
                }
            }
        }
    }
    return c;
}

template <int N>
Mat<N> ricci(const Connection<N>& c) {
    Mat<N> r{};
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            double s = 0.0;
            for (int k = 0; k < N; ++k) {
                s += c.d_gamma[k][k][i][j] - c.d_gamma[j][k][i][k];
                for (int l = 0; l < N; ++l) {
                    s += c.gamma[k][k][l] * c.gamma[l][i][j] - c.gamma[k][j][l] * c.gamma[l][i][k];
                }
            }
            r[i][j] = s;
        }
    }
    return r;
}

template <int N>
OracleSample evaluate(const BackgroundGeometry& geom, const ProfilePair& pair, double rho) {
    std::array<double, N> point;
    point[0] = rho;
    for (int i = 1; i < N; ++i) point[i] = kAngle;

    const auto one = [](const HyperDual&) { return HyperDual(1.0); };
    const auto fa = [&](const HyperDual& r) { return pair.a(r); };
    const auto fb = [&](const HyperDual& r) { return pair.b(r); };
    const Jet<N> gj = metric_jet<N>(geom, point, fa, fb);
    const Jet<N> hj = metric_jet<N>(geom, point, one, one);
    const Connection<N> gc = connection<N>(gj);
    const Connection<N> hc = connection<N>(hj);
    const Mat<N> ric = ricci<N>(gc);

    // V^k = g^{rs} (gGamma - hGamma)^k_rs and its first derivatives.
    std::array<double, N> v{};
    Mat<N> dv{};  // dv[m][k] = d_m V^k
    for (int k = 0; k < N; ++k) {
        for (int r = 0; r < N; ++r) {
            for (int s = 0; s < N; ++s) {
                const double diff = gc.gamma[k][r][s] - hc.gamma[k][r][s];
                v[k] += gc.inv[r][s] * diff;
                for (int m = 0; m < N; ++m) {
                    dv[m][k] += gc.d_inv[m][r][s] * diff +
                                gc.inv[r][s] * (gc.d_gamma[m][k][r][s] - hc.d_gamma[m][k][r][s]);
                }
            }
        }
    }

    Mat<N> flow{};
    const double shift = geom.hyperbolic() ? 2.0 * (N - 1) : 0.0;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            double lie = 0.0;
            for (int k = 0; k < N; ++k) {
                lie += v[k] * gj.d[k][i][j] + gj.g[k][j] * dv[i][k] + gj.g[i][k] * dv[j][k];
            }
            flow[i][j] = -2.0 * ric[i][j] + lie - shift * gj.g[i][j];
        }
    }

    // h-nabla g, T[k][i][j] = d_k g_ij - hGamma^l_ki g_lj - hGamma^l_kj g_il.
    Tensor3<N> grad{};
    for (int k = 0; k < N; ++k) {
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                double s = gj.d[k][i][j];
                for (int l = 0; l < N; ++l) {
                    s -= hc.gamma[l][k][i] * gj.g[l][j] + hc.gamma[l][k][j] * gj.g[i][l];
                }
                grad[k][i][j] = s;
            }
        }
    }

    OracleSample out;
    const double h11 = hj.g[1][1];
    out.d_a = grad[0][0][0];
    out.d_b = grad[0][1][1] / h11;
    out.mixed = grad[1][0][1] / h11;
    for (int k = 0; k < N; ++k) {
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                out.gradient_norm_squared += grad[k][i][j] * grad[k][i][j] /
                                             (hj.g[k][k] * hj.g[i][i] * hj.g[j][j]);
            }
        }
    }
    out.rate_a = flow[0][0];
    out.rate_b = flow[1][1] / h11;
    out.deturck = v[0];
    out.ricci_radial = ric[0][0];
    out.ricci_angular = ric[1][1] / h11;
    return out;
}

}  // namespace

ProfilePair random_profile_pair(std::mt19937_64& rng, double amplitude) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> width(0.5, 2.0);
    ProfilePair pair;
    const double c0 = 0.5 * amplitude * unit(rng);
    pair.a = {c0, amplitude * unit(rng), 0.3 * amplitude * unit(rng), width(rng)};
    pair.b = {c0, amplitude * unit(rng), 0.3 * amplitude * unit(rng), width(rng)};
    return pair;
}

RadialMetricState sample_profile(const ProfilePair& pair, const RadialGrid& grid) {
    std::vector<double> a(grid.size());
    std::vector<double> b(grid.size());
    for (int j = 0; j <= grid.intervals(); ++j) {
        a[j] = pair.a(grid.node(j));
        b[j] = pair.b(grid.node(j));
    }
    return {grid, std::move(a), std::move(b)};
}

OracleSample coordinate_oracle(const BackgroundGeometry& geom, const ProfilePair& pair,
                               double rho) {
    if (!(rho > 0.0)) throw DomainError("coordinate oracle needs rho > 0");
    switch (geom.dimension) {
        case 2: return evaluate<2>(geom, pair, rho);
        case 3: return evaluate<3>(geom, pair, rho);
        case 4: return evaluate<4>(geom, pair, rho);
        default: throw ConfigError("coordinate oracle supports dimensions 2 to 4");
    }
}

}  // namespace hypstab::suite
