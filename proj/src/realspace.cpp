#include "latfluct/realspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "latfluct/error.hpp"
#include "latfluct/quadrature.hpp"
#include "latfluct/window.hpp"

namespace latfluct {
namespace realspace {

namespace {

constexpr double kPi = std::numbers::pi;

double phi1(double t, double a) { return std::exp(-t * t / a) / std::sqrt(a * kPi); }

// Gaussian mass of a ball: P(|xi - c| <= rho), reduced to one axis. The
// integrand is restricted to the window where the 1-d Gaussian factor is
// non-negligible, then integrated adaptively in the angle variable.
double ball_mass(double c1, double rho, double a, int d) {
    if (d == 1) return gauss_interval_mass(c1 - rho, c1 + rho, a);
    const double T = 7.5 * std::sqrt(a);
    const double s_lo = std::max(-1.0, (-T - c1) / rho);
    const double s_hi = std::min(1.0, (T - c1) / rho);
    if (s_lo >= s_hi) return 0.0; // the Gaussian window misses the ball entirely
    const double th_lo = std::asin(s_lo);
    const double th_hi = std::asin(s_hi);
    const auto cross_section = [&](double s) {
        // (d-1)-dim Gaussian mass of the chord ball of radius s
        return d == 2 ? std::erf(s / std::sqrt(a)) : -std::expm1(-s * s / a);
    };
    const auto f = [&](double th) {
        const double ct = std::cos(th);
        return phi1(c1 + rho * std::sin(th), a) * cross_section(rho * ct) * rho * ct;
    };
    const double p = quad::adaptive_integrate(f, th_lo, th_hi, 1e-13);
    return std::clamp(p, 0.0, 1.0);
}

// Per-axis interval masses q_j(n) for the cube; sums over Z truncated where
// the mass falls below the erfc floor.
struct AxisMasses {
    std::int64_t lo = 0;
    std::vector<double> q;
    double sum1 = 0.0;
    double sum2 = 0.0;
};

AxisMasses cube_axis_masses(double R, double a, double shift_j) {
    AxisMasses m;
    const double B = 12.0 * std::sqrt(a) + 2.0;
    m.lo = static_cast<std::int64_t>(std::floor(-0.5 * R + shift_j - B));
    const std::int64_t hi = static_cast<std::int64_t>(std::ceil(0.5 * R + shift_j + B));
    m.q.reserve(static_cast<std::size_t>(hi - m.lo + 1));
    for (std::int64_t n = m.lo; n <= hi; ++n) {
        const double q =
            gauss_interval_mass(-0.5 * R + shift_j - n, 0.5 * R + shift_j - n, a);
        m.q.push_back(q);
        m.sum1 += q;
        m.sum2 += q * q;
    }
    return m;
}

struct BallGeometry {
    Vec shift;
    double rho;   // R * r
    double band;  // half-width of the probabilistic boundary band
    double box;   // enumeration half-width around the center
};

BallGeometry ball_geometry(const ConvexBody& K, double R, const Vec& shift, double a) {
    BallGeometry g;
    g.shift = shift;
    g.rho = R * K.r;
    g.band = 9.0 * std::sqrt(a) + 1.0;
    g.box = g.rho + g.band + 1.0;
    return g;
}

template <class PerSite>
double ball_site_sum(const ConvexBody& K, double R, double a, const Vec& shift, ExecMode mode,
                     PerSite&& per_site) {
    const BallGeometry g = ball_geometry(K, R, shift, a);
    const int d = K.d;
    Site lo{}, hi{};
    for (int i = 0; i < d; ++i) {
        lo[i] = static_cast<std::int64_t>(std::floor(shift[i] - g.box));
        hi[i] = static_cast<std::int64_t>(std::ceil(shift[i] + g.box));
    }
    LatticeWindow w;
    w.d = d;
    w.lo = lo;
    w.hi = hi;
    return block_sum(
        w.rows(),
        [&](std::int64_t row) {
            double partial = 0.0;
            for_each_site_in_row(w, row, [&](const Site& n) {
                double dist_sq = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double t = static_cast<double>(n[i]) - shift[i];
                    dist_sq += t * t;
                }
                partial += per_site(n, std::sqrt(dist_sq), g);
            });
            return partial;
        },
        mode);
}

double smooth_site_sum(const TestFunction& h, double R, double a, const Vec& offset, double tol,
                       ExecMode mode, bool want_variance, int gh_order) {
    const LatticeWindow w = make_window(h, R, a, tol, /*zeta_margin=*/true);
    return block_sum(
        w.rows(),
        [&](std::int64_t row) {
            double partial = 0.0;
            for_each_site_in_row(w, row, [&](const Site& n) {
                const Vec at = site_to_vec(n, h.dim()) + offset;
                const auto [v1, v2] = convolved_pair(h, R, a, at, gh_order);
                partial += want_variance ? v2 - v1 * v1 : v1;
            });
            return partial;
        },
        mode);
}

// Tensor Gauss-Legendre nodes on [0,1]^d with weights normalized to 1.
struct UnitCubeRule {
    std::vector<Vec> x;
    std::vector<double> w;
};

UnitCubeRule unit_cube_rule(int order, int d) {
    const auto& gl = quad::gauss_legendre(order);
    UnitCubeRule rule;
    const int n = static_cast<int>(gl.x.size());
    if (d == 1) {
        for (int i = 0; i < n; ++i) {
            rule.x.push_back(Vec{0.5 * (gl.x[i] + 1.0)});
            rule.w.push_back(0.5 * gl.w[i]);
        }
        return rule;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            rule.x.push_back(Vec{0.5 * (gl.x[i] + 1.0), 0.5 * (gl.x[j] + 1.0)});
            rule.w.push_back(0.25 * gl.w[i] * gl.w[j]);
        }
    return rule;
}

} // namespace

double inclusion_probability(const ConvexBody& K, double R, const Vec& shift, const Site& n,
                             double a) {
    if (!(R > 0) || !(a > 0)) throw validation_error("R and a must be positive");
    if (K.shape == Shape::cube) {
        double p = 1.0;
        for (int i = 0; i < K.d; ++i) {
            const double c = shift[i] - static_cast<double>(n[i]);
            p *= gauss_interval_mass(c - 0.5 * R, c + 0.5 * R, a);
        }
        return p;
    }
    double dist_sq = 0.0;
    for (int i = 0; i < K.d; ++i) {
        const double t = shift[i] - static_cast<double>(n[i]);
        dist_sq += t * t;
    }
    return ball_mass(std::sqrt(dist_sq), R * K.r, a, K.d);
}

std::pair<double, double> convolved_pair(const TestFunction& h, double R, double a,
                                         const Vec& at, int gh_order) {
    const auto& gh = quad::gauss_hermite(gh_order);
    const int d = h.dim();
    const double s = std::sqrt(a);
    const double norm = std::pow(kPi, -0.5 * d);
    double m1 = 0.0, m2 = 0.0;
    const int n = static_cast<int>(gh.x.size());
    if (d == 1) {
        for (int i = 0; i < n; ++i) {
            const double v = h.evaluate(Vec{(at[0] + s * gh.x[i]) / R});
            m1 += gh.w[i] * v;
            m2 += gh.w[i] * v * v;
        }
    } else if (d == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double v =
                    h.evaluate(Vec{(at[0] + s * gh.x[i]) / R, (at[1] + s * gh.x[j]) / R});
                const double w = gh.w[i] * gh.w[j];
                m1 += w * v;
                m2 += w * v * v;
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double v = h.evaluate(Vec{(at[0] + s * gh.x[i]) / R,
                                                    (at[1] + s * gh.x[j]) / R,
                                                    (at[2] + s * gh.x[k]) / R});
                    const double w = gh.w[i] * gh.w[j] * gh.w[k];
                    m1 += w * v;
                    m2 += w * v * v;
                }
    }
    return {norm * m1, norm * m2};
}

double indicator_mean(const ConvexBody& K, double R, double a, const Vec& shift, double tol,
                      ExecMode mode) {
    (void)tol;
    if (K.shape == Shape::cube) {
        double prod = 1.0;
        for (int i = 0; i < K.d; ++i) prod *= cube_axis_masses(R, a, shift[i]).sum1;
        return prod;
    }
    return ball_site_sum(K, R, a, shift, mode,
                         [&](const Site& n, double dist, const BallGeometry& g) {
                             if (dist <= g.rho - g.band) return 1.0; // deep interior
                             if (dist >= g.rho + g.band) return 0.0;
                             return inclusion_probability(K, R, shift, n, a);
                         });
}

double indicator_variance(const ConvexBody& K, double R, double a, const Vec& shift, double tol,
                          ExecMode mode) {
    (void)tol;
    if (K.shape == Shape::cube) {
        // sum p(1-p) = prod_j S1_j - prod_j S2_j for p = prod_j q_j(n_j)
        double p1 = 1.0, p2 = 1.0;
        for (int i = 0; i < K.d; ++i) {
            const AxisMasses m = cube_axis_masses(R, a, shift[i]);
            p1 *= m.sum1;
            p2 *= m.sum2;
        }
        return p1 - p2;
    }
    return ball_site_sum(K, R, a, shift, mode,
                         [&](const Site& n, double dist, const BallGeometry& g) {
                             if (std::abs(dist - g.rho) >= g.band) return 0.0;
                             const double p = inclusion_probability(K, R, shift, n, a);
                             return p * (1.0 - p);
                         });
}

double mean(const TestFunction& h, double R, double a, double tol, ExecMode mode) {
    if (!h.has_realspace()) throw not_samplable_error("not samplable: " + h.key());
    if (h.sup_norm() == 0.0) return 0.0;
    if (h.is_indicator()) return indicator_mean(*h.body(), R, a, Vec(h.dim()), tol, mode);
    return smooth_site_sum(h, R, a, Vec(h.dim()), tol, mode, false, 40);
}

double variance(const TestFunction& h, double R, double a, double tol, ExecMode mode) {
    if (!h.has_realspace()) throw not_samplable_error("not samplable: " + h.key());
    if (h.sup_norm() == 0.0) return 0.0;
    if (h.is_indicator()) return indicator_variance(*h.body(), R, a, Vec(h.dim()), tol, mode);
    return smooth_site_sum(h, R, a, Vec(h.dim()), tol, mode, true, 40);
}

double variance_stationary(const TestFunction& h, double R, double a, int zeta_order,
                           double tol, ExecMode mode) {
    if (!h.has_realspace()) throw not_samplable_error("not samplable: " + h.key());
    if (h.dim() > 2) throw validation_error("stationary real-space variance supports d <= 2");
    if (h.sup_norm() == 0.0) return 0.0;
    const UnitCubeRule rule = unit_cube_rule(zeta_order, h.dim());
    const bool ind = h.is_indicator();
    const ConvexBody body = ind ? *h.body() : ConvexBody{};
    double e_var = 0.0, e_mean = 0.0, e_mean_sq = 0.0;
    for (std::size_t k = 0; k < rule.x.size(); ++k) {
        const Vec zeta = rule.x[k];
        Vec neg = zeta * -1.0;
        double v, m;
        if (ind) {
            v = indicator_variance(body, R, a, neg, tol, mode);
            m = indicator_mean(body, R, a, neg, tol, mode);
        } else {
            v = smooth_site_sum(h, R, a, zeta, tol, mode, true, 40);
            m = smooth_site_sum(h, R, a, zeta, tol, mode, false, 40);
        }
        e_var += rule.w[k] * v;
        e_mean += rule.w[k] * m;
        e_mean_sq += rule.w[k] * m * m;
    }
    return e_var + (e_mean_sq - e_mean * e_mean);
}

double averaged_variance(const ConvexBody& K, double R, double a, int x_order, double tol,
                         ExecMode mode) {
    if (K.d > 2) throw validation_error("averaged variance supports d <= 2");
    const UnitCubeRule rule = unit_cube_rule(x_order, K.d);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.x.size(); ++k)
        acc += rule.w[k] * indicator_variance(K, R, a, rule.x[k], tol, mode);
    return acc;
}

std::pair<double, double> theta_periodization(const Vec& x, double a, int n_max) {
    if (!(a > 0)) throw validation_error("a must be positive");
    if (n_max < 0) throw validation_error("n_max must be nonnegative");
    double real_side = 1.0, fourier_side = 1.0;
    for (int j = 0; j < x.dim(); ++j) {
        double rs = 0.0;
        for (std::int64_t n = -n_max; n <= n_max; ++n) rs += phi1(x[j] - n, a);
        double fs = 1.0;
        for (std::int64_t m = 1; m <= n_max; ++m)
            fs += 2.0 * std::exp(-a * kPi * kPi * m * m) * std::cos(2.0 * kPi * m * x[j]);
        real_side *= rs;
        fourier_side *= fs;
    }
    return {real_side, fourier_side};
}

} // namespace realspace
} // namespace latfluct
