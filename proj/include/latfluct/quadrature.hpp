#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "latfluct/error.hpp"

namespace latfluct {

// sin(x)/x, Taylor series below 1e-4 to avoid 0/0 cancellation.
inline double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
    }
    return std::sin(x) / x;
}

// Mass of [lo,hi] under the density (a*pi)^{-1/2} exp(-t^2/a). The erfc
// branches keep relative accuracy in the far tails.
inline double gauss_interval_mass(double lo, double hi, double a) {
    const double s = 1.0 / std::sqrt(a);
    const double l = lo * s, h = hi * s;
    if (l >= 0.0) return 0.5 * (std::erfc(l) - std::erfc(h));
    if (h <= 0.0) return 0.5 * (std::erfc(-h) - std::erfc(-l));
    return 0.5 * (std::erf(h) - std::erf(l));
}

namespace quad {

struct Rule {
    std::vector<double> x; // nodes
    std::vector<double> w; // weights
};

// Gauss-Legendre rule on [-1,1]; cached per order.
const Rule& gauss_legendre(int order);

// Gauss-Hermite rule for weight exp(-t^2) on R; cached per order.
const Rule& gauss_hermite(int order);

// Composite Gauss-Legendre over [a,b] with n_panels equal panels.
template <class F>
double panel_integrate(F&& f, double a, double b, int n_panels, int order) {
    const Rule& rule = gauss_legendre(order);
    const double w = (b - a) / n_panels;
    double total = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        const double lo = a + p * w;
        const double mid = lo + 0.5 * w;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i)
            s += rule.w[i] * f(mid + 0.5 * w * rule.x[i]);
        total += 0.5 * w * s;
    }
    return total;
}

// Adaptive 1-d integration (Gauss-Kronrod 15 with bisection), absolute-ish
// tolerance; returns the value, writes the error estimate if requested.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol, double* err_estimate = nullptr, int max_depth = 17);

// Integral over the disk {|x| <= R} in polar panels. Angular panel count grows
// linearly with the radius so oscillatory integrands stay resolved.
double disk_integrate(const std::function<double(double, double)>& f, double R,
                      double radial_panel_width = 0.25, double arc_panels_per_unit = 4.0,
                      int order = 8);

} // namespace quad

enum class QuadScheme { radial_1d, separable_1d, tensor_adaptive, mc_importance };

struct QuadratureSpec {
    QuadScheme scheme = QuadScheme::tensor_adaptive;
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    std::int64_t max_evals = 200'000'000;

    void validate() const {
        if (abs_tol <= 0 || rel_tol <= 0) throw validation_error("quadrature tolerances must be positive");
        if (max_evals <= 0) throw validation_error("quadrature budget must be positive");
    }
};

} // namespace latfluct
