#include "latfluct/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace latfluct {
namespace quad {

namespace {

Rule compute_gauss_legendre(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

Rule compute_gauss_hermite(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const double pim4 = 0.7511255444649425; // pi^{-1/4}
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * r.x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * r.x[1];
        else
            z = 2.0 * z - r.x[i - 2];
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-14) break;
        }
        r.x[i] = z;
        r.x[n - 1 - i] = -z;
        r.w[i] = 2.0 / (pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

const Rule& cached_rule(int order, std::map<int, Rule>& cache, std::mutex& mu,
                        Rule (*compute)(int)) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute(order)).first;
    return it->second;
}

} // namespace

const Rule& gauss_legendre(int order) {
    if (order < 1 || order > 128) throw validation_error("gauss_legendre order out of range");
    static std::map<int, Rule> cache;
    static std::mutex mu;
    return cached_rule(order, cache, mu, compute_gauss_legendre);
}

const Rule& gauss_hermite(int order) {
    if (order < 1 || order > 128) throw validation_error("gauss_hermite order out of range");
    static std::map<int, Rule> cache;
    static std::mutex mu;
    return cached_rule(order, cache, mu, compute_gauss_hermite);
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol, double* err_estimate, int max_depth) {
    if (!(a < b)) {
        if (err_estimate) *err_estimate = 0.0;
        return 0.0;
    }
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, max_depth, tol, &err);
    if (err_estimate) *err_estimate = err;
    return v;
}

double disk_integrate(const std::function<double(double, double)>& f, double R,
                      double radial_panel_width, double arc_panels_per_unit, int order) {
    if (R <= 0) return 0.0;
    const Rule& rule = gauss_legendre(order);
    const int nr = std::max(4, static_cast<int>(std::ceil(R / radial_panel_width)));
    const double wr = R / nr;
    const double two_pi = 2.0 * std::numbers::pi;
    double total = 0.0;
    for (int p = 0; p < nr; ++p) {
        const double mid = (p + 0.5) * wr;
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double s = mid + 0.5 * wr * rule.x[i];
            const int nt = std::max(8, static_cast<int>(std::ceil(arc_panels_per_unit * two_pi * s)));
            const double wt = two_pi / nt;
            double ring = 0.0;
            for (int q = 0; q < nt; ++q) {
                const double tmid = (q + 0.5) * wt;
                for (std::size_t j = 0; j < rule.x.size(); ++j) {
                    const double th = tmid + 0.5 * wt * rule.x[j];
                    ring += rule.w[j] * f(s * std::cos(th), s * std::sin(th));
                }
            }
            panel += rule.w[i] * (0.5 * wt * ring) * s;
        }
        total += 0.5 * wr * panel;
    }
    return total;
}

} // namespace quad
} // namespace latfluct
