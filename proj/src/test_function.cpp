#include "latfluct/test_function.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "latfluct/error.hpp"
#include "latfluct/quadrature.hpp"
#include "latfluct/sobolev.hpp"

namespace latfluct {

namespace {

constexpr double kPi = std::numbers::pi;

double unit_sphere_area(int d) {
    // omega_{d-1} = 2 pi^{d/2} / Gamma(d/2)
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

// hhat for the ball of radius r in R^d at |lam| = s. Closed radial forms:
//   d=1: 2r sinc(2 pi r s)
//   d=2: r J_1(2 pi r s)/s
//   d=3: (sin x - x cos x)/(2 pi^2 s^3), x = 2 pi r s
double ball_fourier_radial(int d, double r, double s) {
    const double x = 2.0 * kPi * r * std::abs(s);
    if (d == 1) return 2.0 * r * sinc(x);
    if (d == 2) {
        if (x < 1e-4) {
            const double x2 = x * x;
            return kPi * r * r * (1.0 - x2 / 8.0 + x2 * x2 / 192.0);
        }
        return r * boost::math::cyl_bessel_j(1, x) / std::abs(s);
    }
    // d == 3
    if (x < 0.1) {
        const double x2 = x * x;
        const double num = x * x2 * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0);
        const double vol_ratio = num / (x * x2 / 3.0);
        return (4.0 / 3.0) * kPi * r * r * r * vol_ratio;
    }
    const double s3 = std::abs(s) * s * s;
    return (std::sin(x) - x * std::cos(x)) / (2.0 * kPi * kPi * std::abs(s3));
}

// 4 pi^2 \int |hhat|^2 |lam|^2 dlam for a radial transform, by 1-d quadrature.
double radial_gradient_energy(int d, const std::function<double(double)>& profile,
                              double cutoff) {
    const auto f = [&](double s) {
        const double v = profile(s);
        return v * v * std::pow(s, d + 1);
    };
    const double val = quad::adaptive_integrate(f, 0.0, cutoff, 1e-13);
    return 4.0 * kPi * kPi * unit_sphere_area(d) * val;
}

// omega_{d-1} \int_0^T profile(s)^2 e^{-c s^2} s^{d-1} ds with the cutoff taken
// from the Gaussian factor (e^{-42} tail).
double radial_gaussian_mass(int d, const std::function<double(double)>& profile, double c) {
    const double T = std::sqrt(42.0 / c);
    const int panels = std::max(8, static_cast<int>(std::ceil(T / 0.25)));
    const double val = quad::panel_integrate(
        [&](double s) {
            const double v = profile(s);
            return v * v * std::exp(-c * s * s) * std::pow(s, d - 1);
        },
        0.0, T, panels, 10);
    return unit_sphere_area(d) * val;
}

// One separable factor of the mass: \int f(t)^2 e^{-c t^2} dt over R.
double separable_gaussian_mass_1d(const std::function<double(double)>& factor, double c) {
    const double T = std::sqrt(42.0 / c);
    const int panels = std::max(8, static_cast<int>(std::ceil(T / 0.5)));
    const double half = quad::panel_integrate(
        [&](double t) {
            const double v = factor(t);
            return v * v * std::exp(-c * t * t);
        },
        0.0, T, panels, 12);
    return 2.0 * half;
}

class ZeroFunction final : public TestFunction {
public:
    explicit ZeroFunction(int d) : TestFunction(d) {}
    std::string key() const override { return "zero"; }
    double evaluate(const Vec&) const override { return 0.0; }
    std::complex<double> fourier(const Vec&) const override { return 0.0; }
    double fourier_sup_bound() const override { return 0.0; }
    bool is_radial_fourier() const override { return true; }
    double fourier_radial(double) const override { return 0.0; }
    bool is_separable_fourier() const override { return false; }
    double integral() const override { return 0.0; }
    double l2_sq() const override { return 0.0; }
    bool in_h1() const override { return true; }
    double gradient_energy() const override { return 0.0; }
    bool has_fourier_of_square() const override { return true; }
    std::complex<double> fourier_of_square(const Vec&) const override { return 0.0; }
    double fourier_sq_gaussian_mass(double) const override { return 0.0; }
    double effective_radius(double) const override { return 0.0; }
    double tail_envelope(double) const override { return 0.0; }
    double sup_norm() const override { return 0.0; }
};

class CubeIndicator final : public TestFunction {
public:
    explicit CubeIndicator(int d) : TestFunction(d) {}
    std::string key() const override { return "cube"; }
    double evaluate(const Vec& x) const override {
        for (int i = 0; i < dim(); ++i)
            if (std::abs(x[i]) > 0.5) return 0.0;
        return 1.0;
    }
    std::complex<double> fourier(const Vec& lam) const override {
        double v = 1.0;
        for (int i = 0; i < dim(); ++i) v *= sinc(kPi * lam[i]);
        return v;
    }
    double fourier_sup_bound() const override { return 1.0; }
    bool is_indicator() const override { return true; }
    std::optional<ConvexBody> body() const override { return make_cube(dim()); }
    bool is_separable_fourier() const override { return true; }
    double fourier_factor(double t) const override { return sinc(kPi * t); }
    double fourier_of_square_factor(double t) const override { return fourier_factor(t); }
    double integral() const override { return 1.0; }
    double l2_sq() const override { return 1.0; }
    double fourier_sq_gaussian_mass(double c) const override {
        const double one_dim = separable_gaussian_mass_1d([](double t) { return sinc(kPi * t); }, c);
        return std::pow(one_dim, dim());
    }
    double effective_radius(double) const override {
        return 0.5 * std::sqrt(static_cast<double>(dim()));
    }
    double tail_envelope(double rho) const override {
        return rho <= 0.5 * std::sqrt(static_cast<double>(dim())) ? 1.0 : 0.0;
    }
};

class BallIndicator final : public TestFunction {
public:
    BallIndicator(int d, double r) : TestFunction(d), r_(r) {
        if (r <= 0) throw validation_error("ball radius must be positive");
    }
    std::string key() const override { return "ball:r=" + std::to_string(r_); }
    double evaluate(const Vec& x) const override { return x.norm_sq() <= r_ * r_ ? 1.0 : 0.0; }
    std::complex<double> fourier(const Vec& lam) const override {
        return ball_fourier_radial(dim(), r_, lam.norm());
    }
    double fourier_sup_bound() const override { return make_ball(dim(), r_).volume(); }
    double fourier_envelope(double s) const override {
        // |J_nu| <= sqrt(2/(pi x)) turns the radial forms into s^{-(d+1)/2} decay
        const double sup = fourier_sup_bound();
        if (s <= 0) return sup;
        const double x = 2.0 * kPi * r_ * s;
        double env = sup;
        if (dim() == 1)
            env = 2.0 * r_ / x;
        else if (dim() == 2)
            env = r_ * std::sqrt(2.0 / (kPi * x)) / s;
        else
            env = (1.0 + x) / (2.0 * kPi * kPi * s * s * s);
        return std::min(sup, env);
    }
    bool is_indicator() const override { return true; }
    std::optional<ConvexBody> body() const override { return make_ball(dim(), r_); }
    bool is_radial_fourier() const override { return true; }
    double fourier_radial(double s) const override { return ball_fourier_radial(dim(), r_, s); }
    bool is_separable_fourier() const override { return dim() == 1; }
    double fourier_factor(double t) const override {
        if (dim() != 1) throw validation_error("ball transform is separable only in d=1");
        return ball_fourier_radial(1, r_, t);
    }
    double fourier_oscillation_scale() const override { return 0.5 / r_; }
    double fourier_of_square_factor(double t) const override { return fourier_factor(t); }
    double integral() const override { return make_ball(dim(), r_).volume(); }
    double l2_sq() const override { return integral(); }
    double fourier_sq_gaussian_mass(double c) const override {
        const int d = dim();
        const double r = r_;
        return radial_gaussian_mass(
            d, [d, r](double s) { return ball_fourier_radial(d, r, s); }, c);
    }
    double effective_radius(double) const override { return r_; }
    double tail_envelope(double rho) const override { return rho <= r_ ? 1.0 : 0.0; }

private:
    double r_;
};

class GaussianBump final : public TestFunction {
public:
    explicit GaussianBump(int d) : TestFunction(d) {}
    std::string key() const override { return "gauss:pi"; }
    double evaluate(const Vec& x) const override { return std::exp(-kPi * x.norm_sq()); }
    std::complex<double> fourier(const Vec& lam) const override {
        // self-dual under this normalization
        return std::exp(-kPi * lam.norm_sq());
    }
    double fourier_sup_bound() const override { return 1.0; }
    double fourier_envelope(double s) const override { return std::exp(-kPi * s * s); }
    bool is_radial_fourier() const override { return true; }
    double fourier_radial(double s) const override { return std::exp(-kPi * s * s); }
    bool is_separable_fourier() const override { return true; }
    double fourier_factor(double t) const override { return std::exp(-kPi * t * t); }
    double fourier_oscillation_scale() const override { return 8.0; } // no oscillation
    bool has_fourier_of_square() const override { return true; }
    std::complex<double> fourier_of_square(const Vec& lam) const override {
        return std::pow(0.5, 0.5 * dim()) * std::exp(-0.5 * kPi * lam.norm_sq());
    }
    double fourier_of_square_factor(double t) const override {
        return std::sqrt(0.5) * std::exp(-0.5 * kPi * t * t);
    }
    double integral() const override { return 1.0; }
    double l2_sq() const override { return std::pow(0.5, 0.5 * dim()); }
    double fourier_sq_gaussian_mass(double c) const override {
        // closed form: \int e^{-(2 pi + c)|lam|^2} dlam = (pi/(2 pi + c))^{d/2}
        return std::pow(kPi / (2.0 * kPi + c), 0.5 * dim());
    }
    bool in_h1() const override { return true; }
    double gradient_energy() const override {
        const int d = dim();
        return radial_gradient_energy(
            d, [](double s) { return std::exp(-kPi * s * s); }, 6.0);
    }
    double effective_radius(double tol) const override {
        if (tol >= 1.0) return 0.0;
        return std::sqrt(std::log(1.0 / tol) / kPi);
    }
    double tail_envelope(double rho) const override { return std::exp(-kPi * rho * rho); }
};

} // namespace

double TestFunction::fourier_radial(double) const {
    throw validation_error("test function has no radial Fourier profile: " + key());
}

double TestFunction::fourier_factor(double) const {
    throw validation_error("test function has no separable Fourier factor: " + key());
}

std::complex<double> TestFunction::fourier_of_square(const Vec& lam) const {
    if (is_indicator()) return fourier(lam);
    throw validation_error("Fourier transform of h^2 unavailable for: " + key());
}

double TestFunction::fourier_of_square_factor(double) const {
    throw validation_error("separable transform of h^2 unavailable for: " + key());
}

double TestFunction::fourier_sq_gaussian_mass(double) const {
    throw validation_error("Gaussian-weighted Plancherel mass unavailable for: " + key());
}

double TestFunction::gradient_energy() const {
    if (is_indicator()) return std::numeric_limits<double>::infinity();
    throw validation_error("gradient energy unavailable for: " + key());
}

TestFunctionPtr make_zero(int d) { return std::make_shared<ZeroFunction>(d); }
TestFunctionPtr make_cube_indicator(int d) { return std::make_shared<CubeIndicator>(d); }
TestFunctionPtr make_ball_indicator(int d, double r) {
    return std::make_shared<BallIndicator>(d, r);
}
TestFunctionPtr make_gaussian_bump(int d) { return std::make_shared<GaussianBump>(d); }

TestFunctionPtr make_indicator(const ConvexBody& body) {
    return body.shape == Shape::cube ? make_cube_indicator(body.d)
                                     : make_ball_indicator(body.d, body.r);
}

namespace {

// Chord reduction of the disk transform: iterated quadrature with the exact
// inner 1-d integral, independent of the Bessel closed form.
std::complex<double> numeric_fourier_disk(double radius, const Vec& lam, double tol) {
    const auto chord = [&](double th, bool re) {
        const double x1 = radius * std::sin(th);
        const double half_chord = radius * std::cos(th);
        const double inner = 2.0 * half_chord * sinc(2.0 * kPi * lam[1] * half_chord);
        const double phase = -2.0 * kPi * lam[0] * x1;
        return (re ? std::cos(phase) : std::sin(phase)) * inner * radius * std::cos(th);
    };
    const double re = quad::adaptive_integrate([&](double t) { return chord(t, true); },
                                               -0.5 * kPi, 0.5 * kPi, tol);
    const double im = quad::adaptive_integrate([&](double t) { return chord(t, false); },
                                               -0.5 * kPi, 0.5 * kPi, tol);
    return {re, im};
}

std::complex<double> numeric_fourier_1d(const TestFunction& h, double lam, double tol,
                                        double scale) {
    const double L = scale * h.effective_radius(std::min(tol, 1e-14));
    const auto part = [&](bool re) {
        return quad::adaptive_integrate(
            [&](double x) {
                const double phase = -2.0 * kPi * lam * x;
                Vec u{x / scale};
                return h.evaluate(u) * (re ? std::cos(phase) : std::sin(phase));
            },
            -L, L, tol);
    };
    return {part(true), part(false)};
}

std::complex<double> numeric_fourier_tensor2(const TestFunction& h, const Vec& lam, double tol,
                                             double scale) {
    const double L = scale * h.effective_radius(std::min(tol, 1e-14));
    const int per_unit =
        static_cast<int>(std::ceil(std::max(4.0, 4.0 * std::max(std::abs(lam[0]), std::abs(lam[1])))));
    const int np = std::max(4, static_cast<int>(std::ceil(2.0 * L * per_unit)));
    const auto& rule = quad::gauss_legendre(10);
    const double w = 2.0 * L / np;
    std::complex<double> total = 0.0;
    for (int px = 0; px < np; ++px) {
        const double cx = -L + (px + 0.5) * w;
        for (int py = 0; py < np; ++py) {
            const double cy = -L + (py + 0.5) * w;
            std::complex<double> cell = 0.0;
            for (std::size_t i = 0; i < rule.x.size(); ++i) {
                const double x = cx + 0.5 * w * rule.x[i];
                for (std::size_t j = 0; j < rule.x.size(); ++j) {
                    const double y = cy + 0.5 * w * rule.x[j];
                    const double phase = -2.0 * kPi * (lam[0] * x + lam[1] * y);
                    const double hv = h.evaluate(Vec{x / scale, y / scale});
                    cell += rule.w[i] * rule.w[j] *
                            std::complex<double>(hv * std::cos(phase), hv * std::sin(phase));
                }
            }
            total += 0.25 * w * w * cell;
        }
    }
    return total;
}

} // namespace

std::complex<double> numeric_fourier(const TestFunction& h, const Vec& lam, double abs_tol,
                                     double scale) {
    if (!h.has_realspace()) throw not_samplable_error("no real-space evaluator: " + h.key());
    if (h.sup_norm() == 0.0) return 0.0;
    if (h.dim() == 1) return numeric_fourier_1d(h, lam[0], abs_tol, scale);
    if (h.dim() == 2) {
        const auto b = h.body();
        if (b && b->shape == Shape::ball) return numeric_fourier_disk(scale * b->r, lam, abs_tol);
        return numeric_fourier_tensor2(h, lam, abs_tol, scale);
    }
    throw validation_error("numeric Fourier transform supported for d <= 2 only");
}

TestFunctionPtr make_test_function(const std::string& key, int d) {
    if (key == "zero") return make_zero(d);
    if (key == "cube") return make_cube_indicator(d);
    if (key == "gauss:pi") return make_gaussian_bump(d);
    if (key.rfind("ball:r=", 0) == 0) {
        const double r = std::stod(key.substr(7));
        return make_ball_indicator(d, r);
    }
    if (key.rfind("sobolev-g:", 0) == 0) return parse_sobolev_key(key, d);
    throw validation_error("unknown test function key: " + key);
}

} // namespace latfluct
