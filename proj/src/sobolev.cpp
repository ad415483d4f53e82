#include "latfluct/sobolev.hpp"

#include <cmath>
#include <numbers>

#include "latfluct/error.hpp"
#include "latfluct/quadrature.hpp"

namespace latfluct {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kBumpRadius = 0.25;
} // namespace

void SobolevSpec::validate() const {
    if (d < 2 || d > kMaxDim) throw validation_error("sobolev-g requires d in {2,3}");
    if (!(eps > 0.0 && eps < 0.25)) throw validation_error("sobolev-g requires eps in (0,1/4)");
    if (M < 1) throw validation_error("sobolev-g requires M >= 1");
}

double SobolevSpec::b(std::int64_t m_abs) const {
    return std::pow(static_cast<double>(m_abs), -1.0 / (d + 1));
}

double SobolevSpec::c(std::int64_t m_abs) const {
    return std::pow(static_cast<double>(m_abs), -1.0 - eps - 1.0 / (d + 1));
}

double bump_profile(double radius) {
    const double u = 4.0 * radius;
    if (!(u < 1.0)) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

GValue sobolev_G(const SobolevSpec& spec, const Vec& lam) {
    spec.validate();
    if (lam.dim() != spec.d) throw validation_error("sobolev_G: dimension mismatch");
    const double l1 = lam[0];
    if (std::abs(l1) > spec.M + 0.5) return {0.0, true};
    const std::int64_t j = std::llround(l1);
    if (j == 0) return {0.0, false};
    // bumps are pairwise disjoint (support radius b_m/4 <= 1/4 < spacing/2),
    // so only the bump at the nearest axis site can contain lam
    Vec delta = lam;
    delta[0] -= static_cast<double>(j);
    const std::int64_t ja = std::llabs(j);
    const double bm = spec.b(ja);
    const double rho = bump_profile(delta.norm() / bm);
    return {spec.c(ja) * rho, false};
}

double sobolev_l1_series(const SobolevSpec& spec, int n_terms) {
    double s = 0.0;
    for (int l = 1; l <= n_terms; ++l)
        s += 2.0 * spec.c(l) * std::pow(spec.b(l), spec.d);
    return s;
}

double sobolev_l2_series(const SobolevSpec& spec, int n_terms) {
    double s = 0.0;
    for (int l = 1; l <= n_terms; ++l) {
        const double c = spec.c(l);
        s += 2.0 * c * c * std::pow(spec.b(l), spec.d);
    }
    return s;
}

namespace {

// \int_{R^d} rho(x)^p |x|^w dx by radial reduction; the profile is smooth and
// flat at the support edge, so fixed-order panels converge fast.
double bump_moment(int d, int p, int w) {
    const double omega = 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
    const double val = quad::panel_integrate(
        [&](double s) {
            return std::pow(bump_profile(s), p) * std::pow(s, d - 1 + w);
        },
        0.0, kBumpRadius, 16, 12);
    return omega * val;
}

class SobolevG final : public TestFunction {
public:
    explicit SobolevG(const SobolevSpec& spec) : TestFunction(spec.d), spec_(spec) {
        spec_.validate();
        j_rho_ = bump_moment(spec_.d, 1, 0);
        j_rho2_ = bump_moment(spec_.d, 2, 0);
        j_rho2w_ = bump_moment(spec_.d, 2, 2);
    }

    std::string key() const override {
        return "sobolev-g:eps=" + std::to_string(spec_.eps) + ",M=" + std::to_string(spec_.M);
    }

    bool has_realspace() const override { return false; }
    double evaluate(const Vec&) const override {
        throw not_samplable_error("sobolev-g is defined on the Fourier side only");
    }

    std::complex<double> fourier(const Vec& lam) const override {
        return sobolev_G(spec_, lam).value;
    }
    bool fourier_covers(const Vec& lam) const override {
        return std::abs(lam[0]) <= spec_.M + 0.5;
    }
    double fourier_sup_bound() const override { return spec_.c(1); } // c_1 = 1

    double integral() const override { return 0.0; } // G(0) = 0
    double l2_sq() const override { return sobolev_l2_series(spec_, spec_.M) * j_rho2_; }

    double fourier_sq_gaussian_mass(double c) const override {
        // per-bump: c_m^2 b_m^d \int rho(mu)^2 e^{-c |m e_1 + b_m mu|^2} dmu
        double total = 0.0;
        for (int l = 1; l <= spec_.M; ++l) {
            const double bm = spec_.b(l);
            const double cm = spec_.c(l);
            const double nearest = l - bm * kBumpRadius;
            if (c * nearest * nearest > 45.0 && total > 0.0) break;
            total += 2.0 * cm * cm * std::pow(bm, spec_.d) * bump_gaussian_factor(l, bm, c);
        }
        return total;
    }

    bool in_h1() const override { return true; }
    double gradient_energy() const override {
        // 4 pi^2 sum c_m^2 b_m^d (|m|^2 J2 + b_m^2 J2w), exact for truncated G
        double s = 0.0;
        for (int l = 1; l <= spec_.M; ++l) {
            const double bm = spec_.b(l);
            const double cm = spec_.c(l);
            s += 2.0 * cm * cm * std::pow(bm, spec_.d) *
                 (static_cast<double>(l) * l * j_rho2_ + bm * bm * j_rho2w_);
        }
        return 4.0 * kPi * kPi * s;
    }

    double effective_radius(double) const override {
        throw not_samplable_error("sobolev-g has no finite effective radius");
    }
    double tail_envelope(double) const override {
        throw not_samplable_error("sobolev-g has no real-space tail envelope");
    }
    double sup_norm() const override { return sobolev_l1_series(spec_, spec_.M) * j_rho_; }

    const SobolevSpec& spec() const { return spec_; }

private:
    // \int rho(mu)^2 e^{-c |l e_1 + b mu|^2} dmu over the unit bump support.
    double bump_gaussian_factor(int l, double b, double c) const {
        const auto& rule = quad::gauss_legendre(20);
        const int d = dim();
        double total = 0.0;
        if (d == 2) {
            for (std::size_t i = 0; i < rule.x.size(); ++i) {
                const double u = kBumpRadius * rule.x[i];
                for (std::size_t jj = 0; jj < rule.x.size(); ++jj) {
                    const double v = kBumpRadius * rule.x[jj];
                    const double rho = bump_profile(std::sqrt(u * u + v * v));
                    const double x1 = l + b * u;
                    const double x2 = b * v;
                    total += rule.w[i] * rule.w[jj] * rho * rho *
                             std::exp(-c * (x1 * x1 + x2 * x2));
                }
            }
            return total * kBumpRadius * kBumpRadius;
        }
        // d == 3
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double u = kBumpRadius * rule.x[i];
            for (std::size_t jj = 0; jj < rule.x.size(); ++jj) {
                const double v = kBumpRadius * rule.x[jj];
                for (std::size_t kk = 0; kk < rule.x.size(); ++kk) {
                    const double w = kBumpRadius * rule.x[kk];
                    const double rho = bump_profile(std::sqrt(u * u + v * v + w * w));
                    const double x1 = l + b * u;
                    total += rule.w[i] * rule.w[jj] * rule.w[kk] * rho * rho *
                             std::exp(-c * (x1 * x1 + v * v * b * b + w * w * b * b));
                }
            }
        }
        return total * kBumpRadius * kBumpRadius * kBumpRadius;
    }

    SobolevSpec spec_;
    double j_rho_ = 0.0;
    double j_rho2_ = 0.0;
    double j_rho2w_ = 0.0;
};

} // namespace

TestFunctionPtr make_sobolev_g(const SobolevSpec& spec) {
    return std::make_shared<SobolevG>(spec);
}

TestFunctionPtr parse_sobolev_key(const std::string& key, int d) {
    SobolevSpec spec;
    spec.d = d;
    const std::string args = key.substr(std::string("sobolev-g:").size());
    std::size_t pos = 0;
    while (pos < args.size()) {
        std::size_t next = args.find(',', pos);
        if (next == std::string::npos) next = args.size();
        const std::string item = args.substr(pos, next - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw validation_error("bad sobolev-g key: " + key);
        const std::string name = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (name == "eps")
            spec.eps = std::stod(value);
        else if (name == "M")
            spec.M = std::stoi(value);
        else
            throw validation_error("unknown sobolev-g parameter: " + name);
        pos = next + 1;
    }
    return make_sobolev_g(spec);
}

} // namespace latfluct
