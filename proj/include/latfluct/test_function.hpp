#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>

#include "latfluct/body.hpp"
#include "latfluct/vec.hpp"

namespace latfluct {

// Test function h with both real-space and Fourier-side evaluators.
// Fourier normalization: hhat(l) = \int h(x) e^{-2 pi i <x,l>} dx.
//
// All functions in the catalog are real and even, so hhat is real-valued;
// fourier() still returns complex so that generic quadratures can track the
// imaginary residue.
class TestFunction {
public:
    virtual ~TestFunction() = default;

    virtual std::string key() const = 0;
    int dim() const { return d_; }

    // Real-space side. Fourier-only functions (sobolev-g) have no evaluator.
    virtual bool has_realspace() const { return true; }
    virtual double evaluate(const Vec& x) const = 0;

    virtual std::complex<double> fourier(const Vec& lam) const = 0;
    virtual bool fourier_is_analytic() const { return true; }
    // False when requested frequencies lie beyond an internal truncation.
    virtual bool fourier_covers(const Vec& lam) const {
        (void)lam;
        return true;
    }
    // Upper bound on sup |hhat|, used in truncation-tail estimates.
    virtual double fourier_sup_bound() const = 0;
    // Monotone bound on |hhat(lam)| over |lam| >= s; defaults to the sup.
    virtual double fourier_envelope(double s) const {
        (void)s;
        return fourier_sup_bound();
    }

    // Structure flags steering the spectral quadrature strategy.
    virtual bool is_indicator() const { return false; }
    virtual std::optional<ConvexBody> body() const { return std::nullopt; }
    virtual bool is_radial_fourier() const { return false; }
    virtual double fourier_radial(double s) const; // profile hhat(|lam|=s)
    virtual bool is_separable_fourier() const { return false; }
    virtual double fourier_factor(double t) const; // per-coordinate factor

    // Characteristic wavelength of hhat oscillations (sets quadrature panel
    // widths); transforms of compact bodies oscillate at ~1/diameter.
    virtual double fourier_oscillation_scale() const { return 1.0; }

    // Fourier transform of h^2 (resonance term of the variance expansion).
    // For indicators h^2 = h.
    virtual bool has_fourier_of_square() const { return is_indicator(); }
    virtual std::complex<double> fourier_of_square(const Vec& lam) const;
    virtual double fourier_of_square_factor(double t) const;

    virtual double integral() const = 0; // \int h
    virtual double l2_sq() const = 0;    // \int h^2

    // Gaussian-weighted Plancherel mass \int |hhat(lam)|^2 e^{-c |lam|^2} dlam,
    // c > 0. Every continuum (m = 0) variance term reduces to this.
    virtual double fourier_sq_gaussian_mass(double c) const;
    virtual bool in_h1() const { return false; }
    virtual double gradient_energy() const; // \int |grad h|^2; +inf outside H^1

    // Truncation metadata: monotone radial bound |h(x)| <= tail_envelope(|x|)
    // and the radius beyond which the envelope drops below tol.
    virtual double effective_radius(double tol) const = 0;
    virtual double tail_envelope(double rho) const = 0;
    virtual double sup_norm() const { return 1.0; }

protected:
    explicit TestFunction(int d) : d_(d) { Vec::check_dim(d); }

private:
    int d_;
};

using TestFunctionPtr = std::shared_ptr<const TestFunction>;

// Catalog keys: "zero", "cube", "ball:r=<real>", "gauss:pi",
// "sobolev-g:eps=<real>,M=<int>".
TestFunctionPtr make_test_function(const std::string& key, int d);

TestFunctionPtr make_zero(int d);
TestFunctionPtr make_cube_indicator(int d);
TestFunctionPtr make_ball_indicator(int d, double r);
TestFunctionPtr make_gaussian_bump(int d); // h(x) = exp(-pi |x|^2)
TestFunctionPtr make_indicator(const ConvexBody& body);

// Validation-grade numeric Fourier transform: quadrature of h(x/scale)
// against e^{-2 pi i <x,lam>} over the (dilated) effective support.
std::complex<double> numeric_fourier(const TestFunction& h, const Vec& lam,
                                     double abs_tol = 1e-9, double scale = 1.0);

} // namespace latfluct
