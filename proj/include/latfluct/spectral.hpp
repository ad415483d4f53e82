#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "latfluct/body.hpp"
#include "latfluct/error.hpp"
#include "latfluct/parallel.hpp"
#include "latfluct/quadrature.hpp"
#include "latfluct/test_function.hpp"

namespace latfluct {
namespace spectral {

// Lattice-indexed sum with per-term breakdown. Terms are listed in ascending
// lexicographic m-order and summed in that order.
struct SpectralResult {
    double value = 0.0;
    std::vector<std::pair<Site, double>> breakdown;
    double truncation_bound = 0.0;
    int m_max = 0;
    double imag_residue = 0.0;
};

// Quadrature budget exhausted: carries whatever breakdown was computed.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(std::string msg, SpectralResult partial)
        : Error(Kind::non_convergence, std::move(msg)), partial_(std::move(partial)) {}
    const SpectralResult& partial() const { return partial_; }

private:
    SpectralResult partial_;
};

// m_max such that the Gaussian envelope tail exp(-a pi^2 m^2 / 2) is far below
// double precision: ceil(sqrt(40/(a pi^2))) + 1.
int default_m_max(double a);

// Scheme matching the structure of hhat: separable > radial > tensor.
QuadratureSpec default_quadrature(const TestFunction& h);

// E[N(h,R)] = R^d sum_m e^{-a pi^2 |m|^2} hhat(Rm).
SpectralResult mean_exact(const TestFunction& h, double R, double a, int m_max);

// E[N_s(h,R)] = R^d \int h.
double mean_stationary(const TestFunction& h, double R);

// Var(N(h,R)) = sum_m A_m(h,R) with
//   A_m = R^d [ e^{-a pi^2 |m|^2} (h^2)^(Rm)
//              - e^{-a pi^2 |m|^2/2} \int hhat(Rm/2+u) hhat(Rm/2-u)
//                                         e^{-2 a pi^2 |u|^2/R^2} du ],
// the two-factor split coming from |l|^2+|Rm-l|^2 = (R^2|m|^2+|Rm-2l|^2)/2.
// The A_0 term is R^d (\int h^2 - \int |hhat|^2 e^{-2 a pi^2 |l|^2 / R^2}).
SpectralResult variance_exact(const TestFunction& h, double R, double a, int m_max,
                              const QuadratureSpec& quad, ExecMode mode = ExecMode::parallel);

// Var(N_s(h,R)) = A_0 + R^{2d} sum_{m != 0} e^{-2 a pi^2 |m|^2} |hhat(Rm)|^2.
// The breakdown stores the continuum term under m = 0.
SpectralResult variance_stationary(const TestFunction& h, double R, double a, int m_max,
                                   const QuadratureSpec& quad,
                                   ExecMode mode = ExecMode::parallel);

// B(h,R) = R^{d-2} \int_{|l|<=R} |hhat|^2 |l|^2 + R^d \int_{|l|>=R} |hhat|^2.
double upper_bound_functional(const TestFunction& h, double R);

// Smooth branch: (a/2) \int |grad h|^2. Indicators are rejected.
double asymptotic_target_smooth(const TestFunction& h, double a);
// Surface branch: sqrt(a/(2 pi)) * surface_area(K).
double asymptotic_target_surface(const ConvexBody& K, double a);

// Decay diagnostic for indicator variance terms of a smooth body: ratios of
// R^{-d} |A_m| against the envelope e^{-a pi^2 |m|^2/2} (1+R|m|)^{-(d+1)/2}.
struct AmEnvelopeReport {
    struct Entry {
        Site m{};
        double am = 0.0;
        double envelope = 0.0;
        double ratio = 0.0;
    };
    std::vector<Entry> entries;
    double max_ratio = 0.0;
    double imag_residue = 0.0;
};

AmEnvelopeReport am_envelope_check(const TestFunction& h, double R, double a, int m_max,
                                   const QuadratureSpec& quad);

// All m in Z^d with |m|_inf <= m_max, ascending lexicographic.
std::vector<Site> enumerate_m(int d, int m_max);

} // namespace spectral
} // namespace latfluct
