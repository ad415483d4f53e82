#pragma once

#include <cstdint>

#include "latfluct/test_function.hpp"

namespace latfluct {

// Fourier-side counterexample function: a sum of shrinking bumps
//   G(lam) = sum_{m in Z, m != 0} c_m rho((lam - m e_1)/b_m),
//   b_m = |m|^{-1/(d+1)},  c_m = b_m |m|^{-1-eps},
// supported on the first coordinate axis of Z^d, truncated at |m| <= M.
// The bump profile is rho(x) = exp(1 - 1/(1-|4x|^2)) for |x| < 1/4, else 0,
// so rho(0) = 1 and supp rho lies strictly inside B_{1/2}.
struct SobolevSpec {
    int d = 2;
    double eps = 0.1;
    int M = 64;

    void validate() const;

    double b(std::int64_t m_abs) const;
    double c(std::int64_t m_abs) const; // = |m|^{-1-eps-1/(d+1)}
};

// Smooth compactly supported bump profile, radius 1/4, rho(0) = 1.
double bump_profile(double radius);

struct GValue {
    double value = 0.0;
    bool truncated = false; // lam beyond the covered range |lam_1| <= M + 1/2
};

GValue sobolev_G(const SobolevSpec& spec, const Vec& lam);

// Partial sums of the scalar series controlling G in L^1 and L^2:
// sum c_m b_m^d and sum c_m^2 b_m^d over 0 < |m| <= n_terms.
double sobolev_l1_series(const SobolevSpec& spec, int n_terms);
double sobolev_l2_series(const SobolevSpec& spec, int n_terms);

TestFunctionPtr make_sobolev_g(const SobolevSpec& spec);

// Catalog key "sobolev-g:eps=<real>,M=<int>".
TestFunctionPtr parse_sobolev_key(const std::string& key, int d);

} // namespace latfluct
