#pragma once

#include <utility>

#include "latfluct/body.hpp"
#include "latfluct/parallel.hpp"
#include "latfluct/test_function.hpp"

namespace latfluct {
namespace realspace {

// P(n + xi in K_R + shift) for xi ~ phi_a. Cube: product of 1-d Gaussian
// interval masses. Ball: 1-d quadrature of Gaussian-weighted chord masses.
double inclusion_probability(const ConvexBody& K, double R, const Vec& shift, const Site& n,
                             double a);

// (h(./R) * phi_a)(at) and (h(./R)^2 * phi_a)(at) by tensor Gauss-Hermite
// quadrature against the site-centered Gaussian weight.
std::pair<double, double> convolved_pair(const TestFunction& h, double R, double a,
                                         const Vec& at, int gh_order = 40);

// E[N(h,R)] = sum_n (h(./R) * phi_a)(n); for indicators sum_n p_n.
double mean(const TestFunction& h, double R, double a, double tol = 1e-10,
            ExecMode mode = ExecMode::parallel);

// Var(N(h,R)) = sum_n [(h_R^2*phi)(n) - ((h_R*phi)(n))^2]; for indicators the
// independent-Bernoulli form sum_n p_n (1 - p_n). Ball sums enumerate only a
// boundary band of width O(sqrt(a)); skipped sites carry an erfc tail bound.
double variance(const TestFunction& h, double R, double a, double tol = 1e-10,
                ExecMode mode = ExecMode::parallel);

// Indicator sums for a shifted body (shift in R^d). Used by the averaged and
// stationarized variants and exposed for the lattice-shift invariance checks.
double indicator_mean(const ConvexBody& K, double R, double a, const Vec& shift,
                      double tol = 1e-10, ExecMode mode = ExecMode::parallel);
double indicator_variance(const ConvexBody& K, double R, double a, const Vec& shift,
                          double tol = 1e-10, ExecMode mode = ExecMode::parallel);

// Law of total variance over the shared uniform shift:
// E_zeta[Var(.|zeta)] + Var_zeta(E[.|zeta]), tensor Gauss-Legendre in zeta.
double variance_stationary(const TestFunction& h, double R, double a, int zeta_order = 16,
                           double tol = 1e-10, ExecMode mode = ExecMode::parallel);

// \int_{[0,1]^d} Var(n(K_R + x)) dx, tensor Gauss-Legendre in x.
double averaged_variance(const ConvexBody& K, double R, double a, int x_order = 16,
                         double tol = 1e-10, ExecMode mode = ExecMode::parallel);

// Two theta series that must agree (lattice sum of phi_a vs its Fourier dual):
//   sum_{|n|<=n_max} phi_a(x-n)   and   sum_{|m|<=n_max} e^{-a pi^2 |m|^2} e(<m,x>).
std::pair<double, double> theta_periodization(const Vec& x, double a, int n_max);

} // namespace realspace
} // namespace latfluct
