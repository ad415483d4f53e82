#include "latfluct/window.hpp"

#include <algorithm>
#include <cmath>

#include "latfluct/error.hpp"

namespace latfluct {

namespace {

double shell_count(int d, std::int64_t l) {
    // number of sites with |n|_inf == l
    const double out = std::pow(2.0 * l + 1.0, d);
    const double in = std::pow(2.0 * l - 1.0, d);
    return out - in;
}

} // namespace

LatticeWindow make_window(const TestFunction& h, double R, double a, double tol,
                          bool zeta_margin, double buffer_c) {
    if (!h.has_realspace())
        throw not_samplable_error("test function has no finite effective radius: " + h.key());
    if (tol <= 0) throw validation_error("window tolerance must be positive");

    LatticeWindow w;
    w.d = h.dim();
    if (h.sup_norm() == 0.0) {
        for (int i = 0; i < w.d; ++i) {
            w.lo[i] = 0;
            w.hi[i] = -1;
        }
        return w; // empty: the zero function contributes nothing anywhere
    }

    const double sqrt_a = std::sqrt(a);
    const double buffer = buffer_c * sqrt_a;
    const double mz = zeta_margin ? std::sqrt(static_cast<double>(w.d)) : 0.0;
    const double radius = R * h.effective_radius(std::min(tol, 1e-14)) + buffer + mz;
    const std::int64_t W = static_cast<std::int64_t>(std::ceil(radius)) + 1;
    for (int i = 0; i < w.d; ++i) {
        w.lo[i] = -W;
        w.hi[i] = W;
    }

    // Excluded-site bound: for |n|_inf = l,
    //   E|h((n+xi+zeta)/R)| <= env((l - mz - c sqrt a)/R) + sup|h| d erfc(s/sqrt a),
    // s = displacement needed to re-enter the buffered support.
    const double sup = h.sup_norm();
    double bound = 0.0;
    double prev = -1.0;
    std::int64_t l = W + 1;
    const std::int64_t l_cap = W + 100000;
    for (; l <= l_cap; ++l) {
        const double env_arg = std::max(0.0, (static_cast<double>(l) - mz - buffer)) / R;
        const double env = h.tail_envelope(env_arg);
        const double s = std::max(buffer, static_cast<double>(l) - mz - radius + buffer);
        const double slip = sup * w.d * std::erfc(s / sqrt_a);
        const double term = shell_count(w.d, l) * (std::min(sup, env) + slip);
        bound += term;
        // stop once terms decay geometrically and the remainder is negligible
        if (prev > 0.0 && term < 0.5 * prev && term < 1e-3 * tol) {
            bound += term; // remainder sum bounded by a geometric tail <= term
            break;
        }
        prev = term;
        if (term == 0.0) break;
    }
    if (l > l_cap)
        throw validation_error("window tolerance unreachable: tail envelope not summable for " +
                               h.key());
    w.tail_bound = bound;
    if (w.tail_bound > tol)
        throw validation_error("window tolerance unreachable at requested tol for " + h.key());
    return w;
}

} // namespace latfluct
