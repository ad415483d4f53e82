#pragma once

#include <cstdint>

#include "latfluct/test_function.hpp"
#include "latfluct/vec.hpp"

namespace latfluct {

// Finite truncation of a sum over Z^d: per-axis inclusive integer bounds plus
// an upper bound on the total contribution of every excluded site.
struct LatticeWindow {
    int d = 0;
    Site lo{};
    Site hi{};
    double tail_bound = 0.0;

    bool empty() const {
        if (d == 0) return true;
        for (int i = 0; i < d; ++i)
            if (hi[i] < lo[i]) return true;
        return false;
    }
    std::int64_t extent(int axis) const { return hi[axis] - lo[axis] + 1; }
    std::int64_t rows() const { return empty() ? 0 : extent(0); }
    std::int64_t size() const {
        if (empty()) return 0;
        std::int64_t n = 1;
        for (int i = 0; i < d; ++i) n *= extent(i);
        return n;
    }
};

// Visit all sites of one axis-0 row in lexicographic order.
template <class F>
void for_each_site_in_row(const LatticeWindow& w, std::int64_t row, F&& fn) {
    Site n{};
    n[0] = w.lo[0] + row;
    if (w.d == 1) {
        fn(n);
        return;
    }
    if (w.d == 2) {
        for (n[1] = w.lo[1]; n[1] <= w.hi[1]; ++n[1]) fn(n);
        return;
    }
    for (n[1] = w.lo[1]; n[1] <= w.hi[1]; ++n[1])
        for (n[2] = w.lo[2]; n[2] <= w.hi[2]; ++n[2]) fn(n);
}

// Window covering the R-dilated effective support of h plus a Gaussian
// displacement buffer c*sqrt(a) (default c = 8; the excluded-displacement
// mass erfc(c) ~ 1e-29 is far below double noise). zeta_margin widens the
// box by one unit for the shared uniform shift of the stationarized process.
LatticeWindow make_window(const TestFunction& h, double R, double a, double tol,
                          bool zeta_margin, double buffer_c = 8.0);

} // namespace latfluct
