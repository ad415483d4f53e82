// Timing comparison between the serial reference kernels and the OpenMP
// blocked kernels, on representative workloads of each sum type.

#include <chrono>
#include <cmath>
#include <cstdio>

#include <omp.h>

#include "latfluct/montecarlo.hpp"
#include "latfluct/realspace.hpp"
#include "latfluct/reference.hpp"
#include "latfluct/spectral.hpp"

using namespace latfluct;

namespace {

template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, double rel_diff) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   rel.diff %.2e\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, rel_diff);
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "openmp", "speedup");

    {
        ProcessConfig cfg;
        cfg.d = 2;
        cfg.a = 1.0;
        cfg.R = 10.0;
        const auto h = make_ball_indicator(2, 1.0);
        McEstimate ref, par;
        const double ts = time_ms([&] { ref = reference::run_mc_stream(cfg, *h, 20000, 7); });
        const double tp = time_ms([&] { par = run_mc(cfg, *h, 20000, 7); });
        report("mc replicates (ball d=2)", ts, tp,
               std::abs(ref.variance - par.variance) / ref.variance);
    }
    {
        const ConvexBody ball = make_ball(2, 1.0);
        const auto h = make_ball_indicator(2, 1.0);
        double ref = 0, par = 0;
        const double ts =
            time_ms([&] { ref = reference::indicator_variance_direct(ball, 60.0, 1.0, Vec(2)); });
        const double tp = time_ms([&] { par = realspace::variance(*h, 60.0, 1.0); });
        report("ball variance (R=60)", ts, tp, std::abs(ref - par) / ref);
    }
    {
        const auto h = make_ball_indicator(2, 1.0);
        const auto quad_radial = spectral::default_quadrature(*h);
        spectral::SpectralResult sr, pr;
        const double ts = time_ms([&] {
            sr = spectral::variance_exact(*h, 10.0, 1.0, 3, quad_radial, ExecMode::serial);
        });
        const double tp = time_ms([&] {
            pr = spectral::variance_exact(*h, 10.0, 1.0, 3, quad_radial, ExecMode::parallel);
        });
        report("spectral A_m (ball R=10)", ts, tp, std::abs(sr.value - pr.value) /
                                                       std::abs(sr.value));
    }
    return 0;
}
