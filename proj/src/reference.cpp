#include "latfluct/reference.hpp"

#include <cmath>

#include "latfluct/error.hpp"
#include "latfluct/window.hpp"

namespace latfluct {
namespace reference {

McEstimate run_mc_stream(const ProcessConfig& cfg, const TestFunction& h,
                         std::int64_t n_replicates, std::uint64_t seed) {
    cfg.validate();
    if (n_replicates < 2) throw validation_error("run_mc requires at least 2 replicates");
    ProcessConfig run_cfg = cfg;
    run_cfg.seed = seed;
    MomentAccumulator acc;
    for (std::int64_t i = 0; i < n_replicates; ++i)
        acc.add(sample_statistic(run_cfg, h, static_cast<std::uint64_t>(i), false,
                                 ExecMode::serial)
                    .value);
    McEstimate est;
    est.n_replicates = acc.count();
    est.mean = acc.mean();
    est.variance = acc.variance();
    est.se_mean = acc.se_mean();
    est.se_variance = acc.se_variance();
    est.seed = seed;
    return est;
}

namespace {

template <class PerSite>
double full_box_sum(const ConvexBody& K, double R, double a, const Vec& shift,
                    PerSite&& per_site) {
    const double reach = (K.shape == Shape::ball ? R * K.r : 0.5 * R * std::sqrt(1.0 * K.d)) +
                         12.0 * std::sqrt(a) + 2.0;
    LatticeWindow w;
    w.d = K.d;
    for (int i = 0; i < K.d; ++i) {
        w.lo[i] = static_cast<std::int64_t>(std::floor(shift[i] - reach));
        w.hi[i] = static_cast<std::int64_t>(std::ceil(shift[i] + reach));
    }
    double total = 0.0;
    for (std::int64_t row = 0; row < w.rows(); ++row)
        for_each_site_in_row(w, row, [&](const Site& n) { total += per_site(n); });
    return total;
}

} // namespace

double indicator_mean_direct(const ConvexBody& K, double R, double a, const Vec& shift) {
    return full_box_sum(K, R, a, shift, [&](const Site& n) {
        return realspace::inclusion_probability(K, R, shift, n, a);
    });
}

double indicator_variance_direct(const ConvexBody& K, double R, double a, const Vec& shift) {
    return full_box_sum(K, R, a, shift, [&](const Site& n) {
        const double p = realspace::inclusion_probability(K, R, shift, n, a);
        return p * (1.0 - p);
    });
}

} // namespace reference
} // namespace latfluct
