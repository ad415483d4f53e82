#include "latfluct/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "latfluct/error.hpp"

namespace latfluct {

namespace {
constexpr std::int64_t kChunk = 4096;
} // namespace

McEstimate run_mc(const ProcessConfig& cfg, const TestFunction& h, std::int64_t n_replicates,
                  std::uint64_t seed, ExecMode mode) {
    cfg.validate();
    if (n_replicates < 2) throw validation_error("run_mc requires at least 2 replicates");
    if (!h.has_realspace()) throw not_samplable_error("test function is not samplable: " + h.key());

    ProcessConfig run_cfg = cfg;
    run_cfg.seed = seed;

    const std::int64_t n_chunks = (n_replicates + kChunk - 1) / kChunk;
    std::vector<MomentAccumulator> acc(static_cast<std::size_t>(n_chunks));

    const auto fill_chunk = [&](std::int64_t c) {
        MomentAccumulator a;
        const std::int64_t begin = c * kChunk;
        const std::int64_t end = std::min(n_replicates, begin + kChunk);
        for (std::int64_t i = begin; i < end; ++i)
            a.add(sample_statistic(run_cfg, h, static_cast<std::uint64_t>(i), false,
                                   ExecMode::serial)
                      .value);
        acc[static_cast<std::size_t>(c)] = a;
    };

    if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t c = 0; c < n_chunks; ++c) fill_chunk(c);
    } else {
        for (std::int64_t c = 0; c < n_chunks; ++c) fill_chunk(c);
    }

    MomentAccumulator total;
    for (std::int64_t c = 0; c < n_chunks; ++c) total.merge(acc[static_cast<std::size_t>(c)]);

    McEstimate est;
    est.n_replicates = total.count();
    est.mean = total.mean();
    est.variance = total.variance();
    est.se_mean = total.se_mean();
    est.se_variance = total.se_variance();
    est.seed = seed;
    return est;
}

ZScore zscore(const McEstimate& est, double exact_mean, double exact_variance) {
    if (est.n_replicates < 30) throw validation_error("zscore requires >= 30 replicates");
    ZScore z;
    const auto one = [&](double disc, double se) {
        if (se == 0.0) {
            z.degenerate = true;
            return disc == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        return disc / se;
    };
    z.z_mean = one(est.mean - exact_mean, est.se_mean);
    z.z_variance = one(est.variance - exact_variance, est.se_variance);
    return z;
}

} // namespace latfluct
