#pragma once

#include <cstdint>

#include "latfluct/process.hpp"
#include "latfluct/stats.hpp"

namespace latfluct {

struct McEstimate {
    std::int64_t n_replicates = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased
    double se_mean = 0.0;
    double se_variance = 0.0;
    std::uint64_t seed = 0;
};

// Replicates are split into fixed-size chunks (independent of thread count);
// chunk accumulators are merged in chunk order, so the estimate is
// bit-identical for any number of threads.
McEstimate run_mc(const ProcessConfig& cfg, const TestFunction& h, std::int64_t n_replicates,
                  std::uint64_t seed, ExecMode mode = ExecMode::parallel);

struct ZScore {
    double z_mean = 0.0;
    double z_variance = 0.0;
    bool degenerate = false; // a zero standard error was encountered
};

ZScore zscore(const McEstimate& est, double exact_mean, double exact_variance);

} // namespace latfluct
