#pragma once

#include <cstdint>
#include <vector>

namespace latfluct {

enum class ExecMode { serial, parallel };

// Blocked deterministic reduction. Block partials are evaluated independently
// (in parallel when mode==parallel) and then summed in block order, so the
// result is bit-identical for every thread count, including the serial mode.
template <class BlockEval>
double block_sum(std::int64_t n_blocks, BlockEval&& eval, ExecMode mode = ExecMode::parallel) {
    if (n_blocks <= 0) return 0.0;
    std::vector<double> partial(static_cast<std::size_t>(n_blocks), 0.0);
    if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < n_blocks; ++b)
            partial[static_cast<std::size_t>(b)] = eval(b);
    } else {
        for (std::int64_t b = 0; b < n_blocks; ++b)
            partial[static_cast<std::size_t>(b)] = eval(b);
    }
    double total = 0.0;
    for (std::int64_t b = 0; b < n_blocks; ++b) total += partial[static_cast<std::size_t>(b)];
    return total;
}

// Same pattern for a pair of sums accumulated in one pass.
template <class BlockEval>
std::pair<double, double> block_sum2(std::int64_t n_blocks, BlockEval&& eval,
                                     ExecMode mode = ExecMode::parallel) {
    if (n_blocks <= 0) return {0.0, 0.0};
    std::vector<double> pa(static_cast<std::size_t>(n_blocks), 0.0);
    std::vector<double> pb(static_cast<std::size_t>(n_blocks), 0.0);
    if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < n_blocks; ++b) {
            auto [x, y] = eval(b);
            pa[static_cast<std::size_t>(b)] = x;
            pb[static_cast<std::size_t>(b)] = y;
        }
    } else {
        for (std::int64_t b = 0; b < n_blocks; ++b) {
            auto [x, y] = eval(b);
            pa[static_cast<std::size_t>(b)] = x;
            pb[static_cast<std::size_t>(b)] = y;
        }
    }
    double ta = 0.0, tb = 0.0;
    for (std::int64_t b = 0; b < n_blocks; ++b) {
        ta += pa[static_cast<std::size_t>(b)];
        tb += pb[static_cast<std::size_t>(b)];
    }
    return {ta, tb};
}

} // namespace latfluct
