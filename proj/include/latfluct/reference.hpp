#pragma once

#include "latfluct/montecarlo.hpp"
#include "latfluct/realspace.hpp"

namespace latfluct {
// Plain serial baselines. They share no loop structure with the OpenMP
// kernels: one streaming accumulator, full-box site loops, no band skipping
// and no separable-product shortcuts. Tests pin the production kernels
// against these; the bench target times both.
namespace reference {

McEstimate run_mc_stream(const ProcessConfig& cfg, const TestFunction& h,
                         std::int64_t n_replicates, std::uint64_t seed);

double indicator_mean_direct(const ConvexBody& K, double R, double a, const Vec& shift);
double indicator_variance_direct(const ConvexBody& K, double R, double a, const Vec& shift);

} // namespace reference
} // namespace latfluct
