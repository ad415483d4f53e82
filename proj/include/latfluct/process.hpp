#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latfluct/parallel.hpp"
#include "latfluct/test_function.hpp"
#include "latfluct/window.hpp"

namespace latfluct {

enum class ProcessKind { perturbed, stationarized };

// Gaussian-perturbed lattice in R^d: points n + xi_n (n in Z^d) with i.i.d.
// displacements xi_n of density phi_a(x) = (a pi)^{-d/2} exp(-|x|^2/a).
// The stationarized variant adds one uniform-[0,1)^d shift zeta shared by all
// sites of a realization.
struct ProcessConfig {
    int d = 1;
    double a = 1.0;
    double R = 1.0;
    ProcessKind kind = ProcessKind::perturbed;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Realization {
    double value = 0.0;      // N(h,R) = sum_n h((n + xi_n [+ zeta])/R)
    double tail_bound = 0.0; // bound on the contribution of excluded sites
    std::optional<std::vector<Vec>> points;
};

// Window covering every site whose displaced image can meaningfully reach the
// R-dilated support of h; excluded-tail bound <= tol.
LatticeWindow enumerate_window(const TestFunction& h, const ProcessConfig& cfg, double tol);

// One realization of the linear statistic. Deterministic in
// (cfg.seed, replicate): the per-site randomness is counter-based, and the
// row-blocked reduction makes the value independent of thread count.
Realization sample_statistic(const ProcessConfig& cfg, const TestFunction& h,
                             std::uint64_t replicate, bool keep_points = false,
                             ExecMode mode = ExecMode::parallel, double tol = 1e-12);

} // namespace latfluct
