#include "latfluct/process.hpp"

#include <cmath>
#include <mutex>

#include "latfluct/error.hpp"
#include "latfluct/rng.hpp"

namespace latfluct {

void ProcessConfig::validate() const {
    if (d < 1 || d > kMaxDim) throw validation_error("unsupported dimension (d must be 1..3)");
    if (!(a > 0)) throw validation_error("dispersion a must be positive");
    if (!(R > 0)) throw validation_error("scale R must be positive");
}

LatticeWindow enumerate_window(const TestFunction& h, const ProcessConfig& cfg, double tol) {
    cfg.validate();
    if (h.dim() != cfg.d) throw validation_error("test function dimension mismatch");
    return make_window(h, cfg.R, cfg.a, tol, cfg.kind == ProcessKind::stationarized);
}

Realization sample_statistic(const ProcessConfig& cfg, const TestFunction& h,
                             std::uint64_t replicate, bool keep_points, ExecMode mode,
                             double tol) {
    const LatticeWindow w = enumerate_window(h, cfg, tol);
    Realization out;
    out.tail_bound = w.tail_bound;
    if (w.empty()) return out;

    const bool stationary = cfg.kind == ProcessKind::stationarized;
    const Vec zeta = stationary ? rng::uniform_shift(cfg.seed, replicate, cfg.d) : Vec(cfg.d);

    std::vector<Vec> points;
    std::mutex points_mu;

    out.value = block_sum(
        w.rows(),
        [&](std::int64_t row) {
            double partial = 0.0;
            for_each_site_in_row(w, row, [&](const Site& n) {
                Vec pos = site_to_vec(n, cfg.d) +
                          rng::gaussian_displacement(cfg.seed, replicate, n, cfg.d, cfg.a);
                if (stationary) pos = pos + zeta;
                const double v = h.evaluate(pos / cfg.R);
                partial += v;
                if (keep_points && v != 0.0) {
                    std::lock_guard<std::mutex> lock(points_mu);
                    points.push_back(pos);
                }
            });
            return partial;
        },
        mode);

    if (keep_points) out.points = std::move(points);
    return out;
}

} // namespace latfluct
