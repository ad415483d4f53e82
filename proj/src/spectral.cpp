#include "latfluct/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "latfluct/rng.hpp"
#include "latfluct/stats.hpp"

namespace latfluct {
namespace spectral {

namespace {

constexpr double kPi = std::numbers::pi;

double shell_count(int d, std::int64_t l) {
    return std::pow(2.0 * l + 1.0, d) - std::pow(2.0 * l - 1.0, d);
}

template <class Weight>
double shell_tail(int d, int from, Weight&& weight) {
    double s = 0.0;
    for (std::int64_t l = from; l < from + 400; ++l) {
        const double t = shell_count(d, l) * weight(static_cast<double>(l));
        s += t;
        if (t < 1e-300) break;
    }
    return s;
}

Vec scaled_site(const Site& m, int d, double R) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = R * static_cast<double>(m[i]);
    return v;
}

double norm_sq_site(const Site& m, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += static_cast<double>(m[i]) * static_cast<double>(m[i]);
    return s;
}

bool is_zero_site(const Site& m, int d) {
    for (int i = 0; i < d; ++i)
        if (m[i] != 0) return false;
    return true;
}

// Geometry of the resonance integrals
//   I_m = \int hhat(c+u) hhat(c-u) e^{-cg |u|^2} du,  c = R m / 2,
// shared by every m != 0 scheme.
struct ResonanceGrid {
    double cg = 0.0;    // 2 a pi^2 / R^2
    double T = 0.0;     // Gaussian cutoff: e^{-cg T^2} ~ 1e-19
    double width = 0.0; // panel width resolving hhat oscillations
    int order = 12;
    int panels = 0; // per half-axis [0, T]

    static ResonanceGrid make(const TestFunction& h, double R, double a) {
        ResonanceGrid g;
        g.cg = 2.0 * a * kPi * kPi / (R * R);
        g.T = std::sqrt(44.0 / g.cg);
        g.width = std::min(2.0, 0.5 * h.fourier_oscillation_scale());
        g.panels = std::max(4, static_cast<int>(std::ceil(g.T / g.width)));
        return g;
    }

    std::int64_t evals_1d() const { return static_cast<std::int64_t>(panels) * order; }
    std::int64_t evals_2d() const {
        return static_cast<std::int64_t>(panels) * panels * order * order;
    }

    // residual Gaussian mass outside the [-T,T]^d box, times sup|hhat|^2
    double domain_tail(int d, double sup) const {
        const double one_axis = std::sqrt(kPi / cg) * std::erfc(std::sqrt(cg) * T);
        const double full = std::pow(kPi / cg, 0.5 * d);
        return sup * sup * d * one_axis * std::pow(full, (d - 1.0) / d);
    }
};

// I for a 1-d factor: \int f(c+t) f(c-t) e^{-cg t^2} dt; the integrand is
// symmetric under t -> -t.
template <class F>
double resonance_integral_1d(F&& f, double c, const ResonanceGrid& g) {
    const auto& rule = quad::gauss_legendre(g.order);
    const double w = g.T / g.panels;
    double total = 0.0;
    for (int p = 0; p < g.panels; ++p) {
        const double mid = (p + 0.5) * w;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double t = mid + 0.5 * w * rule.x[i];
            s += rule.w[i] * f(c + t) * f(c - t) * std::exp(-g.cg * t * t);
        }
        total += 0.5 * w * s;
    }
    return 2.0 * total;
}

// Envelope bound of |hhat(c+u) hhat(c-u) w(u)| * area over the panel box
// [x0,x1]x[y0,y1]; used to skip panels that cannot contribute.
double panel_bound(const TestFunction& h, double c1, double c2, double x0, double x1, double y0,
                   double y1, double cg, double area) {
    const auto axis_min = [](double lo, double hi) {
        return lo <= 0.0 && hi >= 0.0 ? 0.0 : std::min(std::abs(lo), std::abs(hi));
    };
    const double da = std::hypot(axis_min(c1 + x0, c1 + x1), axis_min(c2 + y0, c2 + y1));
    const double db = std::hypot(axis_min(c1 - x1, c1 - x0), axis_min(c2 - y1, c2 - y0));
    const double wmax =
        std::exp(-cg * (axis_min(x0, x1) * axis_min(x0, x1) + axis_min(y0, y1) * axis_min(y0, y1)));
    return h.fourier_envelope(da) * h.fourier_envelope(db) * wmax * area;
}

// 2-d resonance integral for a radial transform with center (c1, 0); the
// integrand is symmetric in both axes, so a quarter of the box suffices.
double resonance_integral_radial_2d(const TestFunction& h, double c1, const ResonanceGrid& g,
                                    double panel_skip_tol, double* skipped) {
    const auto& rule = quad::gauss_legendre(g.order);
    const double w = g.T / g.panels;
    const int n = static_cast<int>(rule.x.size());
    double total = 0.0;
    double skip_acc = 0.0;
    for (int p = 0; p < g.panels; ++p) {
        const double x0 = p * w;
        for (int q = 0; q < g.panels; ++q) {
            const double y0 = q * w;
            const double bound =
                4.0 * panel_bound(h, c1, 0.0, x0, x0 + w, y0, y0 + w, g.cg, w * w);
            if (bound < panel_skip_tol) {
                skip_acc += bound;
                continue;
            }
            double cell = 0.0;
            for (int i = 0; i < n; ++i) {
                const double u1 = x0 + 0.5 * w * (1.0 + rule.x[i]);
                for (int j = 0; j < n; ++j) {
                    const double u2 = y0 + 0.5 * w * (1.0 + rule.x[j]);
                    const double sa = std::hypot(c1 + u1, u2);
                    const double sb = std::hypot(c1 - u1, u2);
                    cell += rule.w[i] * rule.w[j] * h.fourier_radial(sa) *
                            h.fourier_radial(sb) * std::exp(-g.cg * (u1 * u1 + u2 * u2));
                }
            }
            total += 0.25 * w * w * cell;
        }
    }
    if (skipped) *skipped += skip_acc;
    return 4.0 * total;
}

// Generic 2-d resonance integral (complex evaluation, half box doubled).
std::complex<double> resonance_integral_tensor_2d(const TestFunction& h, const Vec& c,
                                                  const ResonanceGrid& g, double panel_skip_tol,
                                                  double* skipped) {
    const auto& rule = quad::gauss_legendre(g.order);
    const double w = g.T / g.panels;
    const int n = static_cast<int>(rule.x.size());
    std::complex<double> total = 0.0;
    double skip_acc = 0.0;
    for (int p = 0; p < g.panels; ++p) {
        const double x0 = p * w;
        for (int q = 0; q < 2 * g.panels; ++q) {
            const double y0 = -g.T + q * w;
            const double bound =
                2.0 * panel_bound(h, c[0], c[1], x0, x0 + w, y0, y0 + w, g.cg, w * w);
            if (bound < panel_skip_tol) {
                skip_acc += bound;
                continue;
            }
            std::complex<double> cell = 0.0;
            for (int i = 0; i < n; ++i) {
                const double u1 = x0 + 0.5 * w * (1.0 + rule.x[i]);
                for (int j = 0; j < n; ++j) {
                    const double u2 = y0 + 0.5 * w * (1.0 + rule.x[j]);
                    const Vec up{c[0] + u1, c[1] + u2};
                    const Vec um{c[0] - u1, c[1] - u2};
                    cell += rule.w[i] * rule.w[j] * h.fourier(up) * h.fourier(um) *
                            std::exp(-g.cg * (u1 * u1 + u2 * u2));
                }
            }
            total += 0.25 * w * w * cell;
        }
    }
    if (skipped) *skipped += skip_acc;
    return 2.0 * total;
}

// Importance-sampled resonance integral: u ~ N(0, 1/(2 cg) I),
// I_m = (pi/cg)^{d/2} E[hhat(c+u) hhat(c-u)].
std::complex<double> resonance_integral_mc(const TestFunction& h, const Vec& c,
                                           const ResonanceGrid& g, double target_se,
                                           std::int64_t max_samples, bool& converged,
                                           std::uint64_t stream) {
    const int d = h.dim();
    const double sigma = std::sqrt(0.5 / g.cg);
    const double mass = std::pow(kPi / g.cg, 0.5 * d);
    MomentAccumulator re_acc;
    double im_sum = 0.0;
    std::int64_t n = 0;
    converged = false;
    while (n < max_samples) {
        const std::int64_t batch = std::min<std::int64_t>(4096, max_samples - n);
        for (std::int64_t k = 0; k < batch; ++k) {
            Vec u(d);
            for (int j = 0; j < d; ++j)
                u[j] = sigma * rng::standard_normal(stream, static_cast<std::uint64_t>(n + k),
                                                    0x5eedULL, static_cast<std::uint32_t>(j));
            const std::complex<double> v = h.fourier(c + u) * h.fourier(c - u);
            re_acc.add(v.real());
            im_sum += v.imag();
        }
        n += batch;
        if (n >= 1000 && mass * re_acc.se_mean() < target_se) {
            converged = true;
            break;
        }
    }
    return {mass * re_acc.mean(), mass * im_sum / static_cast<double>(n)};
}

struct TermValue {
    double am = 0.0;
    double imag = 0.0;
};

} // namespace

std::vector<Site> enumerate_m(int d, int m_max) {
    std::vector<Site> out;
    Site m{};
    if (d == 1) {
        for (m[0] = -m_max; m[0] <= m_max; ++m[0]) out.push_back(m);
    } else if (d == 2) {
        for (m[0] = -m_max; m[0] <= m_max; ++m[0])
            for (m[1] = -m_max; m[1] <= m_max; ++m[1]) out.push_back(m);
    } else {
        for (m[0] = -m_max; m[0] <= m_max; ++m[0])
            for (m[1] = -m_max; m[1] <= m_max; ++m[1])
                for (m[2] = -m_max; m[2] <= m_max; ++m[2]) out.push_back(m);
    }
    return out;
}

int default_m_max(double a) {
    if (!(a > 0)) throw validation_error("a must be positive");
    return static_cast<int>(std::ceil(std::sqrt(40.0 / (a * kPi * kPi)))) + 1;
}

QuadratureSpec default_quadrature(const TestFunction& h) {
    QuadratureSpec q;
    if (h.is_separable_fourier())
        q.scheme = QuadScheme::separable_1d;
    else if (h.is_radial_fourier())
        q.scheme = QuadScheme::radial_1d;
    else
        q.scheme = QuadScheme::tensor_adaptive;
    return q;
}

SpectralResult mean_exact(const TestFunction& h, double R, double a, int m_max) {
    if (!(R > 0) || !(a > 0)) throw validation_error("R and a must be positive");
    if (m_max < 1) throw validation_error("m_max must be >= 1");
    const int d = h.dim();
    const double rd = std::pow(R, d);

    SpectralResult res;
    res.m_max = m_max;
    double imag = 0.0;
    for (const Site& m : enumerate_m(d, m_max)) {
        const double w = std::exp(-a * kPi * kPi * norm_sq_site(m, d));
        const std::complex<double> hv = h.fourier(scaled_site(m, d, R));
        res.breakdown.emplace_back(m, rd * w * hv.real());
        imag += rd * w * hv.imag();
    }
    for (const auto& [m, v] : res.breakdown) res.value += v;
    res.imag_residue = std::abs(imag);
    res.truncation_bound =
        rd * h.fourier_sup_bound() *
        shell_tail(d, m_max + 1, [&](double l) { return std::exp(-a * kPi * kPi * l * l); });
    return res;
}

double mean_stationary(const TestFunction& h, double R) {
    if (!(R > 0)) throw validation_error("R must be positive");
    return std::pow(R, h.dim()) * h.integral();
}

SpectralResult variance_exact(const TestFunction& h, double R, double a, int m_max,
                              const QuadratureSpec& quad, ExecMode mode) {
    if (!(R > 0) || !(a > 0)) throw validation_error("R and a must be positive");
    if (m_max < 1) throw validation_error("m_max must be >= 1");
    quad.validate();
    const int d = h.dim();
    const double rd = std::pow(R, d);

    SpectralResult res;
    res.m_max = m_max;
    const std::vector<Site> ms = enumerate_m(d, m_max);

    if (h.sup_norm() == 0.0 && h.fourier_sup_bound() == 0.0) {
        for (const Site& m : ms) res.breakdown.emplace_back(m, 0.0);
        return res;
    }

    const QuadScheme scheme = quad.scheme;
    if (scheme == QuadScheme::separable_1d && !h.is_separable_fourier())
        throw validation_error("separable scheme requires a separable transform: " + h.key());
    if (scheme == QuadScheme::radial_1d && !h.is_radial_fourier())
        throw validation_error("radial scheme requires a radial transform: " + h.key());
    if (scheme != QuadScheme::separable_1d && d > 2)
        throw validation_error(
            "full Fourier-side variance is restricted to d <= 2 for non-separable transforms");
    if (!h.has_fourier_of_square())
        throw validation_error("variance_exact needs the transform of h^2: " + h.key());

    const ResonanceGrid grid = ResonanceGrid::make(h, R, a);
    const double sup = h.fourier_sup_bound();

    // A_0 = R^d (\int h^2 - \int |hhat|^2 e^{-cg |l|^2})
    const double a0 = rd * (h.l2_sq() - h.fourier_sq_gaussian_mass(grid.cg));

    // budget check before any evaluation: one resonance integral per distinct
    // class (separable: |k| <= m_max; radial: distinct |m|^2; tensor: +-m pairs)
    std::int64_t projected = 0;
    const std::int64_t per_integral = d == 1 ? grid.evals_1d() : 2 * grid.evals_2d();
    if (scheme == QuadScheme::separable_1d) {
        projected = static_cast<std::int64_t>(m_max + 1) * grid.evals_1d();
    } else if (scheme == QuadScheme::radial_1d) {
        std::map<std::int64_t, bool> seen;
        for (const Site& m : ms)
            if (!is_zero_site(m, d))
                seen[static_cast<std::int64_t>(std::llround(norm_sq_site(m, d)))] = true;
        projected = static_cast<std::int64_t>(seen.size()) * per_integral;
    } else if (scheme == QuadScheme::tensor_adaptive) {
        projected = (static_cast<std::int64_t>(ms.size()) / 2) * per_integral;
    }
    if (projected > quad.max_evals) {
        throw NonConvergenceError("variance_exact: projected " + std::to_string(projected) +
                                      " transform evaluations exceed the budget of " +
                                      std::to_string(quad.max_evals),
                                  res);
    }

    // resonance integrals, grouped where the transform structure allows
    std::vector<double> i_sep;               // separable: I per |k|
    std::map<std::int64_t, double> i_radial; // radial: |m|^2 -> I
    std::vector<TermValue> terms(ms.size());

    if (scheme == QuadScheme::separable_1d) {
        i_sep.resize(static_cast<std::size_t>(m_max) + 1);
        for (int k = 0; k <= m_max; ++k)
            i_sep[static_cast<std::size_t>(k)] = resonance_integral_1d(
                [&](double t) { return h.fourier_factor(t); }, 0.5 * R * k, grid);
        for (std::size_t t = 0; t < ms.size(); ++t) {
            const Site& m = ms[t];
            if (is_zero_site(m, d)) continue;
            double fsq = 1.0, iprod = 1.0;
            for (int j = 0; j < d; ++j) {
                fsq *= h.fourier_of_square_factor(R * static_cast<double>(m[j]));
                iprod *= i_sep[static_cast<std::size_t>(std::llabs(m[j]))];
            }
            const double msq = norm_sq_site(m, d);
            terms[t].am = rd * (std::exp(-a * kPi * kPi * msq) * fsq -
                                std::exp(-0.5 * a * kPi * kPi * msq) * iprod);
        }
    } else if (scheme == QuadScheme::radial_1d) {
        std::map<std::int64_t, bool> seen;
        for (const Site& m : ms)
            if (!is_zero_site(m, d))
                seen[static_cast<std::int64_t>(std::llround(norm_sq_site(m, d)))] = true;
        std::vector<std::int64_t> keys;
        for (const auto& [k, unused] : seen) {
            (void)unused;
            keys.push_back(k);
        }
        std::vector<double> vals(keys.size());
        std::vector<double> skips(keys.size(), 0.0);
        const double n_panels = 4.0 * grid.panels * grid.panels + 1.0;
        const auto eval_class = [&](std::int64_t idx) {
            const std::size_t i = static_cast<std::size_t>(idx);
            const double msq = static_cast<double>(keys[i]);
            const double c1 = 0.5 * R * std::sqrt(msq);
            if (d == 1) {
                vals[i] = resonance_integral_1d(
                    [&](double t) { return h.fourier_radial(std::abs(t)); }, c1, grid);
            } else {
                const double budget = quad.abs_tol /
                                      (rd * std::exp(-0.5 * a * kPi * kPi * msq) *
                                       static_cast<double>(ms.size()));
                vals[i] = resonance_integral_radial_2d(h, c1, grid, budget / n_panels, &skips[i]);
            }
            return 0.0;
        };
        block_sum(static_cast<std::int64_t>(keys.size()), eval_class, mode);
        std::map<std::int64_t, double> skip_map;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            i_radial[keys[i]] = vals[i];
            skip_map[keys[i]] = skips[i];
        }
        for (std::size_t t = 0; t < ms.size(); ++t) {
            const Site& m = ms[t];
            if (is_zero_site(m, d)) continue;
            const double msq = norm_sq_site(m, d);
            const double fsq = h.fourier_of_square(scaled_site(m, d, R)).real();
            const std::int64_t key = static_cast<std::int64_t>(std::llround(msq));
            const double weight = std::exp(-0.5 * a * kPi * kPi * msq);
            terms[t].am = rd * (std::exp(-a * kPi * kPi * msq) * fsq - weight * i_radial.at(key));
            res.truncation_bound += rd * weight * skip_map.at(key);
        }
    } else {
        // tensor_adaptive and mc_importance evaluate each +-m pair once
        std::vector<std::int64_t> reps;
        for (std::size_t t = 0; t < ms.size(); ++t) {
            const Site& m = ms[t];
            if (is_zero_site(m, d)) continue;
            const bool canonical = m[0] > 0 || (m[0] == 0 && m[1] > 0);
            if (canonical) reps.push_back(static_cast<std::int64_t>(t));
        }
        std::vector<std::complex<double>> ivals(reps.size());
        std::vector<double> skips(reps.size(), 0.0);
        std::vector<bool> ok(reps.size(), true);
        const double per_term_tol =
            quad.abs_tol / (rd * std::max<std::size_t>(1, reps.size()));
        const double n_panels = 2.0 * grid.panels * grid.panels + 1.0;
        const auto eval_rep = [&](std::int64_t idx) {
            const Site& m = ms[static_cast<std::size_t>(reps[static_cast<std::size_t>(idx)])];
            Vec c = scaled_site(m, d, R) * 0.5;
            if (scheme == QuadScheme::mc_importance) {
                bool conv = false;
                const std::int64_t cap = quad.max_evals / (2 * static_cast<std::int64_t>(reps.size()) + 1);
                ivals[static_cast<std::size_t>(idx)] = resonance_integral_mc(
                    h, c, grid, per_term_tol, std::max<std::int64_t>(cap, 1000), conv,
                    0x1234u + static_cast<std::uint64_t>(idx));
                ok[static_cast<std::size_t>(idx)] = conv;
            } else if (d == 1) {
                // complex-valued 1-d resonance integral
                const auto& rule = quad::gauss_legendre(grid.order);
                const double w = grid.T / grid.panels;
                std::complex<double> tot = 0.0;
                for (int p = 0; p < grid.panels; ++p) {
                    const double mid = (p + 0.5) * w;
                    std::complex<double> s = 0.0;
                    for (std::size_t i = 0; i < rule.x.size(); ++i) {
                        const double t = mid + 0.5 * w * rule.x[i];
                        s += rule.w[i] * h.fourier(Vec{c[0] + t}) * h.fourier(Vec{c[0] - t}) *
                             std::exp(-grid.cg * t * t);
                    }
                    tot += 0.5 * w * s;
                }
                ivals[static_cast<std::size_t>(idx)] = 2.0 * tot;
            } else {
                const double msq = norm_sq_site(m, d);
                const double budget = quad.abs_tol /
                                      (rd * std::exp(-0.5 * a * kPi * kPi * msq) *
                                       static_cast<double>(ms.size()));
                ivals[static_cast<std::size_t>(idx)] = resonance_integral_tensor_2d(
                    h, c, grid, budget / n_panels, &skips[static_cast<std::size_t>(idx)]);
            }
            return 0.0;
        };
        block_sum(static_cast<std::int64_t>(reps.size()), eval_rep, mode);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (!ok[i])
                throw NonConvergenceError(
                    "variance_exact: importance sampling did not reach the target accuracy", res);
            const std::size_t t = static_cast<std::size_t>(reps[i]);
            const Site& m = ms[t];
            const double msq = norm_sq_site(m, d);
            const double fsq = h.fourier_of_square(scaled_site(m, d, R)).real();
            const std::complex<double> iv = ivals[i];
            const double weight = std::exp(-0.5 * a * kPi * kPi * msq);
            const double am = rd * (std::exp(-a * kPi * kPi * msq) * fsq - weight * iv.real());
            const double imag = rd * weight * std::abs(iv.imag());
            res.truncation_bound += 2.0 * rd * weight * skips[i];
            terms[t] = {am, imag};
            // mirror entry for -m at its lexicographic index
            const std::int64_t span = 2 * m_max + 1;
            std::int64_t neg_idx = 0;
            for (int j = 0; j < d; ++j) neg_idx = neg_idx * span + (-m[j] + m_max);
            terms[static_cast<std::size_t>(neg_idx)] = terms[t];
        }
    }

    for (std::size_t t = 0; t < ms.size(); ++t) {
        const Site& m = ms[t];
        const double v = is_zero_site(m, d) ? a0 : terms[t].am;
        res.breakdown.emplace_back(m, v);
        res.imag_residue = std::max(res.imag_residue, terms[t].imag);
    }
    for (const auto& [m, v] : res.breakdown) res.value += v;

    // tail of the m-sum: |A_m| <= R^d [e^{-a pi^2 l^2} \int h^2
    //                                + e^{-a pi^2 l^2/2} sup^2 (pi/cg)^{d/2}]
    const double gauss_mass = std::pow(kPi / grid.cg, 0.5 * d);
    res.truncation_bound =
        rd * shell_tail(d, m_max + 1,
                        [&](double l) {
                            return std::exp(-a * kPi * kPi * l * l) * h.l2_sq() +
                                   std::exp(-0.5 * a * kPi * kPi * l * l) * sup * sup * gauss_mass;
                        }) +
        rd * static_cast<double>(ms.size()) * grid.domain_tail(d, sup);
    return res;
}

SpectralResult variance_stationary(const TestFunction& h, double R, double a, int m_max,
                                   const QuadratureSpec& quad, ExecMode mode) {
    (void)mode;
    if (!(R > 0) || !(a > 0)) throw validation_error("R and a must be positive");
    if (m_max < 1) throw validation_error("m_max must be >= 1");
    quad.validate();
    const int d = h.dim();
    const double rd = std::pow(R, d);
    const double r2d = rd * rd;
    const double cg = 2.0 * a * kPi * kPi / (R * R);
    const double sup = h.fourier_sup_bound();

    SpectralResult res;
    res.m_max = m_max;
    if (h.fourier_sup_bound() == 0.0) {
        for (const Site& m : enumerate_m(d, m_max)) res.breakdown.emplace_back(m, 0.0);
        return res;
    }

    const double a0 = rd * (h.l2_sq() - h.fourier_sq_gaussian_mass(cg));
    double imag = 0.0;
    for (const Site& m : enumerate_m(d, m_max)) {
        if (is_zero_site(m, d)) {
            res.breakdown.emplace_back(m, a0);
            continue;
        }
        const Vec rm = scaled_site(m, d, R);
        const double w = r2d * std::exp(-2.0 * a * kPi * kPi * norm_sq_site(m, d));
        if (!h.fourier_covers(rm)) {
            const double worst = w * sup * sup;
            if (worst > 1e3 * quad.abs_tol)
                throw validation_error(
                    "transform truncation too small for requested (R, m_max): " + h.key());
            res.truncation_bound += worst;
            res.breakdown.emplace_back(m, 0.0);
            continue;
        }
        const std::complex<double> hv = h.fourier(rm);
        res.breakdown.emplace_back(m, w * std::norm(hv));
        imag = std::max(imag, std::abs(hv.imag()));
    }
    for (const auto& [m, v] : res.breakdown) res.value += v;
    res.imag_residue = imag;
    res.truncation_bound += r2d * sup * sup *
                            shell_tail(d, m_max + 1, [&](double l) {
                                return std::exp(-2.0 * a * kPi * kPi * l * l);
                            });
    return res;
}

double upper_bound_functional(const TestFunction& h, double R) {
    if (!(R > 0)) throw validation_error("R must be positive");
    const int d = h.dim();
    const double osc = std::min(0.25, 0.25 * h.fourier_oscillation_scale());
    const int panels = std::max(8, static_cast<int>(std::ceil(R / osc)));

    if (h.fourier_sup_bound() == 0.0) return 0.0;

    const bool radial_like = h.is_radial_fourier() || d == 1;
    if (radial_like) {
        const auto prof = [&](double s) {
            return h.is_radial_fourier() ? h.fourier_radial(s) : h.fourier(Vec{s}).real();
        };
        const double omega = 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
        const double low_weighted = omega * quad::panel_integrate(
                                                [&](double s) {
                                                    const double v = prof(s);
                                                    return v * v * std::pow(s, d + 1);
                                                },
                                                0.0, R, panels, 10);
        const double low_mass = omega * quad::panel_integrate(
                                            [&](double s) {
                                                const double v = prof(s);
                                                return v * v * std::pow(s, d - 1);
                                            },
                                            0.0, R, panels, 10);
        const double tail = std::max(0.0, h.l2_sq() - low_mass);
        return std::pow(R, d - 2) * low_weighted + std::pow(R, d) * tail;
    }

    if (d == 2) {
        const auto f2 = [&](double x, double y) {
            const double v = h.fourier(Vec{x, y}).real();
            return v * v;
        };
        const double low_weighted = quad::disk_integrate(
            [&](double x, double y) { return f2(x, y) * (x * x + y * y); }, R, osc, 4.0);
        const double low_mass = quad::disk_integrate(f2, R, osc, 4.0);
        const double tail = std::max(0.0, h.l2_sq() - low_mass);
        return low_weighted + std::pow(R, d) * tail; // R^{d-2} = 1 at d = 2
    }
    throw validation_error("upper bound functional supports radial transforms or d <= 2");
}

double asymptotic_target_smooth(const TestFunction& h, double a) {
    if (!(a > 0)) throw validation_error("a must be positive");
    if (!h.in_h1())
        throw validation_error("smooth-branch target needs h in H^1; indicators belong to the "
                               "surface branch");
    return 0.5 * a * h.gradient_energy();
}

double asymptotic_target_surface(const ConvexBody& K, double a) {
    if (!(a > 0)) throw validation_error("a must be positive");
    return std::sqrt(a / (2.0 * kPi)) * K.surface_area();
}

AmEnvelopeReport am_envelope_check(const TestFunction& h, double R, double a, int m_max,
                                   const QuadratureSpec& quad) {
    const auto b = h.body();
    if (!b || b->shape != Shape::ball)
        throw validation_error("envelope diagnostic requires the indicator of a ball");
    QuadratureSpec q = quad;
    q.scheme = QuadScheme::tensor_adaptive;
    const SpectralResult var = variance_exact(h, R, a, m_max, q);
    const double rd = std::pow(R, h.dim());

    AmEnvelopeReport rep;
    rep.imag_residue = var.imag_residue;
    for (const auto& [m, am] : var.breakdown) {
        AmEnvelopeReport::Entry e;
        e.m = m;
        e.am = am;
        const double msq = norm_sq_site(m, h.dim());
        e.envelope = std::exp(-0.5 * a * kPi * kPi * msq) *
                     std::pow(1.0 + R * std::sqrt(msq), -0.5 * (h.dim() + 1));
        e.ratio = std::abs(am) / (rd * e.envelope);
        rep.max_ratio = std::max(rep.max_ratio, e.ratio);
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace spectral
} // namespace latfluct
