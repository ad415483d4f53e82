#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "latfluct/parallel.hpp"
#include "latfluct/quadrature.hpp"
#include "latfluct/rng.hpp"
#include "latfluct/stats.hpp"

using namespace latfluct;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sinc: value, zero handling, series branch continuity") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(std::abs(sinc(kPi)) < 1e-15);
    CHECK(sinc(1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
    // the Taylor branch must join the sin branch smoothly
    const double below = sinc(0.99e-4);
    const double above = sinc(1.01e-4);
    CHECK(std::abs(below - above) < 1e-12);
}

TEST_CASE("gauss_interval_mass matches erf and stays accurate in the tails") {
    CHECK(gauss_interval_mass(-0.5, 0.5, 1.0) == doctest::Approx(std::erf(0.5)).epsilon(1e-15));
    // far tail: 0.5*(erfc(10)-erfc(11)) ~ 1e-45, must stay positive
    const double tail = gauss_interval_mass(10.0, 11.0, 1.0);
    CHECK(tail > 0.0);
    CHECK(tail < 1e-44);
    CHECK(gauss_interval_mass(-40.0, 40.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    // scaling in a: mass over [-1,1] with a=4 equals erf(1/2)
    CHECK(gauss_interval_mass(-1.0, 1.0, 4.0) == doctest::Approx(std::erf(0.5)).epsilon(1e-15));
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    const auto& r = quad::gauss_legendre(8);
    double s5 = 0.0, s14 = 0.0, w = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        w += r.w[i];
        s5 += r.w[i] * std::pow(r.x[i], 5);
        s14 += r.w[i] * std::pow(r.x[i], 14);
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(s5) < 1e-15);
    CHECK(s14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
    CHECK(quad::panel_integrate([](double x) { return std::cos(x); }, 0.0, 1.0, 4, 10) ==
          doctest::Approx(std::sin(1.0)).epsilon(1e-14));
}

TEST_CASE("Gauss-Hermite rule reproduces Gaussian moments") {
    const auto& r = quad::gauss_hermite(40);
    double m0 = 0.0, m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        m0 += r.w[i];
        m2 += r.w[i] * r.x[i] * r.x[i];
        m4 += r.w[i] * std::pow(r.x[i], 4);
    }
    const double sp = std::sqrt(kPi);
    CHECK(m0 == doctest::Approx(sp).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(0.5 * sp).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(0.75 * sp).epsilon(1e-13));
    // non-polynomial integrand: int e^{-t^2} cos t = sqrt(pi) e^{-1/4}
    double c = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) c += r.w[i] * std::cos(r.x[i]);
    CHECK(c == doctest::Approx(sp * std::exp(-0.25)).epsilon(1e-13));
}

TEST_CASE("adaptive integration handles a narrow spike") {
    const double v = quad::adaptive_integrate(
        [](double t) { return std::exp(-t * t / 2e-4); }, -2.0, 2.0, 1e-12);
    CHECK(v == doctest::Approx(std::sqrt(kPi * 2e-4)).epsilon(1e-10));
}

TEST_CASE("disk integration: radial oscillatory oracle") {
    // int_{|x|<=R} cos(6|x|) dx = 2 pi [cos(6R)/36 + R sin(6R)/6 - 1/36]
    const double R = 7.0;
    const double exact =
        2.0 * kPi * (std::cos(6.0 * R) / 36.0 + R * std::sin(6.0 * R) / 6.0 - 1.0 / 36.0);
    const double v = quad::disk_integrate(
        [](double x, double y) { return std::cos(6.0 * std::hypot(x, y)); }, R);
    CHECK(v == doctest::Approx(exact).epsilon(1e-9));
    const double g = quad::disk_integrate(
        [](double x, double y) { return std::exp(-(x * x + y * y)); }, 6.0);
    CHECK(g == doctest::Approx(kPi * (1.0 - std::exp(-36.0))).epsilon(1e-11));
}

TEST_CASE("moment accumulator: moments against direct formulas") {
    const std::vector<double> xs = {1.5, -0.25, 3.0, 2.25, -1.0, 0.5, 4.0, 1.25};
    MomentAccumulator acc;
    for (double x : xs) acc.add(x);
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double m2 = 0.0, m4 = 0.0;
    for (double x : xs) {
        m2 += (x - mean) * (x - mean);
        m4 += std::pow(x - mean, 4);
    }
    CHECK(acc.mean() == doctest::Approx(mean).epsilon(1e-14));
    CHECK(acc.variance() == doctest::Approx(m2 / (xs.size() - 1)).epsilon(1e-14));
    CHECK(acc.central_moment4() == doctest::Approx(m4 / xs.size()).epsilon(1e-13));
}

TEST_CASE("moment accumulator: merge law equals the combined stream") {
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i) xs.push_back(rng::uniform(7, 0, 0, i) * 10.0 - 3.0);
    MomentAccumulator full, lo, hi;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        full.add(xs[i]);
        (i < xs.size() / 2 ? lo : hi).add(xs[i]);
    }
    lo.merge(hi);
    CHECK(lo.count() == full.count());
    CHECK(lo.mean() == doctest::Approx(full.mean()).epsilon(1e-12));
    CHECK(lo.variance() == doctest::Approx(full.variance()).epsilon(1e-12));
    CHECK(lo.se_variance() == doctest::Approx(full.se_variance()).epsilon(1e-9));
}

TEST_CASE("moment accumulator: variance is shift invariant") {
    MomentAccumulator base, shifted;
    for (int i = 0; i < 500; ++i) {
        const double x = std::sin(0.7 * i) + 0.3 * std::cos(1.3 * i);
        base.add(x);
        shifted.add(x + 1000.0);
    }
    CHECK(shifted.variance() == doctest::Approx(base.variance()).epsilon(1e-12));
}

TEST_CASE("counter rng: determinism and distribution sanity") {
    const Site n{3, -2, 0};
    const Vec a = rng::gaussian_displacement(42, 17, n, 2, 1.0);
    const Vec b = rng::gaussian_displacement(42, 17, n, 2, 1.0);
    CHECK(a[0] == b[0]);
    CHECK(a[1] == b[1]);
    const Vec c = rng::gaussian_displacement(42, 18, n, 2, 1.0);
    CHECK(a[0] != c[0]);

    MomentAccumulator acc;
    for (int i = 0; i < 100000; ++i)
        acc.add(rng::standard_normal(5, static_cast<std::uint64_t>(i), 77, 0));
    CHECK(std::abs(acc.mean()) < 0.02);
    CHECK(acc.variance() == doctest::Approx(1.0).epsilon(0.02));

    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = rng::uniform(1, static_cast<std::uint64_t>(i), 2, 3);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo > 0.0);
    CHECK(hi <= 1.0);
}

TEST_CASE("block_sum: serial and parallel modes are bit-identical") {
    const auto eval = [](std::int64_t b) {
        double s = 0.0;
        for (int i = 0; i < 19; ++i) s += std::sin(0.1 * static_cast<double>(b) + i) / (1.0 + static_cast<double>(b));
        return s;
    };
    const double serial = block_sum(257, eval, ExecMode::serial);
    const double parallel = block_sum(257, eval, ExecMode::parallel);
    CHECK(serial == parallel); // exact equality, not approximate
}
