#pragma once

#include <cmath>
#include <cstdint>

namespace latfluct {

// One-pass accumulator for mean and central moments up to order four
// (Welford update, Pebay merge). Merging two disjoint streams agrees with the
// single combined stream up to floating-point reassociation.
class MomentAccumulator {
public:
    void add(double x) {
        const double n1 = static_cast<double>(n_);
        n_ += 1;
        const double n = static_cast<double>(n_);
        const double delta = x - mean_;
        const double delta_n = delta / n;
        const double delta_n2 = delta_n * delta_n;
        const double term1 = delta * delta_n * n1;
        mean_ += delta_n;
        m4_ += term1 * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * m2_ - 4 * delta_n * m3_;
        m3_ += term1 * delta_n * (n - 2) - 3 * delta_n * m2_;
        m2_ += term1;
    }

    void merge(const MomentAccumulator& o) {
        if (o.n_ == 0) return;
        if (n_ == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n_);
        const double nb = static_cast<double>(o.n_);
        const double n = na + nb;
        const double delta = o.mean_ - mean_;
        const double d2 = delta * delta;

        const double m2 = m2_ + o.m2_ + d2 * na * nb / n;
        const double m3 = m3_ + o.m3_ + d2 * delta * na * nb * (na - nb) / (n * n) +
                          3.0 * delta * (na * o.m2_ - nb * m2_) / n;
        const double m4 = m4_ + o.m4_ +
                          d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                          6.0 * d2 * (na * na * o.m2_ + nb * nb * m2_) / (n * n) +
                          4.0 * delta * (na * o.m3_ - nb * m3_) / n;

        mean_ += delta * nb / n;
        m2_ = m2;
        m3_ = m3;
        m4_ = m4;
        n_ += o.n_;
    }

    std::int64_t count() const { return n_; }
    double mean() const { return mean_; }

    // Unbiased sample variance.
    double variance() const { return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1); }

    double central_moment4() const { return n_ == 0 ? 0.0 : m4_ / static_cast<double>(n_); }

    double se_mean() const {
        return n_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
    }

    // Asymptotic standard error of the sample variance,
    // Var(s^2) ~ (m4 - s^4 (n-3)/(n-1)) / n with the estimated fourth moment.
    double se_variance() const {
        if (n_ < 2) return 0.0;
        const double n = static_cast<double>(n_);
        const double s2 = variance();
        const double v = (central_moment4() - s2 * s2 * (n - 3.0) / (n - 1.0)) / n;
        return v > 0.0 ? std::sqrt(v) : 0.0;
    }

private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

} // namespace latfluct
