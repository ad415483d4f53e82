#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>

#include "latfluct/error.hpp"

namespace latfluct {

inline constexpr int kMaxDim = 3;

// Point in R^d, d <= 3. Fixed capacity, value semantics.
class Vec {
public:
    Vec() : d_(0) {}
    explicit Vec(int d) : d_(d) { check_dim(d); }
    Vec(std::initializer_list<double> xs) : d_(static_cast<int>(xs.size())) {
        check_dim(d_);
        int i = 0;
        for (double v : xs) x_[i++] = v;
    }

    int dim() const { return d_; }
    double operator[](int i) const { return x_[i]; }
    double& operator[](int i) { return x_[i]; }

    double norm_sq() const {
        double s = 0;
        for (int i = 0; i < d_; ++i) s += x_[i] * x_[i];
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    Vec operator+(const Vec& o) const {
        Vec r(d_);
        for (int i = 0; i < d_; ++i) r.x_[i] = x_[i] + o.x_[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        Vec r(d_);
        for (int i = 0; i < d_; ++i) r.x_[i] = x_[i] - o.x_[i];
        return r;
    }
    Vec operator*(double c) const {
        Vec r(d_);
        for (int i = 0; i < d_; ++i) r.x_[i] = x_[i] * c;
        return r;
    }
    Vec operator/(double c) const { return *this * (1.0 / c); }

    static void check_dim(int d) {
        if (d < 0 || d > kMaxDim) throw validation_error("dimension must be in [0,3]");
    }

private:
    std::array<double, kMaxDim> x_{};
    int d_;
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

// Lattice site in Z^d; unused coordinates stay zero.
using Site = std::array<std::int64_t, kMaxDim>;

inline Vec site_to_vec(const Site& n, int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = static_cast<double>(n[i]);
    return v;
}

} // namespace latfluct
