#pragma once

#include <cmath>
#include <numbers>

#include "latfluct/vec.hpp"

namespace latfluct {

enum class Shape { ball, cube };

// Convex body descriptor. Supported shapes: ball of radius r centered at the
// origin, and the unit cube [-1/2,1/2]^d.
struct ConvexBody {
    Shape shape = Shape::cube;
    int d = 1;
    double r = 1.0; // ball radius; ignored for cube

    double volume() const {
        if (shape == Shape::cube) return 1.0;
        // pi^{d/2} r^d / Gamma(d/2+1)
        return std::pow(std::numbers::pi, 0.5 * d) * std::pow(r, d) /
               std::tgamma(0.5 * d + 1.0);
    }

    double surface_area() const {
        if (shape == Shape::cube) return 2.0 * d;
        return d * volume() / r;
    }

    bool contains(const Vec& x) const {
        if (shape == Shape::ball) return x.norm_sq() <= r * r;
        for (int i = 0; i < d; ++i)
            if (std::abs(x[i]) > 0.5) return false;
        return true;
    }

    // Radius of the smallest origin-centered ball containing the body.
    double circumradius() const {
        return shape == Shape::ball ? r : 0.5 * std::sqrt(static_cast<double>(d));
    }
};

inline ConvexBody make_ball(int d, double r) {
    Vec::check_dim(d);
    if (r <= 0) throw validation_error("ball radius must be positive");
    return ConvexBody{Shape::ball, d, r};
}

inline ConvexBody make_cube(int d) {
    Vec::check_dim(d);
    return ConvexBody{Shape::cube, d, 1.0};
}

} // namespace latfluct
