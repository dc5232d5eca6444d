#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace uavplace {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point2, Point2) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct SymMat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double trace() const { return xx + yy; }
    double det() const { return xx * yy - xy * xy; }
    double max_abs() const { return std::max({std::abs(xx), std::abs(xy), std::abs(yy)}); }

    // Eigenvalues in ascending order. Closed form, stable for the symmetric case.
    std::pair<double, double> eigenvalues() const {
        const double mean = 0.5 * (xx + yy);
        const double radius = std::hypot(0.5 * (xx - yy), xy);
        return {mean - radius, mean + radius};
    }

    friend constexpr bool operator==(const SymMat2&, const SymMat2&) = default;
};

}  // namespace uavplace
