#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "region.hpp"
#include "scenario.hpp"

// Brute-force references for the objective, its derivatives and its
// maximizer. Nothing here calls into objective.hpp: the checks stay
// independent of the code they verify.

namespace uavplace::oracle {

// The objective written out directly from 3D distances.
inline double direct_value(std::span<const UserDevice> users, double z, Point2 p) {
    double sum = 0.0;
    for (const auto& u : users) {
        const double d = std::hypot(p.x - u.x, p.y - u.y, z);
        sum += u.energy / (d * d);
    }
    return sum;
}

inline Point2 fd_gradient(std::span<const UserDevice> users, double z, Point2 p, double h) {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    auto f = [&](double x, double y) { return direct_value(users, z, {x, y}); };
    return {(f(p.x + h, p.y) - f(p.x - h, p.y)) / (2.0 * h),
            (f(p.x, p.y + h) - f(p.x, p.y - h)) / (2.0 * h)};
}

struct FdHessian {
    double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;
};

// Second-order central differences; both mixed partials use the same
// four-point stencil, so xy == yx up to rounding.
inline FdHessian fd_hessian(std::span<const UserDevice> users, double z, Point2 p, double h) {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    auto f = [&](double x, double y) { return direct_value(users, z, {x, y}); };
    const double f0 = f(p.x, p.y);
    FdHessian out;
    out.xx = (f(p.x + h, p.y) - 2.0 * f0 + f(p.x - h, p.y)) / (h * h);
    out.yy = (f(p.x, p.y + h) - 2.0 * f0 + f(p.x, p.y - h)) / (h * h);
    out.xy = (f(p.x + h, p.y + h) - f(p.x + h, p.y - h) - f(p.x - h, p.y + h) +
              f(p.x - h, p.y - h)) / (4.0 * h * h);
    out.yx = (f(p.x + h, p.y + h) - f(p.x - h, p.y + h) - f(p.x + h, p.y - h) +
              f(p.x - h, p.y - h)) / (4.0 * h * h);
    return out;
}

struct GridSpec {
    double spacing = 1.0;  // m
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;

    static GridSpec over(const AreaBounds& b, double spacing) {
        return {spacing, b.x_min, b.x_max, b.y_min, b.y_max};
    }

    // Node coordinates along one axis: lo, lo + s, ..., and hi itself.
    static std::vector<double> axis(double lo, double hi, double s) {
        std::vector<double> v;
        const auto n = static_cast<std::size_t>(std::floor((hi - lo) / s + 1e-9));
        for (std::size_t i = 0; i <= n; ++i) v.push_back(lo + static_cast<double>(i) * s);
        if (hi - v.back() > 1e-9 * std::max(1.0, std::abs(hi))) v.push_back(hi);
        else v.back() = hi;
        return v;
    }
};

enum class Mode { region, box };

struct GridResult {
    Point2 best;
    double best_value = -std::numeric_limits<double>::infinity();
    std::size_t evaluated = 0;
    double max_gradient_norm = 0.0;  // central differences at the evaluated nodes
};

// Exhaustive scan of the grid. Ties keep the smallest x, then smallest y.
inline GridResult grid_search(const Scenario& s, const GridSpec& grid, Mode mode) {
    if (!(grid.spacing > 0.0)) throw DomainError("grid spacing must be positive");
    if (grid.x_min > grid.x_max || grid.y_min > grid.y_max)
        throw DomainError("grid bounds are inverted");
    region::FeasibleRegion feasible = mode == Mode::region
                                          ? region::build(s)
                                          : region::FeasibleRegion::from_box(s.bounds);
    if (feasible.empty) throw StateError("grid search on an empty region: " + feasible.cause);

    const double z = s.bounds.z_min;
    const double h = 1e-3 * grid.spacing;
    const auto xs = GridSpec::axis(grid.x_min, grid.x_max, grid.spacing);
    const auto ys = GridSpec::axis(grid.y_min, grid.y_max, grid.spacing);
    GridResult out;
    for (double x : xs) {
        for (double y : ys) {
            const Point2 p{x, y};
            if (mode == Mode::region && !region::contains(feasible, p)) continue;
            const double v = direct_value(s.users, z, p);
            ++out.evaluated;
            if (v > out.best_value) {
                out.best_value = v;
                out.best = p;
            }
            out.max_gradient_norm = std::max(out.max_gradient_norm, norm(fd_gradient(s.users, z, p, h)));
        }
    }
    if (out.evaluated == 0) throw StateError("no grid node lies inside the feasible region");
    return out;
}

}  // namespace uavplace::oracle
