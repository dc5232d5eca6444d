#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "random.hpp"
#include "scenario.hpp"

// F(X, Y) = sum_i E_i / D_i with D_i = (X - x_i)^2 + (Y - y_i)^2 + z^2,
// the total lifetime scaled by K (units J/m^2). All sums run in user order.

namespace uavplace::objective {

namespace detail {
inline void require_altitude(double z) {
    if (!(z > 0.0)) throw DomainError("altitude must be positive");
}
}  // namespace detail

inline double value(std::span<const UserDevice> users, double z, Point2 p) {
    detail::require_altitude(z);
    const double z2 = z * z;
    double sum = 0.0;
    for (const auto& u : users) {
        const double dx = p.x - u.x, dy = p.y - u.y;
        sum += u.energy / (dx * dx + dy * dy + z2);
    }
    return sum;
}

inline Point2 gradient(std::span<const UserDevice> users, double z, Point2 p) {
    detail::require_altitude(z);
    const double z2 = z * z;
    Point2 g;
    for (const auto& u : users) {
        const double dx = p.x - u.x, dy = p.y - u.y;
        const double d = dx * dx + dy * dy + z2;
        const double w = -2.0 * u.energy / (d * d);
        g.x += w * dx;
        g.y += w * dy;
    }
    return g;
}

// Per-user second derivatives of 1/D:
//   f_xx = (6 dx^2 - 2 dy^2 - 2 z^2) / D^3
//   f_yy = (6 dy^2 - 2 dx^2 - 2 z^2) / D^3
//   f_xy = 8 dx dy / D^3
inline SymMat2 hessian(std::span<const UserDevice> users, double z, Point2 p) {
    detail::require_altitude(z);
    const double z2 = z * z;
    SymMat2 h;
    for (const auto& u : users) {
        const double dx = p.x - u.x, dy = p.y - u.y;
        const double dx2 = dx * dx, dy2 = dy * dy;
        const double d = dx2 + dy2 + z2;
        const double w = u.energy / (d * d * d);
        h.xx += w * (6.0 * dx2 - 2.0 * dy2 - 2.0 * z2);
        h.yy += w * (6.0 * dy2 - 2.0 * dx2 - 2.0 * z2);
        h.xy += w * (8.0 * dx * dy);
    }
    return h;
}

// Closed-form per-user determinant f_xx f_yy - f_xy^2 = (4 z^2 - 12 (dx^2 + dy^2)) / D^5.
inline double unit_hessian_determinant(double dx, double dy, double z) {
    const double r2 = dx * dx + dy * dy;
    const double d = r2 + z * z;
    return (4.0 * z * z - 12.0 * r2) / std::pow(d, 5);
}

struct ObjectiveEval {
    double value = 0.0;               // J/m^2
    std::vector<double> per_user_tau;  // s
    Point2 gradient;                  // J/m^3
    SymMat2 hessian;                  // J/m^4
};

inline ObjectiveEval evaluate(std::span<const UserDevice> users, double z, Point2 p,
                              const channel::SystemConstant& k) {
    ObjectiveEval e;
    e.value = value(users, z, p);
    e.gradient = gradient(users, z, p);
    e.hessian = hessian(users, z, p);
    const double z2 = z * z;
    e.per_user_tau.reserve(users.size());
    for (const auto& u : users) {
        const double dx = p.x - u.x, dy = p.y - u.y;
        e.per_user_tau.push_back(u.energy / (k.k * (dx * dx + dy * dy + z2)));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Concavity

// The objective is concave over the area when z_min > sqrt(3) d_max, with
// d_max the area diagonal (the largest 2D user-to-UAV distance possible).
struct ConcavityCertificate {
    double z_min = 0.0;
    double d_max = 0.0;
    double threshold = 0.0;
    bool holds = false;
    bool marginal = false;  // z_min equals the threshold to 1e-9 relative
};

inline ConcavityCertificate concavity_certificate(const AreaBounds& b) {
    validate(b);
    ConcavityCertificate c;
    c.z_min = b.z_min;
    c.d_max = b.diagonal();
    c.threshold = std::numbers::sqrt3 * c.d_max;
    c.marginal = std::abs(c.z_min - c.threshold) <= 1e-9 * c.threshold;
    c.holds = c.z_min > c.threshold && !c.marginal;
    return c;
}

// Per-user sufficient conditions for a negative semidefinite Hessian of 1/D:
//   (a) z^2 > 3 dx^2 - dy^2   (b) z^2 > 3 dy^2 - dx^2   (c) z^2 > 3 (dx^2 + dy^2)
struct UserConcavityConditions {
    bool a = false;
    bool b = false;
    bool c = false;
};

inline std::vector<UserConcavityConditions> user_conditions(std::span<const UserDevice> users,
                                                             double z, Point2 p) {
    std::vector<UserConcavityConditions> out;
    out.reserve(users.size());
    const double z2 = z * z;
    for (const auto& u : users) {
        const double dx2 = (p.x - u.x) * (p.x - u.x);
        const double dy2 = (p.y - u.y) * (p.y - u.y);
        out.push_back({z2 > 3.0 * dx2 - dy2, z2 > 3.0 * dy2 - dx2, z2 > 3.0 * (dx2 + dy2)});
    }
    return out;
}

inline constexpr double kNsdRelativeTolerance = 1e-12;

// Largest eigenvalue allowed before a Hessian counts as indefinite.
inline double nsd_threshold(const SymMat2& h) {
    return kNsdRelativeTolerance * std::max(std::abs(h.trace()), h.max_abs());
}

struct NsdScan {
    bool all_nsd = true;
    double worst_eigenvalue = -std::numeric_limits<double>::infinity();
    Point2 witness;  // point of the largest eigenvalue seen
    std::size_t samples = 0;
};

// Hessian eigenvalues at `samples` seeded uniform points of the box.
inline NsdScan nsd_scan(std::span<const UserDevice> users, double z, const AreaBounds& b,
                        std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw DomainError("nsd_scan needs at least one sample");
    SplitMix64 rng(seed);
    NsdScan out;
    out.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        Point2 p;
        p.x = rng.uniform(b.x_min, b.x_max);
        p.y = rng.uniform(b.y_min, b.y_max);
        const SymMat2 h = hessian(users, z, p);
        const double top = h.eigenvalues().second;
        if (top > out.worst_eigenvalue) {
            out.worst_eigenvalue = top;
            out.witness = p;
        }
        if (top > nsd_threshold(h)) out.all_nsd = false;
    }
    return out;
}

}  // namespace uavplace::objective
