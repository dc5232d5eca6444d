#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "scenario.hpp"

namespace uavplace::region {

inline constexpr double kMembershipTolerance = 1e-9;  // m
inline constexpr double kEmptinessTolerance = 1e-6;   // m

// sqrt(P_max / K): farthest 3D distance at which the rate is met with P_max.
inline double max_range_power(double p_max, const channel::SystemConstant& k) {
    if (!(p_max > 0.0)) throw DomainError("p_max must be positive");
    return std::sqrt(p_max / k.k);
}

// sqrt(E / (tau_th K)): farthest 3D distance at which the battery lasts tau_th.
inline double max_range_energy(double energy, double tau_th, const channel::SystemConstant& k) {
    if (!(energy > 0.0) || !(tau_th > 0.0)) throw DomainError("energy and tau_th must be positive");
    return std::sqrt(energy / (tau_th * k.k));
}

enum class BindingConstraint { power, energy };

inline const char* to_string(BindingConstraint b) {
    return b == BindingConstraint::power ? "power" : "energy";
}

struct UserRangeLimit {
    std::size_t user_index = 0;
    double d_power = 0.0;   // m
    double d_energy = 0.0;  // m
    double d_i = 0.0;       // m, min of the two

    BindingConstraint binding() const {
        return d_power <= d_energy ? BindingConstraint::power : BindingConstraint::energy;
    }
};

struct Disk {
    Point2 center;
    double radius = 0.0;
    std::size_t user_index = 0;
};

struct Box2 {
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;

    static Box2 from(const AreaBounds& b) { return {b.x_min, b.x_max, b.y_min, b.y_max}; }
    Point2 clamp(Point2 p) const {
        return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)};
    }
    // Signed Chebyshev violation: <= 0 inside, distance past the worst edge outside.
    double violation(Point2 p) const {
        return std::max({x_min - p.x, p.x - x_max, y_min - p.y, p.y - y_max});
    }
    Point2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
};

inline Point2 project_onto_disk(const Disk& d, Point2 p) {
    const Point2 off = p - d.center;
    const double r = norm(off);
    if (r <= d.radius) return p;
    return d.center + (d.radius / r) * off;
}

// ---------------------------------------------------------------------------
// Emptiness

struct EmptinessResult {
    bool empty = false;
    std::optional<Point2> witness;
    double violation = 0.0;  // g at the witness, or the certified lower bound when empty
    std::string cause;
};

inline double max_violation(std::span<const Disk> disks, const Box2& box, Point2 p) {
    double g = box.violation(p);
    for (const auto& d : disks) g = std::max(g, distance(p, d.center) - d.radius);
    return g;
}

namespace detail {

// Every point where a circle crosses another circle or an edge line of the
// box, plus each disk's leftmost point and the box corners. The lexicographic
// minimum of a non-empty intersection of disks and a box is always one of them.
inline bool candidate_test(std::span<const Disk> disks, const Box2& box, double slack,
                           Point2& found) {
    auto feasible = [&](Point2 p) {
        return max_violation(disks, box, p) <= slack;
    };
    auto try_point = [&](Point2 p) {
        if (std::isfinite(p.x) && std::isfinite(p.y) && feasible(p)) {
            found = p;
            return true;
        }
        return false;
    };

    for (Point2 corner : {Point2{box.x_min, box.y_min}, Point2{box.x_min, box.y_max},
                          Point2{box.x_max, box.y_min}, Point2{box.x_max, box.y_max}})
        if (try_point(corner)) return true;

    for (const auto& d : disks) {
        if (try_point({d.center.x - d.radius, d.center.y})) return true;
        // vertical box edges
        for (double xe : {box.x_min, box.x_max}) {
            const double dx = xe - d.center.x;
            const double h2 = d.radius * d.radius - dx * dx;
            if (h2 < -slack * std::max(1.0, d.radius)) continue;
            const double h = std::sqrt(std::max(0.0, h2));
            if (try_point({xe, d.center.y - h}) || try_point({xe, d.center.y + h})) return true;
        }
        for (double ye : {box.y_min, box.y_max}) {
            const double dy = ye - d.center.y;
            const double h2 = d.radius * d.radius - dy * dy;
            if (h2 < -slack * std::max(1.0, d.radius)) continue;
            const double h = std::sqrt(std::max(0.0, h2));
            if (try_point({d.center.x - h, ye}) || try_point({d.center.x + h, ye})) return true;
        }
    }

    for (std::size_t i = 0; i < disks.size(); ++i) {
        for (std::size_t j = i + 1; j < disks.size(); ++j) {
            const Disk& a = disks[i];
            const Disk& b = disks[j];
            const Point2 ab = b.center - a.center;
            const double dist = norm(ab);
            if (dist == 0.0) continue;  // concentric: covered by leftmost points
            if (dist > a.radius + b.radius + slack) continue;
            if (dist < std::abs(a.radius - b.radius) - slack) continue;
            const double along = (dist * dist + a.radius * a.radius - b.radius * b.radius) / (2.0 * dist);
            const double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
            const Point2 u = (1.0 / dist) * ab;
            const Point2 base = a.center + along * u;
            const Point2 perp{-u.y, u.x};
            if (try_point(base + h * perp) || try_point(base - h * perp)) return true;
        }
    }
    return false;
}

inline std::string format_m(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g m", v);
    return buf;
}

inline std::string separation_cause(std::span<const Disk> disks, const Box2& box) {
    for (std::size_t i = 0; i < disks.size(); ++i) {
        const auto& d = disks[i];
        const double gap = distance(d.center, box.clamp(d.center)) - d.radius;
        if (gap > 0.0)
            return "disk of user " + std::to_string(d.user_index) + " lies " + format_m(gap) +
                   " outside the placement box";
        for (std::size_t j = i + 1; j < disks.size(); ++j) {
            const auto& e = disks[j];
            const double sep = distance(d.center, e.center) - d.radius - e.radius;
            if (sep > 0.0)
                return "disks of users " + std::to_string(d.user_index) + " and " +
                       std::to_string(e.user_index) + " are disjoint (gap " + format_m(sep) + ")";
        }
    }
    return "disks and placement box have no common point";
}

}  // namespace detail

// Decides whether the intersection of `disks` and `box` is empty.
//
// Phase 1: projected subgradient descent on the convex function
//   g(p) = max(max_i(|p - c_i| - r_i), box violation(p))
// from the box center with steps a0 / sqrt(k + 1); any iterate with
// g <= 1e-6 m is returned as witness.
// Phase 2: exact candidate-point test on the sets inflated by 1e-6 m. No
// candidate inside them certifies min g > 1e-6 m, i.e. empty.
inline EmptinessResult check_empty(std::span<const Disk> disks, const Box2& box) {
    EmptinessResult out;
    if (box.x_min > box.x_max || box.y_min > box.y_max) {
        out.empty = true;
        out.violation = std::numeric_limits<double>::infinity();
        out.cause = "placement box is inverted";
        return out;
    }

    Point2 p = box.center();
    Point2 best = p;
    double best_g = max_violation(disks, box, p);
    const double scale = std::max(1.0, std::hypot(box.x_max - box.x_min, box.y_max - box.y_min));
    constexpr int kIterations = 2000;
    for (int k = 0; k < kIterations && best_g > kEmptinessTolerance; ++k) {
        // subgradient of the active piece (box is handled by the projection)
        const Disk* active = nullptr;
        double g = -std::numeric_limits<double>::infinity();
        for (const auto& d : disks) {
            const double v = distance(p, d.center) - d.radius;
            if (v > g) {
                g = v;
                active = &d;
            }
        }
        if (active == nullptr) break;
        const Point2 off = p - active->center;
        const double len = norm(off);
        if (len == 0.0) break;
        const double step = 0.5 * scale / std::sqrt(static_cast<double>(k) + 1.0);
        p = box.clamp(p - (step / len) * off);
        const double gp = max_violation(disks, box, p);
        if (gp < best_g) {
            best_g = gp;
            best = p;
        }
    }
    if (best_g <= kEmptinessTolerance) {
        out.witness = best;
        out.violation = best_g;
        return out;
    }

    std::vector<Disk> inflated(disks.begin(), disks.end());
    for (auto& d : inflated) d.radius += kEmptinessTolerance;
    const Box2 grown{box.x_min - kEmptinessTolerance, box.x_max + kEmptinessTolerance,
                     box.y_min - kEmptinessTolerance, box.y_max + kEmptinessTolerance};
    const double slack = 1e-12 * scale;
    Point2 found;
    if (detail::candidate_test(inflated, grown, slack, found)) {
        out.witness = found;
        out.violation = max_violation(disks, box, found);
        return out;
    }
    out.empty = true;
    out.violation = kEmptinessTolerance;
    out.cause = detail::separation_cause(disks, box);
    return out;
}

// ---------------------------------------------------------------------------
// Feasible region

struct FeasibleRegion {
    double altitude = 0.0;  // z_min
    std::vector<UserRangeLimit> limits;
    std::vector<Disk> disks;  // only users with d_i > z_min
    Box2 box;
    bool empty = false;
    std::string cause;
    std::optional<Point2> witness;
    bool box_only = false;

    // Placement box without range constraints.
    static FeasibleRegion from_box(const AreaBounds& b) {
        FeasibleRegion r;
        r.altitude = b.z_min;
        r.box = Box2::from(b);
        r.box_only = true;
        r.witness = r.box.center();
        return r;
    }
};

namespace detail {

inline std::string unreachable_cause(const std::vector<UserRangeLimit>& bad, std::size_t total,
                                     double z_min) {
    std::size_t by_power = 0;
    for (const auto& l : bad) by_power += l.binding() == BindingConstraint::power;
    const std::size_t by_energy = bad.size() - by_power;

    std::string msg;
    if (bad.size() == total && by_energy == 0) {
        double lo = bad.front().d_i, hi = lo;
        for (const auto& l : bad) {
            lo = std::min(lo, l.d_i);
            hi = std::max(hi, l.d_i);
        }
        msg = "power constraint: d_i = " + format_m(lo);
        if (hi > lo) msg += " .. " + format_m(hi);
        msg += " <= z_min = " + format_m(z_min) + " for all " + std::to_string(total) + " users";
        return msg;
    }
    msg = std::to_string(bad.size()) + " of " + std::to_string(total) +
          " users cannot be served at z_min = " + format_m(z_min) + " (" +
          std::to_string(by_power) + " by the power constraint, " + std::to_string(by_energy) +
          " by the energy constraint)";
    const std::size_t shown = std::min<std::size_t>(bad.size(), 3);
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& l = bad[i];
        msg += "; user " + std::to_string(l.user_index) + ": " + to_string(l.binding()) +
               " constraint, d_i = " + format_m(l.d_i);
    }
    if (bad.size() > shown) msg += "; ...";
    return msg;
}

}  // namespace detail

// Per-user ranges -> 2D disks at altitude z_min, intersected with the x/y box.
inline FeasibleRegion build(const std::vector<UserDevice>& users, const RfParams& rf,
                            const AreaBounds& bounds) {
    FeasibleRegion r;
    r.altitude = bounds.z_min;
    r.box = Box2::from(bounds);
    const auto k = channel::system_constant(rf, users.size());
    const double d_power = max_range_power(rf.p_max, k);
    const double z2 = bounds.z_min * bounds.z_min;

    std::vector<UserRangeLimit> unreachable;
    for (std::size_t i = 0; i < users.size(); ++i) {
        UserRangeLimit l;
        l.user_index = i;
        l.d_power = d_power;
        l.d_energy = max_range_energy(users[i].energy, rf.tau_th, k);
        l.d_i = std::min(l.d_power, l.d_energy);
        r.limits.push_back(l);
        if (l.d_i <= bounds.z_min) {
            unreachable.push_back(l);
            continue;
        }
        r.disks.push_back({users[i].position(), std::sqrt(l.d_i * l.d_i - z2), i});
    }

    if (!unreachable.empty()) {
        r.empty = true;
        r.cause = detail::unreachable_cause(unreachable, users.size(), bounds.z_min);
        return r;
    }
    auto verdict = check_empty(r.disks, r.box);
    r.empty = verdict.empty;
    r.cause = verdict.cause;
    r.witness = verdict.witness;
    return r;
}

inline FeasibleRegion build(const Scenario& s) { return build(s.users, s.rf, s.bounds); }

inline bool contains(const FeasibleRegion& region, Point2 p,
                     double tolerance = kMembershipTolerance) {
    if (region.empty) throw StateError("membership query on an empty region");
    return max_violation(region.disks, region.box, p) <= tolerance;
}

struct ProjectionResult {
    Point2 point;
    int sweeps = 0;
    bool converged = true;
};

// Euclidean projection onto the intersection of the disks and the box by
// Dykstra's algorithm. Each sweep projects onto every disk and then the box,
// carrying one correction vector per set. Stops once a sweep moves neither
// the iterate nor any correction by `tolerance` or more; the iterate alone
// can stall for a sweep while corrections are still being exchanged.
inline ProjectionResult dykstra_project(std::span<const Disk> disks, const Box2& box, Point2 q,
                                        double tolerance = 1e-10, int max_sweeps = 10000) {
    ProjectionResult out{q, 0, true};
    if (max_violation(disks, box, q) <= 0.0) return out;
    if (disks.empty()) {
        out.point = box.clamp(q);
        out.sweeps = 1;
        return out;
    }

    std::vector<Point2> corrections(disks.size() + 1, Point2{});
    Point2 x = q;
    auto step = [&](std::size_t j, Point2 y_of_shifted, Point2 shifted, double& change) {
        const Point2 c = shifted - y_of_shifted;
        change = std::max(change, distance(c, corrections[j]));
        corrections[j] = c;
        x = y_of_shifted;
    };
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        const Point2 start = x;
        double change = 0.0;
        for (std::size_t j = 0; j < disks.size(); ++j) {
            const Point2 shifted = x + corrections[j];
            step(j, project_onto_disk(disks[j], shifted), shifted, change);
        }
        const Point2 shifted = x + corrections.back();
        step(disks.size(), box.clamp(shifted), shifted, change);
        out.sweeps = sweep;
        if (distance(x, start) < tolerance && change < tolerance) {
            out.point = x;
            return out;
        }
    }
    out.point = x;
    out.converged = false;
    return out;
}

inline Point2 project(const FeasibleRegion& region, Point2 q) {
    if (region.empty) throw StateError("projection onto an empty region");
    if (region.box_only || region.disks.empty()) return region.box.clamp(q);
    return dykstra_project(region.disks, region.box, q).point;
}

}  // namespace uavplace::region
