#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "channel.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "objective.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "region.hpp"
#include "scenario.hpp"

namespace uavplace::solver {

using Mode = oracle::Mode;

enum class InitKind { centroid, point, seeded_random };

struct SolverConfig {
    std::optional<double> step_size;  // m^3/J; unset = 0.1 / |grad F(p0)|
    double tolerance = 1e-3;          // m, stop when an update moves less
    int max_iters = 100;
    Mode mode = Mode::region;
    InitKind init = InitKind::centroid;
    Point2 init_point;                // for InitKind::point
    std::uint64_t init_seed = 0;      // for InitKind::seeded_random
    bool line_search = true;
};

inline void validate(const SolverConfig& c) {
    if (c.step_size && !(*c.step_size > 0.0)) throw ValidationError("step size must be positive");
    if (!(c.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
    if (c.max_iters < 1) throw ValidationError("max_iters must be at least 1");
}

struct TrajectoryPoint {
    Point2 point;
    double objective = 0.0;
};

struct SolveReport {
    Point2 placement;
    double altitude = 0.0;
    double objective = 0.0;         // J/m^2
    double lifetime_seconds = 0.0;  // objective / K
    double k = 0.0;
    int iterations = 0;
    bool converged = false;
    double last_movement = 0.0;
    double final_step_size = 0.0;
    std::vector<TrajectoryPoint> trajectory;
    objective::ConcavityCertificate certificate;
    std::optional<std::string> infeasible;
    Mode mode = Mode::region;
};

inline constexpr double kStepFloor = 1e-12;

namespace detail {

inline Point2 initial_point(const Scenario& s, const SolverConfig& c) {
    switch (c.init) {
        case InitKind::point:
            return c.init_point;
        case InitKind::seeded_random: {
            SplitMix64 rng(c.init_seed);
            const double x = rng.uniform(s.bounds.x_min, s.bounds.x_max);
            return {x, rng.uniform(s.bounds.y_min, s.bounds.y_max)};
        }
        case InitKind::centroid:
        default:
            return s.bounds.center();
    }
}

// Gradient projection from `start` over an already built region.
inline SolveReport ascend(const Scenario& s, const SolverConfig& config,
                          const region::FeasibleRegion& feasible, Point2 start) {
    const double z = s.bounds.z_min;
    const auto k = channel::system_constant(s.rf, s.users.size());
    auto value = [&](Point2 p) { return objective::value(s.users, z, p); };
    auto project = [&](Point2 p) { return region::project(feasible, p); };

    SolveReport r;
    r.altitude = z;
    r.k = k.k;
    r.mode = config.mode;
    r.certificate = objective::concavity_certificate(s.bounds);

    Point2 p = project(start);
    double f = value(p);
    r.trajectory.push_back({p, f});

    const Point2 g0 = objective::gradient(s.users, z, p);
    double gamma = config.step_size.value_or(norm(g0) > 0.0 ? 0.1 / norm(g0) : 1.0);

    for (int n = 1; n <= config.max_iters; ++n) {
        const Point2 g = objective::gradient(s.users, z, p);
        if (!std::isfinite(g.x) || !std::isfinite(g.y))
            throw NumericalError("non-finite gradient at iteration " + std::to_string(n));

        Point2 next;
        double f_next = 0.0;
        if (config.line_search) {
            // start one doubling above the last accepted step, halve until F does not drop
            double trial = n == 1 ? gamma : 2.0 * gamma;
            bool accepted = false;
            while (trial >= kStepFloor) {
                next = project(p + trial * g);
                f_next = value(next);
                if (f_next >= f) {
                    accepted = true;
                    break;
                }
                trial *= 0.5;
            }
            if (!accepted) {
                next = p;
                f_next = f;
            } else {
                gamma = trial;
            }
        } else {
            next = project(p + gamma * g);
            f_next = value(next);
        }
        if (!std::isfinite(f_next)) throw NumericalError("non-finite objective");

        const double moved = distance(next, p);
        p = next;
        f = f_next;
        r.iterations = n;
        r.last_movement = moved;
        if (static_cast<int>(r.trajectory.size()) <= config.max_iters)
            r.trajectory.push_back({p, f});
        if (moved < config.tolerance) {
            r.converged = true;
            break;
        }
    }
    r.placement = p;
    r.objective = f;
    r.lifetime_seconds = f / k.k;
    r.final_step_size = gamma;
    return r;
}

inline SolveReport infeasible_report(const Scenario& s, const SolverConfig& config,
                                     const std::string& cause) {
    SolveReport r;
    r.altitude = s.bounds.z_min;
    r.k = channel::system_constant(s.rf, s.users.size()).k;
    r.mode = config.mode;
    r.certificate = objective::concavity_certificate(s.bounds);
    r.infeasible = cause;
    return r;
}

inline region::FeasibleRegion region_for(const Scenario& s, Mode mode) {
    return mode == Mode::region ? region::build(s) : region::FeasibleRegion::from_box(s.bounds);
}

}  // namespace detail

// Gradient projection ascent: p <- Project(p + gamma grad F(p)) until an update
// moves less than the tolerance or max_iters is reached. An empty region
// yields a report with `infeasible` set, not an exception.
inline SolveReport solve(const Scenario& s, const SolverConfig& config) {
    validate(s);
    validate(config);
    const auto feasible = detail::region_for(s, config.mode);
    if (feasible.empty) return detail::infeasible_report(s, config, feasible.cause);
    return detail::ascend(s, config, feasible, detail::initial_point(s, config));
}

// Grid search first, then gradient projection from the best node. The
// returned objective is never below the grid optimum.
inline SolveReport solve_grid_refined(const Scenario& s, const SolverConfig& config,
                                      const oracle::GridSpec& grid) {
    validate(s);
    validate(config);
    const auto feasible = detail::region_for(s, config.mode);
    if (feasible.empty) return detail::infeasible_report(s, config, feasible.cause);
    const auto coarse = oracle::grid_search(s, grid, config.mode);
    auto report = detail::ascend(s, config, feasible, coarse.best);
    if (report.objective < coarse.best_value) {
        report.placement = coarse.best;
        report.objective = objective::value(s.users, s.bounds.z_min, coarse.best);
        report.lifetime_seconds = report.objective / report.k;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Serialization

inline const char* to_string(Mode m) { return m == Mode::region ? "region" : "box"; }

inline nlohmann::json to_json(const SolveReport& r) {
    nlohmann::json traj = nlohmann::json::array();
    for (const auto& t : r.trajectory)
        traj.push_back({{"x", t.point.x}, {"y", t.point.y}, {"objective", t.objective}});
    nlohmann::json j{
        {"mode", to_string(r.mode)},
        {"placement", {{"x", r.placement.x}, {"y", r.placement.y}, {"z", r.altitude}}},
        {"objective", r.objective},
        {"lifetime_seconds", r.lifetime_seconds},
        {"k", r.k},
        {"iterations", r.iterations},
        {"converged", r.converged},
        {"last_movement", r.last_movement},
        {"final_step_size", r.final_step_size},
        {"certificate",
         {{"z_min", r.certificate.z_min},
          {"d_max", r.certificate.d_max},
          {"threshold", r.certificate.threshold},
          {"holds", r.certificate.holds},
          {"marginal", r.certificate.marginal}}},
        {"trajectory", traj},
        {"infeasible", r.infeasible ? nlohmann::json(*r.infeasible) : nlohmann::json(nullptr)}};
    return j;
}

inline SolveReport report_from_json(const nlohmann::json& j) {
    using uavplace::detail::require_member;
    using uavplace::detail::require_number;
    SolveReport r;
    const auto& mode = require_member(j, "mode");
    if (!mode.is_string() || (mode != "region" && mode != "box"))
        throw ParseError("mode", "field 'mode' must be \"region\" or \"box\"");
    r.mode = mode == "region" ? Mode::region : Mode::box;
    const auto& place = require_member(j, "placement");
    r.placement = {require_number(place, "x", "placement"), require_number(place, "y", "placement")};
    r.altitude = require_number(place, "z", "placement");
    r.objective = require_number(j, "objective", "");
    r.lifetime_seconds = require_number(j, "lifetime_seconds", "");
    r.k = require_number(j, "k", "");
    r.iterations = static_cast<int>(require_number(j, "iterations", ""));
    const auto& conv = require_member(j, "converged");
    if (!conv.is_boolean()) throw ParseError("converged", "field 'converged' must be a boolean");
    r.converged = conv.get<bool>();
    r.last_movement = require_number(j, "last_movement", "");
    r.final_step_size = require_number(j, "final_step_size", "");
    const auto& cert = require_member(j, "certificate");
    r.certificate.z_min = require_number(cert, "z_min", "certificate");
    r.certificate.d_max = require_number(cert, "d_max", "certificate");
    r.certificate.threshold = require_number(cert, "threshold", "certificate");
    r.certificate.holds = cert.value("holds", false);
    r.certificate.marginal = cert.value("marginal", false);
    const auto& traj = require_member(j, "trajectory");
    if (!traj.is_array()) throw ParseError("trajectory", "field 'trajectory' is not an array");
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const std::string path = "trajectory[" + std::to_string(i) + "]";
        r.trajectory.push_back({{require_number(traj[i], "x", path), require_number(traj[i], "y", path)},
                                require_number(traj[i], "objective", path)});
    }
    if (auto it = j.find("infeasible"); it != j.end() && it->is_string())
        r.infeasible = it->get<std::string>();
    return r;
}

// Trajectory as CSV: iteration,x,y,objective
inline std::string trajectory_csv(const SolveReport& r) {
    std::string out = "iteration,x,y,objective\n";
    char buf[160];
    for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
        const auto& t = r.trajectory[i];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", i, t.point.x, t.point.y, t.objective);
        out += buf;
    }
    return out;
}

}  // namespace uavplace::solver
