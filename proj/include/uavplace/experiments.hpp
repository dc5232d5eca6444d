#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "objective.hpp"
#include "scenario.hpp"
#include "solver.hpp"

// Canned instances of the reference numerical study (200 devices over a
// 250 m x 250 m area, UAV at 650 m) and the bands their results are judged by.

namespace uavplace::experiments {

// Published reference results.
struct Reported {
    Point2 placement;
    double objective;  // J/m^2
    double lifetime;   // s
};
inline constexpr Reported kUniformReported{{131.0, 128.0}, 5.19, 282096.0};
inline constexpr Reported kNonuniformReported{{92.0, 156.0}, 5.22, 283727.0};

inline constexpr double kReferenceC = 3e8;
inline constexpr double kAreaSide = 250.0;
inline constexpr double kAltitude = 650.0;
inline constexpr double kLowAltitude = 30.0;
inline constexpr std::size_t kUsers = 200;
inline constexpr double kEnergyLow = 4500.0;
inline constexpr double kEnergyHigh = 18000.0;
inline constexpr int kMaxIters = 100;

// Acceptance bands for the uniform case.
inline constexpr double kObjectiveLow = 5.0, kObjectiveHigh = 5.4;
inline constexpr double kLifetimeLow = 2.70e5, kLifetimeHigh = 2.95e5;
inline constexpr Point2 kUniformCenter{125.0, 125.0};
inline constexpr double kPlacementRadius = 15.0;

inline AreaBounds reference_bounds(double z = kAltitude) {
    return square_area(kAreaSide, z, z);
}

inline Scenario uniform_scenario(std::uint64_t seed = 1, double z = kAltitude) {
    return generate_uniform(kUsers, reference_bounds(z), kEnergyLow, kEnergyHigh, seed,
                            table_one_rf(kReferenceC));
}

// Dense cluster (150 devices) upper-left, sparse cluster (50) lower-right.
inline std::vector<ClusterSpec> two_cluster_specs() {
    return {{{80.0, 170.0}, 30.0, 150, kEnergyLow, kEnergyHigh},
            {{190.0, 60.0}, 30.0, 50, kEnergyLow, kEnergyHigh}};
}

inline Scenario nonuniform_scenario(std::uint64_t seed = 1, double z = kAltitude) {
    return generate_clustered(two_cluster_specs(), reference_bounds(z), seed,
                              table_one_rf(kReferenceC));
}

inline solver::SolverConfig box_config() {
    solver::SolverConfig c;
    c.mode = solver::Mode::box;
    c.max_iters = kMaxIters;
    return c;
}

inline Point2 centroid(const std::vector<UserDevice>& users, std::size_t first, std::size_t count) {
    Point2 c;
    for (std::size_t i = first; i < first + count; ++i) c = c + users[i].position();
    return (1.0 / static_cast<double>(count)) * c;
}

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

inline std::vector<Verdict> judge_uniform(const solver::SolveReport& r) {
    const double off = distance(r.placement, kUniformCenter);
    return {
        {"objective in [5.0, 5.4] J/m^2", r.objective >= kObjectiveLow && r.objective <= kObjectiveHigh,
         fmt("%.4f J/m^2 (reported %.2f)", r.objective, kUniformReported.objective)},
        {"lifetime in [2.70e5, 2.95e5] s",
         r.lifetime_seconds >= kLifetimeLow && r.lifetime_seconds <= kLifetimeHigh,
         fmt("%.0f s (reported %.0f)", r.lifetime_seconds, kUniformReported.lifetime)},
        {"placement within 15 m of (125, 125)", off <= kPlacementRadius,
         fmt("(%.2f, %.2f), %.2f m off (reported (%.0f, %.0f))", r.placement.x, r.placement.y, off,
             kUniformReported.placement.x, kUniformReported.placement.y)},
        {"at most 100 iterations", r.converged && r.iterations <= kMaxIters,
         fmt("%d iterations, converged=%s", r.iterations, r.converged ? "true" : "false")},
    };
}

inline std::vector<Verdict> judge_nonuniform(const Scenario& s, const solver::SolveReport& r) {
    const auto specs = two_cluster_specs();
    const Point2 dense = centroid(s.users, 0, specs[0].count);
    const Point2 sparse = centroid(s.users, specs[0].count, specs[1].count);
    const double to_dense = distance(r.placement, dense);
    const double to_sparse = distance(r.placement, sparse);
    return {{"placement closer to the dense cluster", r.converged && to_dense < to_sparse,
             fmt("(%.2f, %.2f): %.2f m to dense centroid, %.2f m to sparse centroid; %.4f J/m^2 "
                 "(reported (%.0f, %.0f), %.2f J/m^2)",
                 r.placement.x, r.placement.y, to_dense, to_sparse, r.objective,
                 kNonuniformReported.placement.x, kNonuniformReported.placement.y,
                 kNonuniformReported.objective)}};
}

inline constexpr std::size_t kNsdSamples = 1000;

inline std::vector<Verdict> judge_concavity(std::uint64_t seed = 1) {
    const auto high = uniform_scenario(seed, kAltitude);
    const auto low = uniform_scenario(seed, kLowAltitude);
    const auto cert_high = objective::concavity_certificate(high.bounds);
    const auto cert_low = objective::concavity_certificate(low.bounds);
    const auto scan_high = objective::nsd_scan(high.users, kAltitude, high.bounds, kNsdSamples, seed);
    const auto scan_low = objective::nsd_scan(low.users, kLowAltitude, low.bounds, kNsdSamples, seed);
    return {
        {"z=650: certificate holds", cert_high.holds,
         fmt("650 > sqrt(3) * %.2f = %.2f", cert_high.d_max, cert_high.threshold)},
        {"z=650: Hessian NSD at all samples", scan_high.all_nsd,
         fmt("largest eigenvalue %.3e over %zu points", scan_high.worst_eigenvalue, scan_high.samples)},
        {"z=30: certificate fails", !cert_low.holds,
         fmt("30 <= sqrt(3) * %.2f = %.2f", cert_low.d_max, cert_low.threshold)},
        {"z=30: positive-eigenvalue witness", !scan_low.all_nsd && scan_low.worst_eigenvalue > 0.0,
         fmt("eigenvalue %.3e at (%.2f, %.2f)", scan_low.worst_eigenvalue, scan_low.witness.x,
             scan_low.witness.y)},
    };
}

}  // namespace uavplace::experiments
