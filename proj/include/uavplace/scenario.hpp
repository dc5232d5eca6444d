#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace uavplace {

inline constexpr double kSpeedOfLight = 299'792'458.0;

struct UserDevice {
    double x = 0.0;       // m
    double y = 0.0;       // m
    double energy = 0.0;  // J, residual battery energy

    Point2 position() const { return {x, y}; }
    friend bool operator==(const UserDevice&, const UserDevice&) = default;
};

// Radio and system parameters. Per-user bandwidth is bandwidth / user count
// and is never stored.
struct RfParams {
    double rate = 0.0;       // bit/s, required uplink rate R
    double bandwidth = 0.0;  // Hz, total B shared by FDMA
    double noise = 0.0;      // W
    double frequency = 0.0;  // Hz
    double p_max = 0.0;      // W
    double tau_th = 0.0;     // s, minimum uplink duration
    double c = kSpeedOfLight;

    friend bool operator==(const RfParams&, const RfParams&) = default;
};

struct AreaBounds {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double z_min = 0.0, z_max = 0.0;

    bool contains_xy(Point2 p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    Point2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
    double diagonal() const { return std::hypot(x_max - x_min, y_max - y_min); }

    friend bool operator==(const AreaBounds&, const AreaBounds&) = default;
};

struct Scenario {
    std::vector<UserDevice> users;
    RfParams rf;
    AreaBounds bounds;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline void validate(const RfParams& rf) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError(std::string("rf.") + name + " must be positive and finite");
    };
    positive(rf.rate, "rate");
    positive(rf.bandwidth, "bandwidth");
    positive(rf.noise, "noise");
    positive(rf.frequency, "frequency");
    positive(rf.p_max, "p_max");
    positive(rf.tau_th, "tau_th");
    positive(rf.c, "c");
}

// Zero-extent x/y ranges are accepted: a degenerate area is a legitimate
// single-point deployment.
inline void validate(const AreaBounds& b) {
    for (double v : {b.x_min, b.x_max, b.y_min, b.y_max, b.z_min, b.z_max})
        if (!std::isfinite(v)) throw ValidationError("bounds must be finite");
    if (b.x_min > b.x_max) throw ValidationError("bounds: x_min > x_max");
    if (b.y_min > b.y_max) throw ValidationError("bounds: y_min > y_max");
    if (!(b.z_min > 0.0)) throw ValidationError("bounds: z_min must be positive");
    if (b.z_min > b.z_max) throw ValidationError("bounds: z_min > z_max");
}

inline void validate(const Scenario& s) {
    validate(s.rf);
    validate(s.bounds);
    if (s.users.empty()) throw ValidationError("scenario has no users");
    for (std::size_t i = 0; i < s.users.size(); ++i) {
        const auto& u = s.users[i];
        if (!(u.energy > 0.0) || !std::isfinite(u.energy))
            throw ValidationError("user " + std::to_string(i) + ": energy must be positive");
        if (!s.bounds.contains_xy(u.position()))
            throw ValidationError("user " + std::to_string(i) + ": position outside area bounds");
    }
}

// Table I of the reference experiments: R = 4 Mbit/s, B = 50 MHz,
// N = 1e-14 W, f = 4 GHz, P_max = 0.5 W, tau_th = 900 s.
inline RfParams table_one_rf(double c = kSpeedOfLight) {
    return {4e6, 50e6, 1e-14, 4e9, 0.5, 900.0, c};
}

inline AreaBounds square_area(double side, double z_min, double z_max) {
    return {0.0, side, 0.0, side, z_min, z_max};
}

// ---------------------------------------------------------------------------
// Generators

inline Scenario generate_uniform(std::size_t count, const AreaBounds& bounds, double energy_low,
                                 double energy_high, std::uint64_t seed,
                                 const RfParams& rf = table_one_rf()) {
    if (count == 0) throw ValidationError("count must be at least 1");
    validate(bounds);
    if (!(energy_low > 0.0) || !(energy_low <= energy_high) || !std::isfinite(energy_high))
        throw ValidationError("energy interval must satisfy 0 < low <= high");

    SplitMix64 rng(seed);
    Scenario s;
    s.rf = rf;
    s.bounds = bounds;
    s.seed = seed;
    s.users.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        UserDevice u;
        u.x = rng.uniform(bounds.x_min, bounds.x_max);
        u.y = rng.uniform(bounds.y_min, bounds.y_max);
        u.energy = rng.uniform(energy_low, energy_high);
        s.users.push_back(u);
    }
    validate(s);
    return s;
}

struct ClusterSpec {
    Point2 center;
    double stddev = 0.0;  // m, isotropic
    std::size_t count = 0;
    double energy_low = 4500.0;
    double energy_high = 18000.0;
};

// Isotropic Gaussian clusters. Draws landing outside the area are redrawn.
inline Scenario generate_clustered(const std::vector<ClusterSpec>& clusters,
                                   const AreaBounds& bounds, std::uint64_t seed,
                                   const RfParams& rf = table_one_rf()) {
    if (clusters.empty()) throw ValidationError("cluster list is empty");
    validate(bounds);
    constexpr int kMaxRedraws = 10000;

    SplitMix64 rng(seed);
    Scenario s;
    s.rf = rf;
    s.bounds = bounds;
    s.seed = seed;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        const auto& cl = clusters[c];
        const std::string tag = "cluster " + std::to_string(c) + ": ";
        if (!bounds.contains_xy(cl.center)) throw ValidationError(tag + "center outside bounds");
        if (!(cl.stddev >= 0.0)) throw ValidationError(tag + "stddev must be non-negative");
        if (!(cl.energy_low > 0.0) || !(cl.energy_low <= cl.energy_high))
            throw ValidationError(tag + "energy interval must satisfy 0 < low <= high");
        for (std::size_t i = 0; i < cl.count; ++i) {
            Point2 p;
            int tries = 0;
            do {
                if (++tries > kMaxRedraws)
                    throw ValidationError(tag + "too many draws outside bounds");
                p.x = rng.normal(cl.center.x, cl.stddev);
                p.y = rng.normal(cl.center.y, cl.stddev);
            } while (!bounds.contains_xy(p));
            s.users.push_back({p.x, p.y, rng.uniform(cl.energy_low, cl.energy_high)});
        }
    }
    validate(s);
    return s;
}

// ---------------------------------------------------------------------------
// File format
//
// {
//   "users":  [{"x": .., "y": .., "energy": ..}, ...],
//   "rf":     {"rate", "bandwidth", "noise", "frequency", "p_max", "tau_th", "c"?},
//   "bounds": {"x_min", "x_max", "y_min", "y_max", "z_min", "z_max"},
//   "seed":   <uint64>            (optional)
// }
//
// Doubles are written with 17 significant digits, so save/load is exact.

namespace detail {

inline double require_number(const nlohmann::json& obj, const std::string& key,
                             const std::string& path) {
    const std::string field = path.empty() ? key : path + "." + key;
    if (!obj.is_object()) throw ParseError(path, "expected an object at '" + path + "'");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(field, "missing field '" + field + "'");
    if (!it->is_number()) throw ParseError(field, "field '" + field + "' is not a number");
    return it->get<double>();
}

inline const nlohmann::json& require_member(const nlohmann::json& obj, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(key, "missing field '" + key + "'");
    return *it;
}

}  // namespace detail

inline nlohmann::json to_json(const RfParams& rf) {
    return {{"rate", rf.rate},         {"bandwidth", rf.bandwidth}, {"noise", rf.noise},
            {"frequency", rf.frequency}, {"p_max", rf.p_max},       {"tau_th", rf.tau_th},
            {"c", rf.c}};
}

inline nlohmann::json to_json(const AreaBounds& b) {
    return {{"x_min", b.x_min}, {"x_max", b.x_max}, {"y_min", b.y_min},
            {"y_max", b.y_max}, {"z_min", b.z_min}, {"z_max", b.z_max}};
}

inline nlohmann::json to_json(const Scenario& s) {
    nlohmann::json users = nlohmann::json::array();
    for (const auto& u : s.users) users.push_back({{"x", u.x}, {"y", u.y}, {"energy", u.energy}});
    nlohmann::json j{{"users", users}, {"rf", to_json(s.rf)}, {"bounds", to_json(s.bounds)}};
    if (s.seed) j["seed"] = *s.seed;
    return j;
}

inline RfParams rf_from_json(const nlohmann::json& j) {
    using detail::require_number;
    RfParams rf;
    rf.rate = require_number(j, "rate", "rf");
    rf.bandwidth = require_number(j, "bandwidth", "rf");
    rf.noise = require_number(j, "noise", "rf");
    rf.frequency = require_number(j, "frequency", "rf");
    rf.p_max = require_number(j, "p_max", "rf");
    rf.tau_th = require_number(j, "tau_th", "rf");
    if (j.contains("c")) rf.c = require_number(j, "c", "rf");
    return rf;
}

inline AreaBounds bounds_from_json(const nlohmann::json& j) {
    using detail::require_number;
    return {require_number(j, "x_min", "bounds"), require_number(j, "x_max", "bounds"),
            require_number(j, "y_min", "bounds"), require_number(j, "y_max", "bounds"),
            require_number(j, "z_min", "bounds"), require_number(j, "z_max", "bounds")};
}

// Parses and validates. Parse errors name the offending field.
inline Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("", "scenario document must be an object");
    Scenario s;
    const auto& users = detail::require_member(j, "users");
    if (!users.is_array()) throw ParseError("users", "field 'users' is not an array");
    for (std::size_t i = 0; i < users.size(); ++i) {
        const std::string path = "users[" + std::to_string(i) + "]";
        s.users.push_back({detail::require_number(users[i], "x", path),
                           detail::require_number(users[i], "y", path),
                           detail::require_number(users[i], "energy", path)});
    }
    s.rf = rf_from_json(detail::require_member(j, "rf"));
    s.bounds = bounds_from_json(detail::require_member(j, "bounds"));
    if (auto it = j.find("seed"); it != j.end() && !it->is_null()) {
        if (!it->is_number_unsigned()) throw ParseError("seed", "field 'seed' must be an unsigned integer");
        s.seed = it->get<std::uint64_t>();
    }
    validate(s);
    return s;
}

inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("", std::string("malformed document: ") + e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline Scenario load(const std::string& path) {
    return scenario_from_json(parse_json_text(read_text_file(path)));
}

inline void save(const Scenario& s, const std::string& path) {
    write_text_file(path, to_json(s).dump(2) + "\n");
}

}  // namespace uavplace
