#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "scenario.hpp"

// Free-space line-of-sight uplink. Linear units throughout (W, J, m, Hz).

namespace uavplace::channel {

namespace detail {
inline void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be positive and finite");
}
}  // namespace detail

// (4 pi d f / c)^2
inline double path_loss(double distance, double frequency, double c = kSpeedOfLight) {
    detail::require_positive(distance, "distance");
    detail::require_positive(frequency, "frequency");
    detail::require_positive(c, "speed of light");
    const double a = 4.0 * std::numbers::pi * distance * frequency / c;
    return a * a;
}

// Shannon rate B_i log2(1 + p / (L N)).
inline double rate(double bandwidth_per_user, double power, double loss, double noise) {
    detail::require_positive(bandwidth_per_user, "bandwidth");
    detail::require_positive(power, "power");
    detail::require_positive(loss, "loss");
    detail::require_positive(noise, "noise");
    return bandwidth_per_user * std::log2(1.0 + (power / loss) / noise);
}

// Power that achieves `rate_bps` over the given loss: (2^(R/B_i) - 1) N L.
inline double min_power_for_rate(double rate_bps, double bandwidth_per_user, double loss,
                                 double noise) {
    detail::require_positive(rate_bps, "rate");
    detail::require_positive(bandwidth_per_user, "bandwidth");
    detail::require_positive(loss, "loss");
    detail::require_positive(noise, "noise");
    return std::expm1(rate_bps / bandwidth_per_user * std::numbers::ln2) * noise * loss;
}

// K = (2^(R|I|/B) - 1) N (4 pi f / c)^2, so that the minimum power at 3D
// distance d is K d^2. Units W/m^2.
struct SystemConstant {
    double k = 0.0;
    // derivation inputs
    double rate = 0.0;
    std::size_t user_count = 0;
    double bandwidth = 0.0;
    double noise = 0.0;
    double frequency = 0.0;
    double c = kSpeedOfLight;
};

inline SystemConstant system_constant(const RfParams& rf, std::size_t user_count) {
    if (user_count == 0) throw DomainError("user count must be at least 1");
    detail::require_positive(rf.rate, "rate");
    detail::require_positive(rf.bandwidth, "bandwidth");
    detail::require_positive(rf.noise, "noise");
    detail::require_positive(rf.frequency, "frequency");
    detail::require_positive(rf.c, "speed of light");

    const double exponent = rf.rate * static_cast<double>(user_count) / rf.bandwidth;
    if (exponent > 1000.0)
        throw ConfigurationError("spectral efficiency R*|I|/B = " + std::to_string(exponent) +
                                 " bit/s/Hz overflows 2^x; review rate, bandwidth and user count");
    const double g = 4.0 * std::numbers::pi * rf.frequency / rf.c;
    SystemConstant out;
    out.k = std::expm1(exponent * std::numbers::ln2) * rf.noise * g * g;
    out.rate = rf.rate;
    out.user_count = user_count;
    out.bandwidth = rf.bandwidth;
    out.noise = rf.noise;
    out.frequency = rf.frequency;
    out.c = rf.c;
    if (!(out.k > 0.0) || !std::isfinite(out.k))
        throw ConfigurationError("system constant K is not a positive finite number");
    return out;
}

inline double required_power(const SystemConstant& k, double distance) {
    detail::require_positive(distance, "distance");
    return k.k * distance * distance;
}

// tau = E / (K d^2): seconds of uplink a device with energy E sustains.
inline double lifetime(double energy, const SystemConstant& k, double distance) {
    detail::require_positive(energy, "energy");
    detail::require_positive(distance, "distance");
    return energy / (k.k * distance * distance);
}

}  // namespace uavplace::channel
