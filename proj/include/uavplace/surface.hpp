#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "objective.hpp"
#include "oracle.hpp"
#include "scenario.hpp"

// Objective sampled on a regular grid, written as CSV (x,y,value) or as a
// hand-built SVG heatmap.

namespace uavplace::surface {

struct Surface {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> values;  // row-major in y: values[iy * xs.size() + ix]
    double z = 0.0;

    double at(std::size_t ix, std::size_t iy) const { return values[iy * xs.size() + ix]; }
};

inline Surface sample(std::span<const UserDevice> users, const AreaBounds& b, double z,
                      double spacing) {
    if (!(spacing > 0.0)) throw DomainError("surface spacing must be positive");
    Surface s;
    s.z = z;
    s.xs = oracle::GridSpec::axis(b.x_min, b.x_max, spacing);
    s.ys = oracle::GridSpec::axis(b.y_min, b.y_max, spacing);
    s.values.reserve(s.xs.size() * s.ys.size());
    for (double y : s.ys)
        for (double x : s.xs) s.values.push_back(objective::value(users, z, {x, y}));
    return s;
}

// Largest Hessian eigenvalue over the grid nodes.
inline double max_hessian_eigenvalue(std::span<const UserDevice> users, const Surface& s) {
    double worst = -std::numeric_limits<double>::infinity();
    for (double y : s.ys)
        for (double x : s.xs)
            worst = std::max(worst, objective::hessian(users, s.z, {x, y}).eigenvalues().second);
    return worst;
}

inline std::string to_csv(const Surface& s) {
    std::string out = "x,y,value\n";
    char buf[128];
    for (std::size_t iy = 0; iy < s.ys.size(); ++iy)
        for (std::size_t ix = 0; ix < s.xs.size(); ++ix) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.xs[ix], s.ys[iy], s.at(ix, iy));
            out += buf;
        }
    return out;
}

namespace detail {

// Piecewise-linear ramp through five stops, dark blue -> yellow.
inline std::string color_for(double t) {
    static constexpr std::array<std::array<double, 3>, 5> stops{{
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
    t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
    const double f = t - static_cast<double>(i);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                  static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                  static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
    return buf;
}

}  // namespace detail

inline std::string to_svg(const Surface& s, const std::string& title = "") {
    constexpr double kPlot = 500.0, kLeft = 70.0, kTop = 40.0, kLegend = 20.0;
    const double width = kLeft + kPlot + 110.0, height = kTop + kPlot + 60.0;
    const auto [lo_it, hi_it] = std::minmax_element(s.values.begin(), s.values.end());
    const double lo = *lo_it, hi = *hi_it, span = hi > lo ? hi - lo : 1.0;

    const double x0 = s.xs.front(), x1 = s.xs.back(), y0 = s.ys.front(), y1 = s.ys.back();
    const double sx = x1 > x0 ? kPlot / (x1 - x0) : kPlot;
    const double sy = y1 > y0 ? kPlot / (y1 - y0) : kPlot;
    // cell edges halfway between nodes
    auto edge = [](const std::vector<double>& v, std::size_t i, bool upper) {
        if (v.size() == 1) return v[0] + (upper ? 0.5 : -0.5);
        if (upper) return i + 1 < v.size() ? 0.5 * (v[i] + v[i + 1]) : v[i];
        return i > 0 ? 0.5 * (v[i - 1] + v[i]) : v[i];
    };

    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "font-family=\"sans-serif\" font-size=\"12\">\n",
                  width, height);
    out += buf;
    if (!title.empty()) {
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"24\" text-anchor=\"middle\">", kLeft + kPlot / 2);
        out += buf + title + "</text>\n";
    }
    for (std::size_t iy = 0; iy < s.ys.size(); ++iy) {
        const double ya = edge(s.ys, iy, false), yb = edge(s.ys, iy, true);
        for (std::size_t ix = 0; ix < s.xs.size(); ++ix) {
            const double xa = edge(s.xs, ix, false), xb = edge(s.xs, ix, true);
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"%s\"/>\n",
                          kLeft + (xa - x0) * sx, kTop + kPlot - (yb - y0) * sy,
                          std::max((xb - xa) * sx, 0.5), std::max((yb - ya) * sy, 0.5),
                          detail::color_for((s.at(ix, iy) - lo) / span).c_str());
            out += buf;
        }
    }
    // axes and ticks
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n",
                  kLeft, kTop, kPlot, kPlot);
    out += buf;
    for (int t = 0; t <= 5; ++t) {
        const double fx = x0 + (x1 - x0) * t / 5.0, fy = y0 + (y1 - y0) * t / 5.0;
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%g</text>\n",
                      kLeft + kPlot * t / 5.0, kTop + kPlot + 18.0, fx);
        out += buf;
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%g</text>\n",
                      kLeft - 6.0, kTop + kPlot - kPlot * t / 5.0 + 4.0, fy);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">x (m)</text>\n",
                  kLeft + kPlot / 2, kTop + kPlot + 40.0);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"18\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 18 %.1f)\">y (m)</text>\n",
                  kTop + kPlot / 2, kTop + kPlot / 2);
    out += buf;
    // legend
    const double lx = kLeft + kPlot + 20.0;
    for (int i = 0; i < 50; ++i) {
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.1f\" y=\"%.2f\" width=\"%.1f\" height=\"%.2f\" fill=\"%s\"/>\n", lx,
                      kTop + kPlot - (i + 1) * kPlot / 50.0, kLegend, kPlot / 50.0 + 0.2,
                      detail::color_for((i + 0.5) / 50.0).c_str());
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\">%.4g</text>\n", lx + kLegend + 4, kTop + 10, hi);
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\">%.4g</text>\n", lx + kLegend + 4, kTop + kPlot, lo);
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\">J/m&#178;</text>\n", lx, kTop + kPlot + 18.0);
    out += buf;
    out += "</svg>\n";
    return out;
}

}  // namespace uavplace::surface
