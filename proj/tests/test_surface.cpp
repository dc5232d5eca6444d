#include <gtest/gtest.h>

#include <uavplace/experiments.hpp>
#include <uavplace/surface.hpp>

using namespace uavplace;

TEST(Surface, CsvLayout) {
    const auto s = experiments::uniform_scenario(1);
    const auto surf = surface::sample(s.users, s.bounds, 650, 50);
    EXPECT_EQ(surf.xs.size(), 6u);
    const auto csv = surface::to_csv(surf);
    EXPECT_EQ(csv.rfind("x,y,value\n", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), 37u);
    EXPECT_NE(csv.find("\n0,0,"), std::string::npos);
    EXPECT_THROW(surface::sample(s.users, s.bounds, 650, 0), DomainError);
}

TEST(Surface, ConcaveAtHighAltitudeOnly) {
    const auto s = experiments::uniform_scenario(1);
    EXPECT_LT(surface::max_hessian_eigenvalue(s.users, surface::sample(s.users, s.bounds, 650, 10)), 0.0);
    EXPECT_GT(surface::max_hessian_eigenvalue(s.users, surface::sample(s.users, s.bounds, 30, 10)), 0.0);
}

TEST(Surface, SvgHasCellsAndAxes) {
    const auto s = experiments::uniform_scenario(1);
    const auto surf = surface::sample(s.users, s.bounds, 650, 25);
    const auto svg = surface::to_svg(surf, "z = 650 m");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("x (m)"), std::string::npos);
    EXPECT_NE(svg.find("y (m)"), std::string::npos);
    EXPECT_NE(svg.find("z = 650 m"), std::string::npos);
    std::size_t rects = 0;
    for (auto pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 1)) ++rects;
    EXPECT_GE(rects, 121u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}
