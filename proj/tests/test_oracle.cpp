#include <cmath>

#include <gtest/gtest.h>

#include <uavplace/objective.hpp>
#include <uavplace/oracle.hpp>
#include <uavplace/solver.hpp>

using namespace uavplace;

TEST(GridAxis, CoversBoundsInclusively) {
    const auto a = oracle::GridSpec::axis(0, 250, 1);
    EXPECT_EQ(a.size(), 251u);
    EXPECT_EQ(a.front(), 0.0);
    EXPECT_EQ(a.back(), 250.0);
    const auto b = oracle::GridSpec::axis(0, 10, 3);
    EXPECT_EQ(b, (std::vector<double>{0, 3, 6, 9, 10}));
    EXPECT_EQ(oracle::GridSpec::axis(4, 4, 1), (std::vector<double>{4}));
}

TEST(GridSearch, SingleUser) {
    Scenario s;
    s.users = {{50, 50, 1000}};
    s.rf = table_one_rf();
    s.bounds = square_area(250, 650, 650);
    const auto g = oracle::grid_search(s, oracle::GridSpec::over(s.bounds, 1.0), oracle::Mode::box);
    EXPECT_EQ(g.best, (Point2{50, 50}));
    EXPECT_EQ(g.evaluated, 251u * 251u);
}

TEST(GridSearch, TieBreakSmallestXThenY) {
    Scenario s;
    s.users = {{0, 5, 1}, {10, 5, 1}};
    s.rf = table_one_rf();
    s.bounds = {0, 10, 0, 10, 1, 1};
    // maxima at the two users, symmetric about x = 5
    const auto g = oracle::grid_search(s, oracle::GridSpec::over(s.bounds, 1.0), oracle::Mode::box);
    EXPECT_EQ(g.best, (Point2{0, 5}));
}

TEST(GridSearch, ReferenceScenarioMatchesSolver) {
    const auto s = generate_uniform(200, square_area(250, 650, 650), 4500, 18000, 1, table_one_rf(3e8));
    const auto g = oracle::grid_search(s, oracle::GridSpec::over(s.bounds, 1.0), oracle::Mode::box);
    solver::SolverConfig c;
    c.mode = solver::Mode::box;
    const auto r = solver::solve(s, c);
    EXPECT_NEAR(g.best_value, r.objective, 0.01);
    EXPECT_LE(g.best_value, r.objective + g.max_gradient_norm * 1.0);
}

TEST(GridSearch, EmptyRegionIsError) {
    const auto s = generate_uniform(200, square_area(250, 650, 650), 4500, 18000, 1);
    EXPECT_THROW(oracle::grid_search(s, oracle::GridSpec::over(s.bounds, 1.0), oracle::Mode::region), StateError);
    EXPECT_THROW(oracle::grid_search(s, oracle::GridSpec::over(s.bounds, 0.0), oracle::Mode::box), DomainError);
}

TEST(GridSearch, RegionModeOnlyVisitsFeasibleNodes) {
    auto s = generate_uniform(200, square_area(50, 130, 130), 4500, 18000, 5);
    s.rf.p_max = 0.35;  // d_power ~137.9 m: disks of radius ~46 m at z = 130
    const auto r = region::build(s);
    ASSERT_FALSE(r.empty) << r.cause;
    const auto g = oracle::grid_search(s, oracle::GridSpec::over(s.bounds, 1.0), oracle::Mode::region);
    EXPECT_LT(g.evaluated, 51u * 51u);
    EXPECT_TRUE(region::contains(r, g.best));
}

TEST(GridSearch, RefinementBound) {
    const auto s = generate_uniform(60, square_area(80, 200, 200), 1000, 2000, 12);
    const auto coarse = oracle::grid_search(s, oracle::GridSpec::over(s.bounds, 4.0), oracle::Mode::box);
    const auto fine = oracle::grid_search(s, oracle::GridSpec::over(s.bounds, 2.0), oracle::Mode::box);
    EXPECT_GE(fine.best_value, coarse.best_value - coarse.max_gradient_norm * 2.0);
}

TEST(FdGradient, SymmetricInstance) {
    const std::vector<UserDevice> users{{-5, 0, 2}, {5, 0, 2}, {0, -5, 2}, {0, 5, 2}};
    const auto g = oracle::fd_gradient(users, 20, {0, 0}, 1e-4);
    EXPECT_NEAR(g.x, 0.0, 1e-9);
    EXPECT_NEAR(g.y, 0.0, 1e-9);
    EXPECT_THROW(oracle::fd_gradient(users, 20, {0, 0}, 0.0), DomainError);
}

TEST(FdGradient, LargeStepDegrades) {
    const std::vector<UserDevice> users{{3, 1, 5}, {-20, 7, 9}, {12, -4, 1}};
    const Point2 p{4, 2};
    const auto exact = objective::gradient(users, 15, p);
    const double small = distance(oracle::fd_gradient(users, 15, p, 1e-4), exact);
    const double large = distance(oracle::fd_gradient(users, 15, p, 50.0), exact);
    EXPECT_GT(large, 1e3 * small);
}

TEST(FdHessian, SingleUserClosedForm) {
    const std::vector<UserDevice> users{{0, 0, 3}};
    const auto h = oracle::fd_hessian(users, 4, {0, 0}, 1e-2);
    EXPECT_NEAR(h.xx / (-2.0 * 3 / 256.0), 1.0, 1e-5);
    EXPECT_NEAR(h.yy / (-2.0 * 3 / 256.0), 1.0, 1e-5);
    EXPECT_NEAR(h.xy, 0.0, 1e-8);
    EXPECT_NEAR(h.xy, h.yx, 1e-8);
}
