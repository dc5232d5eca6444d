#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include <uavplace/scenario.hpp>

using namespace uavplace;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("uavplace_" + name)).string();
}

}  // namespace

TEST(SplitMix64, KnownSequence) {
    // first outputs for seed 0, as published with the reference generator
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(GenerateUniform, ReferenceArea) {
    const auto s = generate_uniform(200, square_area(250, 650, 650), 4500, 18000, 1);
    ASSERT_EQ(s.users.size(), 200u);
    for (const auto& u : s.users) {
        EXPECT_GE(u.x, 0.0);
        EXPECT_LE(u.x, 250.0);
        EXPECT_GE(u.y, 0.0);
        EXPECT_LE(u.y, 250.0);
        EXPECT_GE(u.energy, 4500.0);
        EXPECT_LE(u.energy, 18000.0);
    }
    EXPECT_EQ(s.seed, 1u);
}

TEST(GenerateUniform, DegenerateInterval) {
    const double eps = 1e-9;
    const auto s = generate_uniform(1, {0, eps, 0, eps, 10, 10}, 5, 5, 42);
    ASSERT_EQ(s.users.size(), 1u);
    EXPECT_EQ(s.users[0].energy, 5.0);
    EXPECT_LE(s.users[0].x, eps);
    EXPECT_LE(s.users[0].y, eps);
}

TEST(GenerateUniform, Deterministic) {
    const AreaBounds b{-20, 80, 10, 30, 100, 200};
    EXPECT_EQ(generate_uniform(50, b, 10, 20, 7), generate_uniform(50, b, 10, 20, 7));
    EXPECT_NE(generate_uniform(50, b, 10, 20, 7), generate_uniform(50, b, 10, 20, 8));
}

TEST(GenerateUniform, ValidationErrors) {
    EXPECT_THROW(generate_uniform(0, square_area(10, 1, 1), 1, 2, 1), ValidationError);
    EXPECT_THROW(generate_uniform(5, square_area(10, 1, 1), 3, 2, 1), ValidationError);
    EXPECT_THROW(generate_uniform(5, square_area(10, 1, 1), 0, 2, 1), ValidationError);
    EXPECT_THROW(generate_uniform(5, {10, 0, 0, 10, 1, 1}, 1, 2, 1), ValidationError);
    EXPECT_THROW(generate_uniform(5, square_area(10, 0, 1), 1, 2, 1), ValidationError);
}

TEST(GenerateClustered, DensityContrast) {
    const std::vector<ClusterSpec> specs{{{60, 60}, 20, 150, 4500, 18000}, {{190, 190}, 20, 50, 4500, 18000}};
    const auto s = generate_clustered(specs, square_area(250, 650, 650), 9);
    ASSERT_EQ(s.users.size(), 200u);
    // the line x + y = 250 separates the two centers
    std::size_t lower = 0;
    for (const auto& u : s.users) lower += (u.x + u.y < 250.0);
    EXPECT_GT(lower, 140u);
    EXPECT_LT(lower, 160u);
    EXPECT_EQ(s, generate_clustered(specs, square_area(250, 650, 650), 9));
}

TEST(GenerateClustered, ZeroSpreadStaysAtCenter) {
    const auto s = generate_clustered({{{30, 40}, 0.0, 12, 100, 200}}, square_area(100, 50, 50), 3);
    for (const auto& u : s.users) {
        EXPECT_EQ(u.x, 30.0);
        EXPECT_EQ(u.y, 40.0);
    }
}

TEST(GenerateClustered, Errors) {
    EXPECT_THROW(generate_clustered({}, square_area(100, 50, 50), 1), ValidationError);
    EXPECT_THROW(generate_clustered({{{300, 40}, 1.0, 3, 1, 2}}, square_area(100, 50, 50), 1), ValidationError);
}

TEST(ScenarioFile, RoundTripIsExact) {
    const auto s = generate_uniform(200, square_area(250, 650, 700), 4500, 18000, 123, table_one_rf(3e8));
    const auto path = temp_path("roundtrip.json");
    save(s, path);
    EXPECT_EQ(load(path), s);
    std::filesystem::remove(path);
}

TEST(ScenarioFile, RoundTripWithoutSeed) {
    auto s = generate_uniform(3, square_area(10, 5, 5), 1, 2, 1);
    s.seed.reset();
    EXPECT_EQ(scenario_from_json(to_json(s)), s);
}

TEST(ScenarioFile, NegativeEnergyIsValidationError) {
    auto j = to_json(generate_uniform(3, square_area(10, 5, 5), 1, 2, 1));
    j["users"][1]["energy"] = -4.0;
    EXPECT_THROW(scenario_from_json(j), ValidationError);
}

TEST(ScenarioFile, MissingNoiseNamesField) {
    auto j = to_json(generate_uniform(3, square_area(10, 5, 5), 1, 2, 1));
    j["rf"].erase("noise");
    try {
        scenario_from_json(j);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "rf.noise");
        EXPECT_NE(std::string(e.what()).find("noise"), std::string::npos);
    }
}

TEST(ScenarioFile, MalformedText) {
    EXPECT_THROW(parse_json_text("{\"users\": ["), ParseError);
    EXPECT_THROW(load(temp_path("does_not_exist.json")), ParseError);
    auto j = to_json(generate_uniform(3, square_area(10, 5, 5), 1, 2, 1));
    j["users"][0]["x"] = "east";
    EXPECT_THROW(scenario_from_json(j), ParseError);
}

TEST(ScenarioFile, UserOutsideAreaRejected) {
    auto j = to_json(generate_uniform(3, square_area(10, 5, 5), 1, 2, 1));
    j["users"][0]["x"] = 11.0;
    EXPECT_THROW(scenario_from_json(j), ValidationError);
}
