#include <hfkr/experiments.hpp>

#include <gtest/gtest.h>

namespace {

using hfkr::command;

TEST(ConfigText, ParsesKeyValueLines) {
    const auto kv = hfkr::parse_config_text("# walk settings\nseed = 42\n\n  n=500   # steps\nalg = shake256:32, blake3\n");
    ASSERT_EQ(kv.size(), 3u);
    EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"seed", "42"}));
    EXPECT_EQ(kv[1], (std::pair<std::string, std::string>{"n", "500"}));
    EXPECT_EQ(kv[2].second, "shake256:32, blake3");
    EXPECT_THROW(hfkr::parse_config_text("seed 42\n"), hfkr::config_error);
}

TEST(ApplySetting, TypedValues) {
    auto c = hfkr::default_config(command::avalanche);
    EXPECT_EQ(c.walk.n, 2000);
    EXPECT_EQ(c.algs.size(), 4u);
    hfkr::apply_setting(c, "seed", "18446744073709551615");
    hfkr::apply_setting(c, "rho_max", "0.9");
    hfkr::apply_setting(c, "x0_y", "-12");
    hfkr::apply_setting(c, "map_mode", "fixed");
    hfkr::apply_setting(c, "positions", "10, 20,30");
    hfkr::apply_setting(c, "perturb_mode", "reevolve");
    hfkr::apply_setting(c, "format", "csv");
    EXPECT_EQ(c.walk.seed, UINT64_MAX);
    EXPECT_EQ(c.walk.rho_max, 0.9);
    EXPECT_EQ(c.walk.x0.y, -12);
    EXPECT_EQ(c.walk.mode, hfkr::map_mode::fixed_set);
    EXPECT_EQ(*c.positions, (std::vector<std::int64_t>{10, 20, 30}));
    EXPECT_EQ(c.perturb, hfkr::perturbation_mode::re_evolve);
    EXPECT_FALSE(c.emit_json);
    EXPECT_TRUE(c.emit_csv);
    hfkr::apply_setting(c, "positions", "auto");
    EXPECT_FALSE(c.positions.has_value());
}

TEST(ApplySetting, ErrorsNameTheField) {
    auto c = hfkr::default_config(command::walk);
    const std::pair<const char*, const char*> bad[] = {
        {"n", "12x"}, {"rho_min", "half"}, {"map_mode", "sometimes"}, {"format", "xml"}, {"colour", "red"}, {"seed", "-1"}};
    for (const auto& [key, value] : bad) {
        try {
            hfkr::apply_setting(c, key, value);
            ADD_FAILURE() << key << " = " << value << " accepted";
        } catch (const hfkr::config_error& e) {
            EXPECT_EQ(e.field(), key);
        }
    }
}

TEST(Validate, CommandSpecificChecks) {
    auto c = hfkr::default_config(command::keygen);
    c.walk.n = 0;
    EXPECT_THROW(hfkr::validate(c, command::keygen), hfkr::config_error);
    c = hfkr::default_config(command::keygen);
    c.algs = {"sha3-512", "blake3"};
    EXPECT_THROW(hfkr::validate(c, command::keygen), hfkr::config_error);
    c = hfkr::default_config(command::avalanche);
    c.positions = std::vector<std::int64_t>{0};
    EXPECT_THROW(hfkr::validate(c, command::avalanche), hfkr::config_error);
    c = hfkr::default_config(command::fractal);
    c.seeds = 0;
    EXPECT_THROW(hfkr::validate(c, command::fractal), hfkr::config_error);
}

TEST(ResolveAlgs, OutLenAppliesToUnsizedEntries) {
    auto c = hfkr::default_config(command::keygen);
    c.algs = {"shake256", "blake3:64"};
    c.out_len = 48;
    const auto algs = hfkr::resolve_algs(c);
    EXPECT_EQ(algs[0], hfkr::hash_alg::shake256(48));
    EXPECT_EQ(algs[1], hfkr::hash_alg::blake3(64));
}

TEST(Experiments, WalkCsvRoundTrips) {
    auto c = hfkr::default_config(command::walk);
    c.walk.seed = 5;
    const auto out = hfkr::run_walk(c);
    ASSERT_EQ(out.files.size(), 2u);
    EXPECT_EQ(out.files[0].first, "walk.csv");
    const auto points = hfkr::parse_trajectory_csv(out.files[0].second);
    EXPECT_EQ(points.size(), 129u);
    EXPECT_EQ(points, hfkr::generate_walk(c.walk).points);
    const auto report = hfkr::json::parse(out.files[1].second);
    EXPECT_EQ(report["config"]["walk"]["n"], 128);
    for (const auto* key : {"total_path_length", "bbox_width", "bbox_height", "unique_points", "density"})
        EXPECT_TRUE(report["geometry"].contains(key)) << key;
}

TEST(Experiments, FormatSelectsFiles) {
    auto c = hfkr::default_config(command::walk);
    hfkr::apply_setting(c, "format", "json");
    const auto out = hfkr::run_walk(c);
    ASSERT_EQ(out.files.size(), 1u);
    EXPECT_EQ(out.files[0].first, "geometry.json");
}

TEST(Experiments, FractalSyntheticInputs) {
    auto c = hfkr::default_config(command::fractal);
    c.synthetic = hfkr::synthetic_input::square;
    auto j = hfkr::json::parse(hfkr::run_fractal(c).files[0].second);
    EXPECT_NEAR(j["estimate"]["dimension"].get<double>(), 2.0, 0.1);
    c.synthetic = hfkr::synthetic_input::point;
    j = hfkr::json::parse(hfkr::run_fractal(c).files[0].second);
    EXPECT_EQ(j["estimate"]["dimension"].get<double>(), 0.0);
    EXPECT_TRUE(j["estimate"]["degenerate"].get<bool>());
}

TEST(Experiments, FractalOnStationaryWalkIsDegenerate) {
    auto c = hfkr::default_config(command::fractal);
    c.walk.b_min = c.walk.b_max = 0.0;
    c.walk.epsilon = 0.0;
    c.ns = {50};
    c.seeds = 3;
    const auto j = hfkr::json::parse(hfkr::run_fractal(c).files[0].second);
    for (const auto& run : j["results"][0]["runs"]) EXPECT_TRUE(run["estimate"]["degenerate"].get<bool>());
}

TEST(Experiments, AvalancheZeroNudgeAllZero) {
    auto c = hfkr::default_config(command::avalanche);
    c.trials = 1;
    c.positions = std::vector<std::int64_t>{1000};
    c.nudge = {0, 0};
    const auto out = hfkr::run_avalanche(c);
    const auto j = hfkr::json::parse(out.files.back().second);
    for (const auto& r : j["results"]) {
        EXPECT_EQ(r["mean_hamming"], 0.0);
        EXPECT_EQ(r["mean_bitflip_rate"], 0.0);
        EXPECT_EQ(r["mean_delta_entropy"], 0.0);
        EXPECT_TRUE(r["chi_square_table1"].is_null());
    }
}

}  // namespace
