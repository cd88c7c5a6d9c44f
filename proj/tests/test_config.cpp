#include <doctest.h>

#include <stdexcept>

#include "hfc/config.hpp"

using namespace hfc;

TEST_CASE("sample scenario files load") {
    auto sc = load_scenario(HFC_DATA_DIR "/scenarios/taps.json");
    CHECK(sc.name == "Pole-1 FC taps");
    CHECK(sc.plant == PlantParams::pole(1));
    REQUIRE(sc.events.size() == 2);
    CHECK(sc.events[1] == DisturbanceEvent{35.0, Tap{0.35}});

    auto robust = load_scenario(HFC_DATA_DIR "/scenarios/pole7_sfc_nominal1.json");
    CHECK(robust.controller.kind == ControllerKind::sfc);
    CHECK(robust.controller.nominal == PlantParams::pole(1));
    CHECK(robust.plant == PlantParams::pole(7));

    auto hw = load_scenario(HFC_DATA_DIR "/scenarios/hardware_20ms.json");
    CHECK(hw.hold_steps() == 4);
    auto tilt = load_scenario(HFC_DATA_DIR "/scenarios/tilt.json");
    CHECK(std::get<SetTilt>(tilt.events[0].kind).angle == doctest::Approx(0.122173));
}

TEST_CASE("explicit fields override presets") {
    auto sc = parse_scenario(R"({
        "plant": {"preset": "pole-2", "mu_c": 0, "f_max": 20},
        "scenario": {"dt": 0.001, "duration": 2, "integrator": "rk4",
                     "initial": {"theta_deg": 3, "x_m": 0.1}},
        "controller": {"type": "sfc", "nominal": {"preset": "pole-1", "m": 0.2}, "poles": [[-1, 1], [-1, -1], -2, -3]},
        "metrics": {"theta_band_deg": 0.5}
    })");
    CHECK(sc.plant.m == 0.05);
    CHECK(sc.plant.mu_c == 0.0);
    CHECK(sc.plant.f_max == 20.0);
    CHECK(sc.dt == 0.001);
    CHECK(sc.control_period == 0.001);
    CHECK(sc.integrator == Integrator::rk4);
    CHECK(sc.initial.theta == doctest::Approx(0.0523599));
    CHECK(sc.controller.nominal->m == 0.2);
    CHECK(sc.controller.poles[0] == std::complex<double>(-1, 1));
    CHECK(sc.metrics.theta_band_deg == 0.5);
    CHECK(sc.metrics.x_band_m == 0.02);
    CHECK(sc.name == "SFC");
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(parse_scenario("{"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"plant": {"preset": "pole-9"}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"plant": {"mass": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"plant": {"m": -1}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"scenario": {"dt": "fast"}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"scenario": {"control_period": 0.012}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"scenario": {"events": [{"t": 1}]}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"controller": {"type": "pid"}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"controller": {"type": "fc", "poles": [-1]}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"controller": {"type": "fc", "rules": "missing.frl"}})"), ConfigError);
    CHECK_THROWS_WITH(parse_scenario(R"({"extra": 1})"), "unknown key 'extra' in scenario file");
}

TEST_CASE("rule files referenced by scenarios") {
    auto sc = parse_scenario(R"({"controller": {"type": "fc", "rules": "pole.frl"}})", HFC_DATA_DIR);
    REQUIRE(sc.controller.kb.has_value());
    CHECK(*sc.controller.kb == builtin_pole_kb());
    try {
        parse_scenario(R"({"controller": {"type": "fc", "rules": "bad_rules.frl"}})", HFC_DATA_DIR);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("unknown label BOGUS on theta") != std::string::npos);
    }
}

TEST_CASE("goal specs") {
    auto spec = parse_goal_spec(R"({"goals": [
        {"name": "balance", "inputs": ["theta", "theta_dot"],
         "achievement": [{"variable": "theta", "base": "ZE", "very": "VS", "mode": {"narrowed": 0.05}},
                         {"variable": "theta_dot", "base": "ZE", "very": "VS", "mode": "concentration"}]},
        {"name": "position", "inputs": ["x", "x_dot"]}]})");
    REQUIRE(spec.has_value());
    REQUIRE(spec->goals.size() == 2);
    CHECK(spec->goals[0].achievement[0].mode == VeryMode{Narrowed{0.05}});
    CHECK(spec->goals[0].achievement[1].mode == VeryMode{Concentration{}});
    CHECK_FALSE(parse_goal_spec(R"({"plant": {}})").has_value());
    CHECK(parse_goal_spec(R"([{"name": "only"}])")->goals.size() == 1);
    CHECK_THROWS_AS(parse_goal_spec(R"([{"name": "a"}, {"name": "a"}])"), ConfigError);
    CHECK_THROWS_AS(parse_goal_spec(R"([{"name": "a", "achievement": [{"variable": "x", "base": "ZE", "mode": {"narrowed": 2}}]}])"),
                    ConfigError);
}
