#include <doctest.h>

#include <json.hpp>

#include "zebrasim/config.hpp"
#include "zebrasim/geometry.hpp"

using namespace zebrasim;

TEST_SUITE("config") {

TEST_CASE("defaults validate") {
    ScenarioConfig cfg;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("crosswalk outside the road is rejected, naming the invariant") {
    ScenarioConfig cfg;
    cfg.road_length = 100.0;
    cfg.crosswalk_position = 200.0;
    CHECK_THROWS_WITH_AS(cfg.validate(),
                         doctest::Contains("crosswalk_position + crosswalk_width"),
                         ConfigError);
}

TEST_CASE("basic invariants rejected with messages") {
    ScenarioConfig cfg;
    cfg.time_step = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = ScenarioConfig{};
    cfg.veh_arrival_rate = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = ScenarioConfig{};
    cfg.p_deliberate.fallback = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = ScenarioConfig{};
    cfg.cell_size = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("unknown scenario keys are an error") {
    CHECK_THROWS_WITH_AS(ScenarioConfig::from_json_text(R"({"lane_cout": 2})"),
                         doctest::Contains("unknown key"), ConfigError);
}

TEST_CASE("scenario json round trip") {
    const char* text = R"({
        "lane_count": 2,
        "lane_width": 3.25,
        "road_length": 250,
        "crosswalk_position": 120,
        "crosswalk_width": 4.0,
        "duration": 10,
        "veh_arrival_rate": 12.5,
        "ped_arrival_rate": {"side_a": 3.0, "side_b": 5.0},
        "desired_speed_veh": {"mean": 12.0, "spread": 0.5},
        "p_deliberate": {"default": 0.2, "near": 0.5, "far": {"on_zebra": 0.1}},
        "seed": 99
    })";
    const ScenarioConfig cfg = ScenarioConfig::from_json_text(text);
    CHECK(cfg.lane_count == 2);
    CHECK(cfg.ped_rate(Side::A) == 3.0);
    CHECK(cfg.ped_rate(Side::B) == 5.0);
    CHECK(cfg.ped_arrival_rate == 8.0);
    CHECK(cfg.desired_speed_veh.mean == 12.0);
    CHECK(cfg.p_deliberate.lookup(RelativeSide::Near, PedCategory::WaitingAtCurb) == 0.5);
    CHECK(cfg.p_deliberate.lookup(RelativeSide::Far, PedCategory::OnZebra) == 0.1);
    CHECK(cfg.p_deliberate.lookup(RelativeSide::Far, PedCategory::WaitingAtCurb) == 0.2);
    CHECK(cfg.seed == 99);
}

TEST_CASE("p_deliberate entries outside [0,1] are rejected") {
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"p_deliberate": {"near": 1.2}})"),
                    ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"p_deliberate": -0.1})"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"p_deliberate": {"sideways": 0.1}})"),
                    ConfigError);
}

TEST_CASE("curb band rounds up to whole cells and is echoed") {
    ScenarioConfig cfg;  // cell 0.4, band 1.5
    const auto echo = nlohmann::json::parse(cfg.echo_json());
    CHECK(echo["derived"]["curb_band_cells"] == 4);
    CHECK(echo["derived"]["curb_band_depth_rounded"].get<double>() ==
          doctest::Approx(1.6));
}

TEST_CASE("los_bands must have five increasing entries") {
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"los_bands": [1,2,3]})"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"los_bands": [5,4,20,30,45]})"),
                    ConfigError);
    const auto cfg = ScenarioConfig::from_json_text(R"({"los_bands": [2,4,8,16,32]})");
    CHECK(cfg.los_bands[4] == 32.0);
}

TEST_CASE("missing scenario file") {
    CHECK_THROWS_AS(ScenarioConfig::load_file("/nonexistent/nope.json"), IoError);
}

TEST_CASE("resume scope parses and echoes") {
    const auto cfg = ScenarioConfig::from_json_text(R"({"resume_scope": "full_zebra"})");
    CHECK(cfg.resume_scope == ResumeScope::FullZebra);
    CHECK(ScenarioConfig{}.resume_scope == ResumeScope::OwnLane);
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"resume_scope": "sometimes"})"),
                    ConfigError);
    const auto echo = nlohmann::json::parse(cfg.echo_json());
    CHECK(echo["resume_scope"] == "full_zebra");
}

TEST_CASE("observed reference targets are internally consistent") {
    ObservedTargets t;
    CHECK(t.near_compliant + t.near_noncompliant + t.far_compliant + t.far_noncompliant ==
          t.total_episodes);
    CHECK(t.overall_noncompliant_fraction() == doctest::Approx(0.4815).epsilon(1e-3));
    CHECK(t.near_noncompliant_pct() == doctest::Approx(53.86).epsilon(1e-3));
    CHECK(t.far_noncompliant_pct() == doctest::Approx(42.21).epsilon(1e-3));
}

}  // TEST_SUITE
