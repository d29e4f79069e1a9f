#include <doctest.h>

#include "helpers.hpp"
#include "zebrasim/calibration.hpp"

using namespace zebrasim;

namespace {

ScenarioConfig calib_config() {
    ScenarioConfig cfg = test::reference_config();
    cfg.duration = 10.0;
    return cfg;
}

CalibrationOptions fast_options() {
    CalibrationOptions opts;
    opts.replications = 3;
    opts.run_budget = 60;
    return opts;
}

}  // namespace

TEST_SUITE("calibration") {

TEST_CASE("rate measurement pools episodes across replications") {
    ScenarioConfig cfg = calib_config();
    cfg.p_deliberate.fallback = 1.0;
    const RateMeasurement m = measure_noncompliance(cfg, fast_options());
    CHECK(m.episodes > 50);
    CHECK(m.overall == doctest::Approx(1.0));  // every decision refuses at p = 1
    CHECK(m.forced > 0.0);
    CHECK(m.forced < 1.0);
}

TEST_CASE("target below the forced floor is infeasible and reports the floor") {
    const ScenarioConfig cfg = calib_config();
    try {
        calibrate_noncompliance(0.0, cfg, fast_options());
        FAIL("expected InfeasibleTargetError");
    } catch (const InfeasibleTargetError& e) {
        CHECK(e.floor_rate > 0.0);
        CHECK(std::string(e.what()).find("floor") != std::string::npos);
    }
}

TEST_CASE("target at the p=1 rate returns p of about one") {
    const ScenarioConfig cfg = calib_config();
    const CalibrationResult res = calibrate_noncompliance(1.0, cfg, fast_options());
    CHECK(res.p == doctest::Approx(1.0));
    CHECK(res.measured_rate == doctest::Approx(1.0));
}

TEST_CASE("bisection lands near an interior target") {
    const ScenarioConfig cfg = calib_config();
    const CalibrationResult res = calibrate_noncompliance(0.5, cfg, fast_options());
    CHECK(res.p > 0.0);
    CHECK(res.p < 1.0);
    CHECK(res.measured_rate == doctest::Approx(0.5).epsilon(0.12));
    CHECK(res.floor_rate < 0.5);
    CHECK(res.runs_used <= fast_options().run_budget);
}

TEST_CASE("per-side calibration steers both rates") {
    const ScenarioConfig cfg = calib_config();
    CalibrationOptions opts = fast_options();
    opts.run_budget = 80;
    const SideCalibrationResult res =
        calibrate_noncompliance_by_side(0.55, 0.40, cfg, opts);
    CHECK(res.p_near > 0.0);
    CHECK(res.p_far > 0.0);
    CHECK(res.measured_near == doctest::Approx(0.55).epsilon(0.25));
    CHECK(res.measured_far == doctest::Approx(0.40).epsilon(0.25));
}

TEST_CASE("out-of-range targets are rejected") {
    const ScenarioConfig cfg = calib_config();
    CHECK_THROWS_AS(calibrate_noncompliance(1.5, cfg, fast_options()), ConfigError);
    CHECK_THROWS_AS(calibrate_noncompliance(-0.1, cfg, fast_options()), ConfigError);
}

}  // TEST_SUITE
