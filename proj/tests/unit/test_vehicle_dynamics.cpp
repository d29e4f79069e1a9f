#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "zebrasim/rng.hpp"
#include "zebrasim/vehicle_dynamics.hpp"

using namespace zebrasim;
using test::add_car;
using test::add_ped;

TEST_SUITE("vehicle_dynamics") {

TEST_CASE("braking distance closed form") {
    CHECK(braking_distance(0.0, 4.0) == 0.0);
    CHECK(braking_distance(10.0, 4.0) == doctest::Approx(12.5));
    CHECK(braking_distance(14.0, 3.5) == doctest::Approx(28.0));
    CHECK_THROWS_AS(braking_distance(10.0, 0.0), GeometryError);
    CHECK_THROWS_AS(braking_distance(10.0, -1.0), GeometryError);
}

TEST_CASE("cruising holds desired speed") {
    CarAgent car;
    car.position = 50.0;
    car.speed = 10.0;
    car.desired_speed = 10.0;
    const auto upd = car_following_update(car, nullptr, std::nullopt, 0.3, 4.0);
    CHECK(upd.speed == doctest::Approx(10.0));
    CHECK(upd.position == doctest::Approx(53.0));
}

TEST_CASE("stop target on the braking envelope holds the envelope speed") {
    CarAgent car;
    car.position = 0.0;
    car.speed = 10.0;
    car.desired_speed = 15.0;
    const auto upd = car_following_update(car, nullptr, 12.5, 0.3, 4.0);
    CHECK(upd.speed == doctest::Approx(10.0));  // v_safe = sqrt(2*4*12.5) = 10
}

TEST_CASE("zero gap stops the car") {
    CarAgent car;
    car.position = 20.0;
    car.speed = 8.0;
    car.desired_speed = 12.0;
    const auto upd = car_following_update(car, nullptr, 20.0, 0.3, 4.0);
    CHECK(upd.speed == 0.0);
    CHECK(upd.position == doctest::Approx(20.0));
}

TEST_CASE("braking envelope: never crosses the stop target, always stops") {
    RngStream rng(314);
    for (int trial = 0; trial < 200; ++trial) {
        CarAgent car;
        car.speed = rng.uniform(0.0, 20.0);
        car.desired_speed = 20.0;
        car.position = 0.0;
        const double decel = rng.uniform(1.5, 6.0);
        const double target = braking_distance(car.speed, decel) + rng.uniform(0.0, 40.0);
        for (int step = 0; step < 600; ++step) {
            const auto upd = car_following_update(car, nullptr, target, 0.3, decel);
            REQUIRE(upd.position <= target + 1e-9);
            REQUIRE(upd.position >= car.position - 1e-12);  // never reverses
            car.speed = upd.speed;
            car.position = upd.position;
            if (car.speed == 0.0) break;
        }
        CHECK(car.speed == 0.0);
        CHECK(car.position <= target + 1e-9);
    }
}

TEST_CASE("follower never reaches the leader's rear") {
    RngStream rng(2718);
    for (int trial = 0; trial < 100; ++trial) {
        CarAgent leader;
        leader.position = rng.uniform(15.0, 40.0);
        leader.speed = rng.uniform(0.0, 15.0);
        leader.desired_speed = 15.0;
        CarAgent follower;
        follower.position = leader.rear() - rng.uniform(1.0, 20.0);
        follower.speed = rng.uniform(0.0, 18.0);
        follower.desired_speed = 18.0;
        const double decel = 3.5;

        for (int step = 0; step < 400; ++step) {
            // leader brakes erratically toward random targets, then the
            // follower reads the leader's already-updated state
            std::optional<double> leader_stop;
            if (rng.uniform() < 0.2) leader_stop = leader.position + rng.uniform(0.0, 8.0);
            const auto lu = car_following_update(leader, nullptr, leader_stop, 0.3, decel);
            leader.speed = lu.speed;
            leader.position = lu.position;

            const auto fu = car_following_update(follower, &leader, std::nullopt, 0.3, decel);
            follower.speed = fu.speed;
            follower.position = fu.position;

            REQUIRE(follower.position < leader.rear() - 1e-9);
            REQUIRE(follower.speed >= 0.0);
            REQUIRE(follower.speed <= follower.desired_speed + 1e-12);
        }
    }
}

TEST_CASE("resume: holds while an episode pedestrian still blocks its lane") {
    const ScenarioConfig cfg = test::small_config();
    Simulation sim(cfg);
    const Geometry& geom = sim.geometry();
    WorldState& world = sim.world();
    const LaneGeometry& lane0 = geom.lanes[0];  // eastbound, near side A

    CarAgent& car = add_car(world, 0, lane0.stop_line_s, 0.0, 10.0, CarState::Stopped);

    SUBCASE("pedestrian on the car's lane rows -> Hold") {
        add_ped(world, lane0.row_begin, 2, PedPhase::Crossing, Side::A);
        CHECK(resume_check(car, world, geom) == ResumeAction::Hold);
    }
    SUBCASE("far-half pedestrian that still has the car's lane ahead -> Hold") {
        // side B entry crossing toward A: lane 0 not yet traversed
        add_ped(world, geom.lanes[1].row_begin, 2, PedPhase::Crossing, Side::B);
        CHECK(resume_check(car, world, geom) == ResumeAction::Hold);
    }
    SUBCASE("pedestrian cleared the car's lane, still on the far half -> Resume") {
        // strictly past lane 0's rows (the boundary cell straddles both lanes)
        const int row = std::max(geom.lanes[1].row_begin, lane0.row_end);
        REQUIRE(geom.is_roadway_row(row));
        add_ped(world, row, 2, PedPhase::Crossing, Side::A);
        CHECK(resume_check(car, world, geom) == ResumeAction::Resume);
    }
    SUBCASE("pedestrian waiting at the near curb -> Hold") {
        add_ped(world, geom.curb_row(Side::A), 2, PedPhase::WaitingAtCurb, Side::A);
        CHECK(resume_check(car, world, geom) == ResumeAction::Hold);
    }
    SUBCASE("pedestrian waiting at the far curb -> Resume") {
        add_ped(world, geom.curb_row(Side::B), 2, PedPhase::WaitingAtCurb, Side::B);
        CHECK(resume_check(car, world, geom) == ResumeAction::Resume);
    }
    SUBCASE("pedestrian approaching inside the near band -> Hold") {
        add_ped(world, geom.sidewalk_rows - geom.band_rows, 2, PedPhase::Approaching, Side::A);
        CHECK(resume_check(car, world, geom) == ResumeAction::Hold);
    }
    SUBCASE("pedestrian approaching outside the band -> Resume") {
        add_ped(world, 0, 2, PedPhase::Approaching, Side::A);
        CHECK(resume_check(car, world, geom) == ResumeAction::Resume);
    }
    SUBCASE("empty world -> Resume") {
        CHECK(resume_check(car, world, geom) == ResumeAction::Resume);
    }
    SUBCASE("full-zebra scope holds for any crossing pedestrian") {
        const int row = std::max(geom.lanes[1].row_begin, lane0.row_end);
        add_ped(world, row, 2, PedPhase::Crossing, Side::A);  // past the car's lane
        CHECK(resume_check(car, world, geom, ResumeScope::OwnLane) == ResumeAction::Resume);
        CHECK(resume_check(car, world, geom, ResumeScope::FullZebra) == ResumeAction::Hold);
    }
}

}  // TEST_SUITE
