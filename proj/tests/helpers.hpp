#pragma once

// Shared scenario builders for the test suites.

#include <algorithm>

#include "zebrasim/simulation.hpp"

namespace zebrasim::test {

/// Small, fast scenario: short road, 5 minutes, deterministic speeds.
inline ScenarioConfig small_config() {
    ScenarioConfig cfg;
    cfg.road_length = 120.0;
    cfg.crosswalk_position = 60.0;
    cfg.duration = 5.0;
    cfg.desired_speed_veh = {10.0, 0.0};
    cfg.seed = 7;
    return cfg;
}

/// Reference-demand scenario (the shipped defaults).
inline ScenarioConfig reference_config(std::uint64_t seed = 1) {
    ScenarioConfig cfg;
    cfg.seed = seed;
    return cfg;
}

/// Insert a car keeping the lane ordered front-most first.
inline CarAgent& add_car(WorldState& world, int lane, double position, double speed,
                         double desired_speed, CarState state = CarState::Cruising) {
    CarAgent car;
    car.id = world.next_car_id++;
    car.lane = lane;
    car.position = position;
    car.speed = speed;
    car.desired_speed = desired_speed;
    car.state = state;
    auto& lane_cars = world.cars[lane];
    auto it = std::upper_bound(lane_cars.begin(), lane_cars.end(), position,
                               [](double pos, const CarAgent& c) { return pos > c.position; });
    return *lane_cars.insert(it, car);
}

/// Place a pedestrian directly on the grid.
inline PedestrianAgent& add_ped(WorldState& world, int row, int col, PedPhase phase,
                                Side entry, double speed = 1.33) {
    PedestrianAgent ped;
    ped.id = world.next_ped_id++;
    ped.row = row;
    ped.col = col;
    ped.phase = phase;
    ped.entry_side = entry;
    ped.desired_speed = speed;
    world.peds.push_back(ped);
    world.place_ped(row, col, ped.id);
    return world.peds.back();
}

}  // namespace zebrasim::test
