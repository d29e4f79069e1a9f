#pragma once

#include "zebrasim/compliance.hpp"
#include "zebrasim/config.hpp"
#include "zebrasim/floor_field.hpp"
#include "zebrasim/geometry.hpp"
#include "zebrasim/pedestrian_dynamics.hpp"
#include "zebrasim/vehicle_dynamics.hpp"
#include "zebrasim/world.hpp"

namespace zebrasim {

/// The scenario brought to life: geometry tables, floor fields and the
/// world state, advanced one tick at a time.
///
/// Tick phase order (fixed so cross-agent perception is well defined):
///   1. spawn arrivals            4. pedestrian update
///   2. episode detection         5. vehicle update
///   3. compliance decisions      6. episode closure + metric sampling
///      and resume checks
class Simulation {
public:
    explicit Simulation(const ScenarioConfig& cfg);

    void step();
    void run();  // all configured ticks, then close remaining episodes
    void run_ticks(long long ticks);
    /// Close still-open episodes at the current time (end of observation).
    void finalize();

    const ScenarioConfig& config() const { return cfg_; }
    const Geometry& geometry() const { return geom_; }
    const FloorField& field(Side entry) const {
        return entry == Side::A ? field_a_ : field_b_;
    }
    WorldState& world() { return world_; }
    const WorldState& world() const { return world_; }

    void spawn_arrivals();

private:
    void detect_episodes();
    void make_decisions_and_resumes();
    void update_vehicles();
    void maintain_episodes();

    void spawn_vehicle(int lane_index);
    bool try_spawn_pedestrian(Side side);
    void close_episode(CrossingEpisode& ep, double now);

    ScenarioConfig cfg_;
    Geometry geom_;
    FloorField field_a_;  // guides side-A entries (goal: sidewalk B)
    FloorField field_b_;
    WorldState world_;
    double lane_arrival_mean_ = 0.0;
    double ped_arrival_mean_[2] = {0.0, 0.0};
};

/// Fresh world for a validated config: empty grid, no agents, tick 0,
/// substreams seeded from config.seed.
WorldState init_world(const ScenarioConfig& cfg);

}  // namespace zebrasim
