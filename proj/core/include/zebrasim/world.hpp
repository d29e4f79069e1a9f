#pragma once

#include <string>
#include <vector>

#include "zebrasim/agents.hpp"
#include "zebrasim/episode.hpp"
#include "zebrasim/floor_field.hpp"
#include "zebrasim/geometry.hpp"
#include "zebrasim/rng.hpp"

namespace zebrasim {

struct SimCounters {
    long spawned_veh = 0;
    long despawned_veh = 0;
    long spawned_ped = 0;
    long cleared_ped = 0;
    long queued_veh_peak = 0;
    long excluded_minutes = 0;  // filled by analytics
};

/// Append-only event streams consumed by per-minute aggregation.
struct SimEvents {
    std::vector<double> veh_pass_times;      // front crossed the zebra exit
    std::vector<double> ped_crossing_times;  // pedestrian entered Crossing
    std::vector<double> ped_wait_times;      // waiting time of each cleared pedestrian
};

class WorldState {
public:
    WorldState() = default;
    WorldState(const ScenarioConfig& cfg, const Geometry& geom);

    long long tick = 0;
    double dt = 0.3;
    double sim_time() const { return static_cast<double>(tick) * dt; }

    // pedestrian grid occupancy: ped id per cell, -1 empty
    std::vector<int> grid;
    int grid_rows = 0, grid_cols = 0;
    int ped_at(int row, int col) const { return grid[row * grid_cols + col]; }
    void place_ped(int row, int col, int id) { grid[row * grid_cols + col] = id; }
    void clear_cell(int row, int col) { grid[row * grid_cols + col] = -1; }

    // cars per lane, ordered front-most first (descending travel position)
    std::vector<std::vector<CarAgent>> cars;
    // pedestrians in spawn order
    std::vector<PedestrianAgent> peds;

    std::vector<CrossingEpisode> open_episodes;
    std::vector<CrossingEpisode> episode_log;

    SimEvents events;
    SimCounters counters;

    RngStream rng_veh_arrivals;
    RngStream rng_ped_arrivals;
    RngStream rng_decisions;
    RngStream rng_ped_behavior;

    std::vector<long> veh_queue;  // blocked arrivals per lane
    long ped_queue[2] = {0, 0};   // blocked arrivals per side

    int next_car_id = 0;
    int next_ped_id = 0;
    int next_episode_id = 0;

    PedestrianAgent* find_ped(int id);
    const PedestrianAgent* find_ped(int id) const;
    CarAgent* find_car(int id);
    CrossingEpisode* find_open_episode(int episode_id);

    long live_car_count() const;

    /// Structural invariant check (exclusion, lane ordering, speed bounds,
    /// state consistency); returns human-readable violations, empty when
    /// consistent. Used by tests after every step.
    std::vector<std::string> validate(const Geometry& geom) const;

    /// Pedestrian-vehicle overlaps right now. An emergent safety measure:
    /// zero on sane crossing geometries, checked separately from validate().
    int overlap_count(const Geometry& geom) const;
};

}  // namespace zebrasim
