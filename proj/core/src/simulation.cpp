#include "zebrasim/simulation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "zebrasim/metrics.hpp"

namespace zebrasim {

namespace {

// Walkable cells: both sidewalks plus the zebra; goal is the far sidewalk.
FloorField build_field(const Geometry& geom, Side entry) {
    GridMask mask(geom.rows_total, geom.cols);
    for (int r = 0; r < geom.rows_total; ++r)
        for (int c = 0; c < geom.cols; ++c) mask.set(r, c, true);

    std::vector<GridCell> goals;
    for (int r = 0; r < geom.rows_total; ++r) {
        if (!geom.is_goal_row(entry, r)) continue;
        for (int c = 0; c < geom.cols; ++c) goals.push_back({r, c});
    }
    return compute_floor_field(mask, goals);
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& cfg)
    : cfg_(cfg),
      geom_(cfg),
      field_a_(build_field(geom_, Side::A)),
      field_b_(build_field(geom_, Side::B)),
      world_(cfg, geom_) {
    const int n_lanes = static_cast<int>(geom_.lanes.size());
    lane_arrival_mean_ = cfg_.veh_arrival_rate / n_lanes * cfg_.time_step / 60.0;
    ped_arrival_mean_[0] = cfg_.ped_rate(Side::A) * cfg_.time_step / 60.0;
    ped_arrival_mean_[1] = cfg_.ped_rate(Side::B) * cfg_.time_step / 60.0;
}

WorldState init_world(const ScenarioConfig& cfg) {
    return Simulation(cfg).world();
}

void Simulation::run() {
    run_ticks(cfg_.total_ticks());
    finalize();
}

void Simulation::run_ticks(long long ticks) {
    for (long long i = 0; i < ticks; ++i) step();
}

void Simulation::step() {
    spawn_arrivals();
    detect_episodes();
    make_decisions_and_resumes();
    ped_update(world_, cfg_, geom_, field_a_, field_b_);
    update_vehicles();
    maintain_episodes();
    ++world_.tick;
}

// --- phase 1: arrivals -------------------------------------------------------

void Simulation::spawn_vehicle(int lane_index) {
    const SpeedSpec& spec = cfg_.desired_speed_veh;
    double desired = spec.spread > 0.0
                         ? world_.rng_veh_arrivals.normal(spec.mean, spec.spread)
                         : spec.mean;
    const double lo = std::max(0.1 * spec.mean, spec.mean - 3.0 * spec.spread);
    desired = std::clamp(desired, lo, spec.mean + 3.0 * spec.spread);

    CarAgent car;
    car.id = world_.next_car_id++;
    car.lane = lane_index;
    car.position = 0.0;
    car.desired_speed = desired;
    car.spawn_time = world_.sim_time();

    auto& lane_cars = world_.cars[lane_index];
    if (lane_cars.empty()) {
        car.speed = desired;
    } else {
        const CarAgent& back = lane_cars.back();
        const double gap = back.rear() - kMinGapToLeader;
        car.speed = std::min(desired, std::sqrt(2.0 * cfg_.decel_max * std::max(gap, 0.0)));
    }
    lane_cars.push_back(car);
    ++world_.counters.spawned_veh;
}

bool Simulation::try_spawn_pedestrian(Side side) {
    // free spawn cells, deterministic row-major order
    std::vector<int> free_cells;
    for (int r = 0; r < geom_.rows_total; ++r) {
        if (!geom_.is_spawn_row(side, r)) continue;
        for (int c = 0; c < geom_.cols; ++c)
            if (world_.ped_at(r, c) < 0) free_cells.push_back(geom_.cell_index(r, c));
    }
    if (free_cells.empty()) return false;

    const int cell = free_cells[world_.rng_ped_arrivals.below(free_cells.size())];
    PedestrianAgent ped;
    ped.id = world_.next_ped_id++;
    ped.row = cell / geom_.cols;
    ped.col = cell % geom_.cols;
    ped.phase = PedPhase::Approaching;
    ped.entry_side = side;
    ped.desired_speed = cfg_.desired_speed_ped;
    ped.spawn_time = world_.sim_time();
    world_.peds.push_back(ped);
    world_.place_ped(ped.row, ped.col, ped.id);
    ++world_.counters.spawned_ped;
    return true;
}

void Simulation::spawn_arrivals() {
    for (std::size_t li = 0; li < geom_.lanes.size(); ++li) {
        world_.veh_queue[li] += world_.rng_veh_arrivals.poisson(lane_arrival_mean_);
        world_.counters.queued_veh_peak =
            std::max(world_.counters.queued_veh_peak, world_.veh_queue[li]);
        if (world_.veh_queue[li] <= 0) continue;
        // entry blocked while the last car is still close to the origin
        const auto& lane_cars = world_.cars[li];
        if (lane_cars.empty() || lane_cars.back().rear() > 2.0) {
            spawn_vehicle(static_cast<int>(li));
            --world_.veh_queue[li];
        }
    }
    for (int s = 0; s < 2; ++s) {
        world_.ped_queue[s] += world_.rng_ped_arrivals.poisson(ped_arrival_mean_[s]);
        while (world_.ped_queue[s] > 0 && try_spawn_pedestrian(static_cast<Side>(s)))
            --world_.ped_queue[s];
    }
}

// --- phase 2: episode detection ----------------------------------------------

void Simulation::detect_episodes() {
    for (std::size_t li = 0; li < geom_.lanes.size(); ++li) {
        const LaneGeometry& lane = geom_.lanes[li];
        for (CarAgent& car : world_.cars[li]) {
            if (car.position >= lane.zebra_entry_s) continue;  // not upstream anymore
            if (lane.stop_line_s - car.position > kPerceptionRange) continue;
            const std::vector<int> relevant = detect_relevant_pedestrians(car, world_, geom_);
            if (!relevant.empty()) open_or_join_episode(car, relevant, world_);
        }
    }
}

// --- phase 3: decisions and resume checks --------------------------------------

void Simulation::make_decisions_and_resumes() {
    for (std::size_t li = 0; li < geom_.lanes.size(); ++li) {
        for (CarAgent& car : world_.cars[li]) {
            if (car.open_episode < 0) continue;
            CrossingEpisode* ep = world_.find_open_episode(car.open_episode);
            if (ep && !ep->decided())
                decide_compliance(car, *ep, world_, geom_, cfg_, world_.rng_decisions);
        }
    }
    for (std::size_t li = 0; li < geom_.lanes.size(); ++li) {
        for (CarAgent& car : world_.cars[li]) {
            if (car.state != CarState::Yielding && car.state != CarState::Stopped) continue;
            if (resume_check(car, world_, geom_, cfg_.resume_scope) == ResumeAction::Resume) {
                car.state = CarState::Cruising;
                car.decision.reset();
            }
        }
    }
}

// --- phase 5: vehicle kinematics -----------------------------------------------

void Simulation::update_vehicles() {
    const double now = world_.sim_time();
    for (std::size_t li = 0; li < geom_.lanes.size(); ++li) {
        const LaneGeometry& lane = geom_.lanes[li];
        auto& lane_cars = world_.cars[li];

        for (std::size_t i = 0; i < lane_cars.size(); ++i) {
            CarAgent& car = lane_cars[i];
            const CarAgent* leader = i > 0 ? &lane_cars[i - 1] : nullptr;

            if (car.state != CarState::Stopped) {
                std::optional<double> stop_target;
                if (car.state == CarState::Yielding) stop_target = lane.stop_line_s;
                const KinematicUpdate upd =
                    car_following_update(car, leader, stop_target, cfg_.time_step,
                                         cfg_.decel_max);
                car.speed = upd.speed;
                car.position = upd.position;
                if (car.state == CarState::Yielding && car.speed == 0.0 &&
                    lane.stop_line_s - car.position < 0.15)
                    car.state = CarState::Stopped;
            }

            if (!car.counted_passing && car.position >= lane.zebra_exit_s) {
                car.counted_passing = true;
                world_.events.veh_pass_times.push_back(now);
            }
        }

        while (!lane_cars.empty() && lane_cars.front().rear() >= geom_.road_length) {
            CarAgent& gone = lane_cars.front();
            if (gone.open_episode >= 0) {
                if (CrossingEpisode* ep = world_.find_open_episode(gone.open_episode))
                    close_episode(*ep, now);
            }
            ++world_.counters.despawned_veh;
            lane_cars.erase(lane_cars.begin());
        }
    }
}

// --- phase 6: episode upkeep ----------------------------------------------------

void Simulation::close_episode(CrossingEpisode& ep, double now) {
    assert(ep.decided());
    ep.end_time = now;
    if (CarAgent* car = world_.find_car(ep.car_id)) {
        car->open_episode = -1;
        if (car->state == CarState::Committed) {
            car->state = CarState::Cruising;
            car->decision.reset();
        }
    }
    world_.episode_log.push_back(ep);
}

void Simulation::maintain_episodes() {
    const double now = world_.sim_time();
    for (std::size_t i = 0; i < world_.open_episodes.size();) {
        CrossingEpisode& ep = world_.open_episodes[i];
        CarAgent* car = world_.find_car(ep.car_id);

        if (car) {
            const LaneGeometry& lane = geom_.lanes[car->lane];
            // surrogate-safety sampling; yielding and stopped cars are
            // converging on the stop line, not on the pedestrian
            if (car->state != CarState::Yielding && car->state != CarState::Stopped) {
                for (int pid : ep.ped_ids) {
                    const PedestrianAgent* ped = world_.find_ped(pid);
                    if (!ped) continue;
                    if (const auto ttc = compute_ttc(*car, *ped, geom_))
                        ep.min_ttc = std::min(ep.min_ttc, *ttc);
                }
            }

            bool all_gone = true;
            for (int pid : ep.ped_ids)
                if (world_.find_ped(pid)) {
                    all_gone = false;
                    break;
                }
            if (car->position >= lane.zebra_exit_s || all_gone) {
                close_episode(ep, now);
                world_.open_episodes.erase(world_.open_episodes.begin() + i);
                continue;
            }
        } else {
            // car despawned with the episode still open
            close_episode(ep, now);
            world_.open_episodes.erase(world_.open_episodes.begin() + i);
            continue;
        }
        ++i;
    }
}

void Simulation::finalize() {
    const double now = world_.sim_time();
    for (CrossingEpisode& ep : world_.open_episodes) close_episode(ep, now);
    world_.open_episodes.clear();
}

}  // namespace zebrasim
