#include "zebrasim/world.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace zebrasim {

const char* to_string(CarState s) {
    switch (s) {
        case CarState::Cruising: return "cruising";
        case CarState::Yielding: return "yielding";
        case CarState::Stopped: return "stopped";
        case CarState::Committed: return "committed";
    }
    return "?";
}

const char* to_string(PedPhase p) {
    switch (p) {
        case PedPhase::Approaching: return "approaching";
        case PedPhase::WaitingAtCurb: return "waiting_at_curb";
        case PedPhase::Crossing: return "crossing";
        case PedPhase::Cleared: return "cleared";
    }
    return "?";
}

const char* to_string(DecisionKind k) {
    switch (k) {
        case DecisionKind::Compliant: return "compliant";
        case DecisionKind::NonCompliantForced: return "noncompliant_forced";
        case DecisionKind::NonCompliantDeliberate: return "noncompliant_deliberate";
    }
    return "?";
}

WorldState::WorldState(const ScenarioConfig& cfg, const Geometry& geom) {
    dt = cfg.time_step;
    grid_rows = geom.rows_total;
    grid_cols = geom.cols;
    grid.assign(grid_rows * grid_cols, -1);
    cars.resize(geom.lanes.size());
    veh_queue.assign(geom.lanes.size(), 0);
    rng_veh_arrivals = make_stream(cfg.seed, RngPurpose::VehicleArrivals);
    rng_ped_arrivals = make_stream(cfg.seed, RngPurpose::PedestrianArrivals);
    rng_decisions = make_stream(cfg.seed, RngPurpose::ComplianceDraws);
    rng_ped_behavior = make_stream(cfg.seed, RngPurpose::PedestrianBehavior);
}

PedestrianAgent* WorldState::find_ped(int id) {
    for (auto& p : peds)
        if (p.id == id) return &p;
    return nullptr;
}

const PedestrianAgent* WorldState::find_ped(int id) const {
    for (const auto& p : peds)
        if (p.id == id) return &p;
    return nullptr;
}

CarAgent* WorldState::find_car(int id) {
    for (auto& lane : cars)
        for (auto& c : lane)
            if (c.id == id) return &c;
    return nullptr;
}

CrossingEpisode* WorldState::find_open_episode(int episode_id) {
    for (auto& e : open_episodes)
        if (e.id == episode_id) return &e;
    return nullptr;
}

long WorldState::live_car_count() const {
    long n = 0;
    for (const auto& lane : cars) n += static_cast<long>(lane.size());
    return n;
}

std::vector<std::string> WorldState::validate(const Geometry& geom) const {
    std::vector<std::string> bad;
    auto complain = [&](const std::string& msg) { bad.push_back(msg); };

    // grid <-> pedestrian agreement and the exclusion principle
    std::set<int> ids_on_grid;
    for (int r = 0; r < grid_rows; ++r) {
        for (int c = 0; c < grid_cols; ++c) {
            const int id = ped_at(r, c);
            if (id < 0) continue;
            if (!ids_on_grid.insert(id).second)
                complain("pedestrian id " + std::to_string(id) + " occupies two cells");
            const PedestrianAgent* p = find_ped(id);
            if (!p) {
                complain("grid holds unknown pedestrian id " + std::to_string(id));
            } else if (p->row != r || p->col != c) {
                complain("pedestrian " + std::to_string(id) + " grid/agent position mismatch");
            }
        }
    }
    for (const auto& p : peds) {
        if (p.phase == PedPhase::Cleared) continue;
        if (ped_at(p.row, p.col) != p.id)
            complain("pedestrian " + std::to_string(p.id) + " missing from grid");
        if (p.phase == PedPhase::Crossing && !geom.is_roadway_row(p.row))
            complain("crossing pedestrian " + std::to_string(p.id) + " off the zebra");
        if ((p.phase == PedPhase::Approaching || p.phase == PedPhase::WaitingAtCurb) &&
            !geom.is_sidewalk_row(p.row))
            complain("sidewalk-phase pedestrian " + std::to_string(p.id) + " on the roadway");
    }

    // lane ordering, overlap, speed and stop-state invariants
    for (std::size_t li = 0; li < cars.size(); ++li) {
        const auto& lane_cars = cars[li];
        const LaneGeometry& lane = geom.lanes[li];
        for (std::size_t i = 0; i < lane_cars.size(); ++i) {
            const CarAgent& car = lane_cars[i];
            if (car.speed < -1e-9 || car.speed > car.desired_speed + 1e-9)
                complain("car " + std::to_string(car.id) + " speed out of [0, desired]");
            if (car.state == CarState::Stopped) {
                if (car.speed != 0.0)
                    complain("stopped car " + std::to_string(car.id) + " has speed");
                if (car.position > lane.stop_line_s + 1e-6)
                    complain("stopped car " + std::to_string(car.id) + " beyond stop line");
            }
            if (car.state == CarState::Yielding && car.position > lane.stop_line_s + 1e-6)
                complain("yielding car " + std::to_string(car.id) + " crossed its stop line");
            if (car.state == CarState::Committed && car.open_episode < 0)
                complain("committed car " + std::to_string(car.id) + " without open episode");
            if (i + 1 < lane_cars.size()) {
                const CarAgent& follower = lane_cars[i + 1];
                if (follower.position >= car.rear() - 1e-9)
                    complain("rear-end overlap: car " + std::to_string(follower.id) +
                             " reaches into car " + std::to_string(car.id));
            }
        }
    }
    return bad;
}

int WorldState::overlap_count(const Geometry& geom) const {
    int n = 0;
    for (const auto& p : peds) {
        if (p.phase != PedPhase::Crossing) continue;
        const auto [cx0, cx1] = geom.column_x(p.col);
        for (int li : geom.lanes_in_rows(p.row, p.row + 1)) {
            for (const CarAgent& car : cars[li]) {
                const auto [vx0, vx1] = geom.car_x(geom.lanes[li], car.position, car.length);
                if (vx0 < cx1 - 1e-9 && cx0 < vx1 - 1e-9) ++n;
            }
        }
    }
    return n;
}

}  // namespace zebrasim
