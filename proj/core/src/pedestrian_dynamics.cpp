#include "zebrasim/pedestrian_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zebrasim {

double crossing_time_needed(const PedestrianAgent& ped, const Geometry& geom,
                            const ScenarioConfig& cfg) {
    const int remaining = geom.remaining_roadway_count(ped.entry_side, ped.row);
    const double per_cell = std::max(cfg.time_step, geom.cell_size / ped.desired_speed);
    return remaining * per_cell;
}

GapDecision gap_acceptance(const PedestrianAgent& ped, const WorldState& world,
                           const Geometry& geom, const ScenarioConfig& cfg) {
    const auto [row_first, row_last] = geom.remaining_roadway_rows(ped.entry_side, ped.row);
    if (row_first >= row_last) return GapDecision::Go;

    const double needed = crossing_time_needed(ped, geom, cfg) + cfg.safety_margin;

    for (int li : geom.lanes_in_rows(row_first, row_last)) {
        const LaneGeometry& lane = geom.lanes[li];
        for (const CarAgent& car : world.cars[li]) {
            if (car.state == CarState::Yielding || car.state == CarState::Stopped)
                continue;  // treated as compliant
            if (car.rear() >= lane.zebra_exit_s) continue;  // already past
            const double dist = lane.zebra_entry_s - car.position;
            // on the crossing right now, or arriving too soon
            const double tta = dist <= 0.0
                                   ? 0.0
                                   : dist / std::max(car.speed, kMinApproachSpeed);
            if (tta <= needed) return GapDecision::Wait;
        }
    }
    return GapDecision::Go;
}

namespace {

struct Move {
    int row = 0, col = 0;
    bool found = false;
};

// Best free neighbor with a strictly smaller field value; ties broken by a
// seeded uniform pick. Returns found=false when every downhill cell is taken.
Move pick_step(const PedestrianAgent& ped, const WorldState& world,
               const FloorField& field, RngStream& rng) {
    static const int dr[] = {-1, 1, 0, 0, -1, -1, 1, 1};
    static const int dc[] = {0, 0, -1, 1, -1, 1, -1, 1};

    const double here = field.at(ped.row, ped.col);
    int cand_r[8], cand_c[8];
    int n = 0;
    double best = here - 1e-12;
    for (int k = 0; k < 8; ++k) {
        const int r = ped.row + dr[k];
        const int c = ped.col + dc[k];
        if (r < 0 || r >= field.rows || c < 0 || c >= field.cols) continue;
        const double v = field.at(r, c);
        if (v >= here - 1e-12) continue;  // only strictly downhill
        if (world.ped_at(r, c) >= 0) continue;
        if (v < best - 1e-9) {
            best = v;
            n = 0;
        }
        if (v <= best + 1e-9) {
            cand_r[n] = r;
            cand_c[n] = c;
            ++n;
        }
    }
    if (n == 0) return {};
    const int pick = n == 1 ? 0 : static_cast<int>(rng.below(n));
    return {cand_r[pick], cand_c[pick], true};
}

}  // namespace

void ped_update(WorldState& world, const ScenarioConfig& cfg, const Geometry& geom,
                const FloorField& field_a, const FloorField& field_b) {
    std::vector<int> order(world.peds.size());
    std::iota(order.begin(), order.end(), 0);
    world.rng_ped_behavior.shuffle(order);

    const double now = world.sim_time();
    bool any_cleared = false;

    for (int idx : order) {
        PedestrianAgent& ped = world.peds[idx];
        if (ped.phase == PedPhase::Cleared) continue;
        const FloorField& field = ped.entry_side == Side::A ? field_a : field_b;

        double move_prob =
            std::min(1.0, ped.desired_speed * cfg.time_step / geom.cell_size);
        if (move_prob >= 0.99) move_prob = 1.0;  // avoid artifact dawdling

        if (ped.phase == PedPhase::WaitingAtCurb) {
            ped.wait_time += cfg.time_step;
            if (gap_acceptance(ped, world, geom, cfg) == GapDecision::Wait) continue;
            // accepted: fall through into a normal movement attempt
        }

        if (move_prob < 1.0 && world.rng_ped_behavior.uniform() >= move_prob) continue;

        const Move step = pick_step(ped, world, field, world.rng_ped_behavior);
        if (!step.found) {
            // A crossing pedestrian on its final roadway row whose landing
            // cells are all taken steps off into the sidewalk crowd rather
            // than standing in traffic (open boundary at the corridor edge).
            if (ped.phase == PedPhase::Crossing &&
                geom.remaining_roadway_count(ped.entry_side, ped.row) == 1) {
                world.clear_cell(ped.row, ped.col);
                ped.phase = PedPhase::Cleared;
                world.events.ped_wait_times.push_back(ped.wait_time);
                ++world.counters.cleared_ped;
                any_cleared = true;
            }
            continue;
        }

        const bool entering_roadway =
            !geom.is_roadway_row(ped.row) && geom.is_roadway_row(step.row);
        if (entering_roadway && ped.phase == PedPhase::Approaching) {
            if (gap_acceptance(ped, world, geom, cfg) == GapDecision::Wait) {
                ped.phase = PedPhase::WaitingAtCurb;
                continue;
            }
        }

        world.clear_cell(ped.row, ped.col);
        ped.row = step.row;
        ped.col = step.col;

        if (geom.is_goal_row(ped.entry_side, ped.row)) {
            // reached the far sidewalk
            ped.phase = PedPhase::Cleared;
            world.events.ped_wait_times.push_back(ped.wait_time);
            ++world.counters.cleared_ped;
            any_cleared = true;
            continue;
        }

        world.place_ped(ped.row, ped.col, ped.id);
        if (entering_roadway) {
            ped.phase = PedPhase::Crossing;
            world.events.ped_crossing_times.push_back(now);
        }
    }

    if (any_cleared)
        std::erase_if(world.peds,
                      [](const PedestrianAgent& p) { return p.phase == PedPhase::Cleared; });
}

}  // namespace zebrasim
