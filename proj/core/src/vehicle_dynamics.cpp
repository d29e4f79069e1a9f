#include "zebrasim/vehicle_dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "zebrasim/errors.hpp"
#include "zebrasim/world.hpp"

namespace zebrasim {

double braking_distance(double speed, double decel) {
    if (decel <= 0.0) throw GeometryError("braking_distance: decel must be > 0");
    return speed * speed / (2.0 * decel);
}

namespace {

double safe_speed(double gap, double decel_max) {
    return std::sqrt(2.0 * decel_max * std::max(gap, 0.0));
}

}  // namespace

KinematicUpdate car_following_update(const CarAgent& car, const CarAgent* leader,
                                     std::optional<double> stop_target, double dt,
                                     double decel_max, double accel) {
    double v_next = std::min(car.desired_speed, car.speed + accel * dt);
    if (leader)
        v_next = std::min(v_next, safe_speed(leader->rear() - car.position - kMinGapToLeader,
                                             decel_max));
    if (stop_target)
        v_next = std::min(v_next, safe_speed(*stop_target - car.position, decel_max));
    v_next = std::max(v_next, 0.0);

    double advance = 0.5 * (car.speed + v_next) * dt;

    if (leader) {
        // never reach past the leader's (already updated) rear bumper
        const double max_adv = leader->rear() - 0.2 - car.position;
        if (advance > max_adv) {
            advance = std::max(max_adv, 0.0);
            v_next = std::min(v_next, std::max(0.0, 2.0 * advance / dt - car.speed));
        }
    }
    if (stop_target) {
        const double stop_gap = std::max(*stop_target - car.position, 0.0);
        if (advance >= stop_gap) {
            advance = stop_gap;
            v_next = 0.0;
        } else if (v_next < 0.02 && stop_gap < 0.10) {
            // park when the braking envelope has converged onto the line
            advance = 0.0;
            v_next = 0.0;
        }
    }

    return {v_next, car.position + advance};
}

ResumeAction resume_check(const CarAgent& car, const WorldState& world,
                          const Geometry& geom, ResumeScope scope) {
    const LaneGeometry& lane = geom.lanes[car.lane];
    const Side near = geom.near_side(lane);

    for (const PedestrianAgent& ped : world.peds) {
        switch (ped.phase) {
            case PedPhase::Crossing: {
                if (scope == ResumeScope::FullZebra) return ResumeAction::Hold;
                // holds while the car's lane is still on the pedestrian's path
                const auto [first, last] = geom.remaining_roadway_rows(ped.entry_side, ped.row);
                if (lane.row_begin < last && first < lane.row_end) return ResumeAction::Hold;
                break;
            }
            case PedPhase::WaitingAtCurb:
                if (ped.entry_side == near) return ResumeAction::Hold;
                break;
            case PedPhase::Approaching:
                if (ped.entry_side == near && geom.in_band(near, ped.row))
                    return ResumeAction::Hold;
                break;
            case PedPhase::Cleared:
                break;
        }
    }
    return ResumeAction::Resume;
}

}  // namespace zebrasim
