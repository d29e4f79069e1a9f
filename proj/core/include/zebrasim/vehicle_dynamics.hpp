#pragma once

#include <optional>

#include "zebrasim/agents.hpp"
#include "zebrasim/geometry.hpp"

namespace zebrasim {

class WorldState;

/// Standstill buffer kept to the leader's rear bumper.
inline constexpr double kMinGapToLeader = 0.5;  // m

/// Minimum stopping distance from `speed` at constant deceleration `decel`:
/// speed^2 / (2 * decel). Throws GeometryError for non-positive decel.
double braking_distance(double speed, double decel);

struct KinematicUpdate {
    double speed = 0.0;
    double position = 0.0;
};

/// Safe-speed longitudinal update:
///   v_next = min(desired, v + a*dt, v_safe(gap to leader), v_safe(gap to stop))
/// with v_safe(g) = sqrt(2 * decel_max * max(g, 0)); position advances with the
/// trapezoidal speed and never crosses the stop target or the leader's rear.
/// `leader`, when given, must already hold its post-update state.
KinematicUpdate car_following_update(const CarAgent& car, const CarAgent* leader,
                                     std::optional<double> stop_target, double dt,
                                     double decel_max, double accel = kAccelMax);

enum class ResumeAction { Resume, Hold };

/// Exit condition from yielding: a car may resume when no crossing pedestrian
/// still has the car's lane on its remaining path and the near-side curb band
/// holds no pedestrian approaching or waiting to cross. With
/// ResumeScope::FullZebra the car instead waits for the whole crossing to
/// clear of pedestrians.
ResumeAction resume_check(const CarAgent& car, const WorldState& world,
                          const Geometry& geom,
                          ResumeScope scope = ResumeScope::OwnLane);

}  // namespace zebrasim
