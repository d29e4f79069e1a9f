#pragma once

#include "zebrasim/config.hpp"
#include "zebrasim/floor_field.hpp"
#include "zebrasim/geometry.hpp"
#include "zebrasim/world.hpp"

namespace zebrasim {

enum class GapDecision { Go, Wait };

/// Go iff every car approaching the crosswalk in a lane the pedestrian has
/// yet to traverse: and not already yielding or stopped: arrives later than
/// the remaining crossing time plus the safety margin.
GapDecision gap_acceptance(const PedestrianAgent& ped, const WorldState& world,
                           const Geometry& geom, const ScenarioConfig& cfg);

/// Time the pedestrian needs to clear the roadway rows still ahead of it.
double crossing_time_needed(const PedestrianAgent& ped, const Geometry& geom,
                            const ScenarioConfig& cfg);

/// One tick of pedestrian movement, in seeded random order: approach along
/// the floor field, gap-accept at the curb, cross, clear on the far sidewalk.
/// `field_a` guides side-A entries (goal: sidewalk B) and vice versa.
void ped_update(WorldState& world, const ScenarioConfig& cfg, const Geometry& geom,
                const FloorField& field_a, const FloorField& field_b);

}  // namespace zebrasim
