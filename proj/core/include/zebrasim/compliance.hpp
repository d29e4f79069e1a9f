#pragma once

#include <vector>

#include "zebrasim/episode.hpp"
#include "zebrasim/geometry.hpp"
#include "zebrasim/world.hpp"

namespace zebrasim {

/// Pedestrians the car perceives: on the zebra or inside either curb band
/// (the perception zone next to the crossing).
std::vector<int> detect_relevant_pedestrians(const CarAgent& car, const WorldState& world,
                                             const Geometry& geom);

/// Open a new episode for the car or merge later-arriving pedestrians into
/// its open episode. Returns the episode id.
int open_or_join_episode(CarAgent& car, const std::vector<int>& ped_ids,
                         WorldState& world);

/// Position taxonomy of one pedestrian.
PedCategory classify_pedestrian_position(const PedestrianAgent& ped, const Geometry& geom);

/// Near iff the pedestrian's entry sidewalk borders the car's side of the
/// carriageway.
RelativeSide classify_side(const PedestrianAgent& ped, const CarAgent& car,
                           const Geometry& geom);

/// One-shot yield/refuse decision when the car enters the decision zone:
/// forced non-compliance when the stop line is inside the braking distance,
/// otherwise a deliberate refusal with probability p(side, category).
/// Also stamps the episode's category and side. Throws DecisionAlreadyMadeError
/// if the episode was already decided.
ComplianceDecision decide_compliance(CarAgent& car, CrossingEpisode& episode,
                                     const WorldState& world, const Geometry& geom,
                                     const ScenarioConfig& cfg, RngStream& rng);

}  // namespace zebrasim
