#include "zebrasim/compliance.hpp"

#include <algorithm>

#include "zebrasim/errors.hpp"
#include "zebrasim/vehicle_dynamics.hpp"

namespace zebrasim {

std::vector<int> detect_relevant_pedestrians(const CarAgent& car, const WorldState& world,
                                             const Geometry& geom) {
    (void)car;  // the perception zone is shared by all cars
    std::vector<int> out;
    for (const PedestrianAgent& ped : world.peds) {
        switch (ped.phase) {
            case PedPhase::Crossing:
                out.push_back(ped.id);
                break;
            case PedPhase::WaitingAtCurb:
                out.push_back(ped.id);
                break;
            case PedPhase::Approaching:
                if (geom.in_band(ped.entry_side, ped.row)) out.push_back(ped.id);
                break;
            case PedPhase::Cleared:
                break;
        }
    }
    return out;
}

int open_or_join_episode(CarAgent& car, const std::vector<int>& ped_ids, WorldState& world) {
    if (car.open_episode >= 0) {
        CrossingEpisode* ep = world.find_open_episode(car.open_episode);
        for (int id : ped_ids)
            if (!ep->has_ped(id)) ep->ped_ids.push_back(id);
        return ep->id;
    }
    CrossingEpisode ep;
    ep.id = world.next_episode_id++;
    ep.car_id = car.id;
    ep.ped_ids = ped_ids;
    ep.start_time = world.sim_time();
    world.open_episodes.push_back(std::move(ep));
    car.open_episode = world.open_episodes.back().id;
    return car.open_episode;
}

PedCategory classify_pedestrian_position(const PedestrianAgent& ped, const Geometry& geom) {
    (void)geom;
    switch (ped.phase) {
        case PedPhase::Crossing: return PedCategory::OnZebra;
        case PedPhase::WaitingAtCurb: return PedCategory::WaitingAtCurb;
        default: return PedCategory::ApproachingWithinBand;
    }
}

RelativeSide classify_side(const PedestrianAgent& ped, const CarAgent& car,
                           const Geometry& geom) {
    return ped.entry_side == geom.near_side(geom.lanes[car.lane]) ? RelativeSide::Near
                                                                  : RelativeSide::Far;
}

ComplianceDecision decide_compliance(CarAgent& car, CrossingEpisode& episode,
                                     const WorldState& world, const Geometry& geom,
                                     const ScenarioConfig& cfg, RngStream& rng) {
    if (episode.decided())
        throw DecisionAlreadyMadeError("episode " + std::to_string(episode.id) +
                                       " already has a compliance decision");

    // The most advanced pedestrian carries the strongest claim and sets the
    // episode's classification; ties go to the earliest-joined.
    const PedestrianAgent* trigger = nullptr;
    PedCategory best = PedCategory::ApproachingWithinBand;
    for (int id : episode.ped_ids) {
        const PedestrianAgent* ped = world.find_ped(id);
        if (!ped) continue;
        const PedCategory cat = classify_pedestrian_position(*ped, geom);
        if (!trigger || static_cast<int>(cat) > static_cast<int>(best)) {
            trigger = ped;
            best = cat;
        }
    }

    ComplianceDecision decision;
    if (trigger) {
        episode.category = best;
        episode.side = classify_side(*trigger, car, geom);
    }

    const LaneGeometry& lane = geom.lanes[car.lane];
    decision.distance_at_decision = lane.stop_line_s - car.position;
    decision.braking_distance_at_decision = braking_distance(car.speed, cfg.decel_max);

    if (decision.distance_at_decision < decision.braking_distance_at_decision) {
        decision.kind = DecisionKind::NonCompliantForced;
        car.state = CarState::Committed;
    } else {
        const double p = cfg.p_deliberate.lookup(episode.side, episode.category);
        const double u = rng.uniform();
        decision.random_draw = u;
        if (u < p) {
            decision.kind = DecisionKind::NonCompliantDeliberate;
            car.state = CarState::Committed;
        } else {
            decision.kind = DecisionKind::Compliant;
            car.state = CarState::Yielding;
        }
    }

    episode.decision = decision;
    car.decision = decision;
    return decision;
}

}  // namespace zebrasim
