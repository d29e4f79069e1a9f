#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "zebrasim/agents.hpp"

namespace zebrasim {

/// One contiguous interaction interval between one vehicle and one or more
/// pedestrians at the crossing: the unit of all compliance statistics.
struct CrossingEpisode {
    int id = -1;
    int car_id = -1;
    std::vector<int> ped_ids;  // insertion order = join order

    // classification fixed at decision time
    PedCategory category = PedCategory::WaitingAtCurb;
    RelativeSide side = RelativeSide::Near;
    std::optional<ComplianceDecision> decision;

    double start_time = 0.0;  // also the decision time: decided on opening
    double end_time = -1.0;
    double min_ttc = std::numeric_limits<double>::infinity();

    bool decided() const { return decision.has_value(); }
    bool noncompliant() const {
        return decision && is_noncompliant(decision->kind);
    }
    bool has_ped(int ped_id) const {
        for (int p : ped_ids)
            if (p == ped_id) return true;
        return false;
    }
};

}  // namespace zebrasim
