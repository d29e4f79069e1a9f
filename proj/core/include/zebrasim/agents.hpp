#pragma once

#include <optional>

#include "zebrasim/config.hpp"

namespace zebrasim {

enum class CarState : int { Cruising, Yielding, Stopped, Committed };
enum class PedPhase : int { Approaching, WaitingAtCurb, Crossing, Cleared };

const char* to_string(CarState s);
const char* to_string(PedPhase p);

enum class DecisionKind : int {
    Compliant = 0,
    NonCompliantForced = 1,      // braking distance exceeded the available gap
    NonCompliantDeliberate = 2,  // refused to yield despite sufficient distance
};

const char* to_string(DecisionKind k);

inline bool is_noncompliant(DecisionKind k) { return k != DecisionKind::Compliant; }

struct ComplianceDecision {
    DecisionKind kind = DecisionKind::Compliant;
    double distance_at_decision = 0.0;          // to the stop line, m
    double braking_distance_at_decision = 0.0;  // v^2 / (2 a), m
    std::optional<double> random_draw;          // absent for forced decisions
};

struct CarAgent {
    int id = -1;
    int lane = 0;
    double position = 0.0;  // front bumper, travel-frame meters from entry
    double speed = 0.0;     // m/s
    double desired_speed = 0.0;
    double length = 4.0;
    CarState state = CarState::Cruising;
    std::optional<ComplianceDecision> decision;
    double spawn_time = 0.0;
    bool counted_passing = false;
    int open_episode = -1;  // id of this car's open episode, -1 when none

    double rear() const { return position - length; }
};

struct PedestrianAgent {
    int id = -1;
    int row = 0;
    int col = 0;
    PedPhase phase = PedPhase::Approaching;
    Side entry_side = Side::A;
    double desired_speed = 1.33;  // m/s
    double wait_time = 0.0;       // seconds accumulated at the curb
    double spawn_time = 0.0;
};

}  // namespace zebrasim
