#pragma once

#include <cstdint>
#include <vector>

#include "zebrasim/config.hpp"

namespace zebrasim {

struct CalibrationOptions {
    int replications = 5;           // seeded runs per evaluation
    int run_budget = 120;           // total simulation runs allowed
    double rate_tolerance = 0.01;   // accept when |measured - target| <= this
    double bracket_tolerance = 0.01;
    std::uint64_t seed_base = 20000;  // replication i runs with seed_base + i
};

/// Pooled non-compliance rates over a set of seeded replications.
struct RateMeasurement {
    double overall = 0.0;
    double near = 0.0;
    double far = 0.0;
    double forced = 0.0;  // forced share of all episodes
    long episodes = 0;
};

/// Run `opts.replications` seeded replications of `cfg` and pool the
/// exported (binary) non-compliance rates.
RateMeasurement measure_noncompliance(const ScenarioConfig& cfg,
                                      const CalibrationOptions& opts);

struct CalibrationResult {
    double p = 0.0;             // calibrated deliberate-refusal probability
    double measured_rate = 0.0; // pooled rate at the returned p
    double floor_rate = 0.0;    // forced-only rate at p = 0
    int iterations = 0;
    int runs_used = 0;
};

/// Monotone bisection on the scalar p_deliberate, with common random numbers
/// across iterates. Stops when the bracket is narrower than
/// `bracket_tolerance` or the measured rate is within `rate_tolerance` of the
/// target. Throws InfeasibleTargetError (reporting the floor) when the target
/// lies below the forced-non-compliance floor.
CalibrationResult calibrate_noncompliance(double target_rate, ScenarioConfig cfg,
                                          const CalibrationOptions& opts = {});

struct SideCalibrationResult {
    double p_near = 0.0, p_far = 0.0;
    double measured_near = 0.0, measured_far = 0.0;
    double floor_near = 0.0, floor_far = 0.0;
    int iterations = 0;
    int runs_used = 0;
};

/// Joint per-side calibration: two bisections sharing the same replications,
/// each side's bracket updated from its own measured rate.
SideCalibrationResult calibrate_noncompliance_by_side(double target_near, double target_far,
                                                      ScenarioConfig cfg,
                                                      const CalibrationOptions& opts = {});

}  // namespace zebrasim
