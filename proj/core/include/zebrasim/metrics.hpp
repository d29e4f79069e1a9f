#pragma once

#include <optional>
#include <span>
#include <vector>

#include "zebrasim/episode.hpp"
#include "zebrasim/geometry.hpp"
#include "zebrasim/world.hpp"

namespace zebrasim {

/// Per-minute aggregate: the observation unit of the regression.
struct MinuteRecord {
    int minute = 0;
    int n_vehicles = 0;       // vehicles passing the crosswalk section
    int n_crossing_peds = 0;  // pedestrians entering Crossing
    int n_episodes = 0;       // episodes decided this minute
    std::optional<double> pct_noncompliant;  // absent when no episodes
};

struct ComplianceRow {
    long compliant = 0;
    long noncompliant = 0;
    long total() const { return compliant + noncompliant; }
    double pct_compliant() const;
    double pct_noncompliant() const;
};

struct ComplianceTable {
    ComplianceRow near;
    ComplianceRow far;
    long total() const { return near.total() + far.total(); }
    long total_noncompliant() const { return near.noncompliant + far.noncompliant; }
    /// Overall percentage non-compliant; absent for an empty table.
    std::optional<double> overall_pct_noncompliant() const;
};

/// Counts of the exported binary compliance flag by near/far side.
ComplianceTable tally_compliance(std::span<const CrossingEpisode> episodes);

/// One record per whole minute of [0, duration_minutes); episodes assigned to
/// the minute of their decision time. Throws DataError on out-of-range
/// timestamps.
std::vector<MinuteRecord> aggregate_minutes(std::span<const CrossingEpisode> episodes,
                                            const SimEvents& events,
                                            double duration_minutes);

/// Time-to-collision of one (car, pedestrian) pair: distance from the car's
/// front to the pedestrian's conflict point over the car's speed. Empty when
/// the car is stopped, the pedestrian is not crossing the car's lane, or the
/// conflict point is already behind the front bumper.
std::optional<double> compute_ttc(const CarAgent& car, const PedestrianAgent& ped,
                                  const Geometry& geom);

enum class Los : int { A, B, C, D, E, F };
const char* to_string(Los level);

struct CapacityResult {
    double veh_per_hour = 0.0;
    double mean_ped_delay = 0.0;  // seconds; meaningful only when samples > 0
    long delay_samples = 0;
    Los los = Los::A;
    bool zero_sample = false;  // no cleared pedestrians: delay undefined, LOS defaults to A
};

/// Road throughput, mean pedestrian delay and the level-of-service grade
/// from the configured delay bands.
CapacityResult capacity_and_los(const SimEvents& events, double duration_minutes,
                                const LosBands& bands = kDefaultLosBands);

/// Episodes whose minimum TTC fell below the near-accident threshold.
long near_accident_count(std::span<const CrossingEpisode> episodes, double ttc_threshold);

}  // namespace zebrasim
