#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "zebrasim/errors.hpp"

namespace zebrasim {

/// Entry sidewalk of a pedestrian. Side A is the sidewalk adjacent to the
/// lanes travelling in +x ("eastbound"); side B borders the opposite lanes.
enum class Side : int { A = 0, B = 1 };

/// Pedestrian entry side relative to a car's direction of travel:
/// Near = the sidewalk adjacent to the car's side of the carriageway.
enum class RelativeSide : int { Near = 0, Far = 1 };

/// Position taxonomy of the pedestrian that triggers a compliance decision.
enum class PedCategory : int {
    ApproachingWithinBand = 0,  // approaching, inside the curb band
    WaitingAtCurb = 1,
    OnZebra = 2,
};

const char* to_string(Side s);
const char* to_string(RelativeSide s);
const char* to_string(PedCategory c);

/// Probability that a driver deliberately refuses to yield although the
/// braking distance would allow stopping. Scalar fallback with optional
/// per-side (near/far) and per-(side, category) overrides; most specific
/// entry wins.
struct DeliberateProbability {
    double fallback = 0.35;
    std::array<std::optional<double>, 2> per_side{};
    std::array<std::array<std::optional<double>, 3>, 2> per_side_category{};

    double lookup(RelativeSide side, PedCategory category) const {
        const auto s = static_cast<int>(side);
        const auto c = static_cast<int>(category);
        if (per_side_category[s][c]) return *per_side_category[s][c];
        if (per_side[s]) return *per_side[s];
        return fallback;
    }

    void set_side(RelativeSide side, double p) { per_side[static_cast<int>(side)] = p; }
    void set_side_category(RelativeSide side, PedCategory cat, double p) {
        per_side_category[static_cast<int>(side)][static_cast<int>(cat)] = p;
    }
};

struct SpeedSpec {
    double mean = 11.1;   // m/s
    double spread = 1.0;  // m/s, standard deviation (samples clamped to ±3 sd)
};

/// Delay upper bounds (seconds) for level-of-service grades A..E;
/// anything above the last bound is grade F.
using LosBands = std::array<double, 5>;
inline constexpr LosBands kDefaultLosBands{5.0, 10.0, 20.0, 30.0, 45.0};

/// What a yielding driver waits for before resuming: the default frees the
/// car once its own lane's conflict zone clears (staged crossing); FullZebra
/// holds it until no pedestrian is on the crossing at all.
enum class ResumeScope : int { OwnLane = 0, FullZebra = 1 };

const char* to_string(ResumeScope s);

/// Full scenario description. Loadable from a JSON file whose keys mirror
/// the field names below; unknown keys are rejected.
struct ScenarioConfig {
    int lane_count = 1;                  // lanes per direction
    double lane_width = 3.0;             // m
    double road_length = 200.0;          // m
    double crosswalk_position = 100.0;   // m from road origin (upstream zebra edge)
    double crosswalk_width = 3.5;        // m along the travel direction
    double curb_band_depth = 1.5;        // m, rounded up to whole cells
    double cell_size = 0.4;              // m
    double time_step = 0.3;              // s
    double duration = 73.0;              // minutes
    double veh_arrival_rate = 18.89;     // veh/min, all lanes combined
    double ped_arrival_rate = 8.01;      // ped/min, both sides combined
    std::optional<double> ped_rate_side_a;  // optional per-side override
    std::optional<double> ped_rate_side_b;
    SpeedSpec desired_speed_veh{};
    double desired_speed_ped = 1.33;     // m/s
    double decel_max = 3.5;              // m/s^2, comfortable maximum deceleration
    DeliberateProbability p_deliberate{};
    double ttc_threshold = 1.5;          // s, near-accident cutoff
    double safety_margin = 1.0;          // s, pedestrian gap-acceptance margin
    ResumeScope resume_scope = ResumeScope::OwnLane;
    LosBands los_bands = kDefaultLosBands;
    std::uint64_t seed = 1;

    /// Throws ConfigError naming the violated invariant.
    void validate() const;

    double ped_rate(Side side) const {
        if (side == Side::A && ped_rate_side_a) return *ped_rate_side_a;
        if (side == Side::B && ped_rate_side_b) return *ped_rate_side_b;
        return ped_arrival_rate / 2.0;
    }

    int total_ticks() const {
        return static_cast<int>(std::llround(duration * 60.0 / time_step));
    }

    static ScenarioConfig from_json_text(const std::string& text);
    static ScenarioConfig load_file(const std::string& path);

    /// Effective configuration echo (JSON text), including derived rounding
    /// such as the curb band in whole cells.
    std::string echo_json(int indent = 2) const;
};

/// Observed reference values used as calibration and verification targets.
struct ObservedTargets {
    int near_compliant = 191;
    int near_noncompliant = 223;
    int far_compliant = 230;
    int far_noncompliant = 168;
    int total_episodes = 812;
    int minutes = 73;
    double pct_noncompliant_overall = 48.15;  // 391/812
    double veh_per_min = 18.89;
    double ped_per_min = 8.01;
    double r_squared = 0.293;
    double f_stat = 14.526;
    int f_df1 = 2;
    int f_df2 = 70;

    double near_noncompliant_pct() const {
        return 100.0 * near_noncompliant / (near_compliant + near_noncompliant);
    }
    double far_noncompliant_pct() const {
        return 100.0 * far_noncompliant / (far_compliant + far_noncompliant);
    }
    double overall_noncompliant_fraction() const {
        return static_cast<double>(near_noncompliant + far_noncompliant) / total_episodes;
    }
};

}  // namespace zebrasim
