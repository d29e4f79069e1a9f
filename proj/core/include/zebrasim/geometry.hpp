#pragma once

#include <utility>
#include <vector>

#include "zebrasim/config.hpp"

namespace zebrasim {

/// Vehicles perceive pedestrians from this far upstream of the crossing.
inline constexpr double kPerceptionRange = 100.0;  // m

/// Stop line offset upstream of the zebra edge, so yielding cars never
/// encroach on the crossing surface.
inline constexpr double kStopLineSetback = 1.0;  // m

/// Comfortable acceleration used by the safe-speed vehicle update.
inline constexpr double kAccelMax = 2.0;  // m/s^2

/// Sidewalk depth beyond the curb band (approach zone where pedestrians
/// spawn), in meters; rounded up to whole cells.
inline constexpr double kApproachDepth = 2.4;  // m

/// Floor below which an approaching car's speed is not believed by
/// pedestrian gap acceptance: time-to-arrival = distance / max(speed, this).
/// Keeps a car accelerating from rest right before the zebra threatening.
inline constexpr double kMinApproachSpeed = 0.5;  // m/s

struct LaneGeometry {
    int index = 0;
    bool eastbound = true;
    double y0 = 0.0, y1 = 0.0;      // carriageway-relative lateral span
    int row_begin = 0, row_end = 0; // grid rows this lane overlaps [begin, end)
    // positions in the lane's own travel frame (distance from its entry)
    double zebra_entry_s = 0.0;
    double zebra_exit_s = 0.0;
    double stop_line_s = 0.0;
};

/// Derived tables for the superimposed environments: the pedestrian grid
/// (a corridor of sidewalk + zebra cells around the crossing) and the
/// continuous vehicle lanes, sharing one world frame.
///
/// Row layout, side A outward edge to side B outward edge:
///   [0, sidewalk_rows)                          sidewalk A (curb row at the end)
///   [sidewalk_rows, sidewalk_rows+carriage_rows) zebra / carriageway
///   [.., rows_total)                             sidewalk B (curb row first)
class Geometry {
public:
    explicit Geometry(const ScenarioConfig& cfg);

    int cols = 0;            // zebra columns (crosswalk width in cells, rounded up)
    int band_rows = 0;       // curb band depth in cells (rounded up)
    int approach_rows = 0;   // spawn zone depth in cells
    int sidewalk_rows = 0;   // band + approach
    int carriage_rows = 0;   // roadway rows covered by the zebra
    int rows_total = 0;

    double cell_size = 0.0;
    double road_length = 0.0;
    double zebra_x0 = 0.0;    // upstream zebra edge, world x
    double zebra_len = 0.0;   // cols * cell_size
    double carriageway_width = 0.0;

    std::vector<LaneGeometry> lanes;

    // --- row classification -------------------------------------------------
    bool is_roadway_row(int r) const {
        return r >= sidewalk_rows && r < sidewalk_rows + carriage_rows;
    }
    bool is_sidewalk_row(int r) const { return r >= 0 && r < rows_total && !is_roadway_row(r); }
    Side sidewalk_side(int r) const { return r < sidewalk_rows ? Side::A : Side::B; }
    int curb_row(Side s) const {
        return s == Side::A ? sidewalk_rows - 1 : sidewalk_rows + carriage_rows;
    }
    bool in_band(int r) const {
        return in_band(Side::A, r) || in_band(Side::B, r);
    }
    bool in_band(Side s, int r) const {
        if (s == Side::A) return r >= sidewalk_rows - band_rows && r < sidewalk_rows;
        return r >= sidewalk_rows + carriage_rows && r < sidewalk_rows + carriage_rows + band_rows;
    }
    bool is_spawn_row(Side s, int r) const {
        if (s == Side::A) return r >= 0 && r < sidewalk_rows - band_rows;
        return r >= sidewalk_rows + carriage_rows + band_rows && r < rows_total;
    }
    /// Far sidewalk reached by a pedestrian entering from `entry`.
    bool is_goal_row(Side entry, int r) const {
        return is_sidewalk_row(r) && sidewalk_side(r) != entry;
    }

    // --- pedestrian path ------------------------------------------------------
    /// Roadway rows the pedestrian has yet to traverse, current row included:
    /// [first, last) in grid coordinates; empty when none remain.
    std::pair<int, int> remaining_roadway_rows(Side entry, int row) const;
    /// Number of roadway rows still ahead of the pedestrian.
    int remaining_roadway_count(Side entry, int row) const {
        auto [a, b] = remaining_roadway_rows(entry, row);
        return b - a;
    }
    /// Lanes whose row span intersects [row_first, row_last).
    std::vector<int> lanes_in_rows(int row_first, int row_last) const;

    // --- lane frame <-> world x ----------------------------------------------
    double front_x(const LaneGeometry& lane, double s) const {
        return lane.eastbound ? s : road_length - s;
    }
    /// Travel-frame position at which a car's front reaches column `col`.
    double column_entry_s(const LaneGeometry& lane, int col) const;
    /// World-x interval occupied by grid column `col`.
    std::pair<double, double> column_x(int col) const {
        return {zebra_x0 + col * cell_size, zebra_x0 + (col + 1) * cell_size};
    }
    /// World-x interval occupied by a car with front at travel position s.
    std::pair<double, double> car_x(const LaneGeometry& lane, double s, double length) const {
        if (lane.eastbound) return {s - length, s};
        return {road_length - s, road_length - s + length};
    }

    Side near_side(const LaneGeometry& lane) const {
        return lane.eastbound ? Side::A : Side::B;
    }

    int cell_index(int row, int col) const { return row * cols + col; }
};

}  // namespace zebrasim
