#include "zebrasim/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace zebrasim {

namespace {

int cells_covering(double length, double cell) {
    return static_cast<int>(std::ceil(length / cell - 1e-9));
}

}  // namespace

Geometry::Geometry(const ScenarioConfig& cfg) {
    cfg.validate();

    cell_size = cfg.cell_size;
    road_length = cfg.road_length;
    zebra_x0 = cfg.crosswalk_position;

    cols = cells_covering(cfg.crosswalk_width, cell_size);
    zebra_len = cols * cell_size;

    // Curb band rounds up to whole cells: never under-cover the yielding zone.
    band_rows = cells_covering(cfg.curb_band_depth, cell_size);
    approach_rows = std::max(1, cells_covering(kApproachDepth, cell_size));
    sidewalk_rows = band_rows + approach_rows;

    carriageway_width = 2.0 * cfg.lane_count * cfg.lane_width;
    carriage_rows = cells_covering(carriageway_width, cell_size);
    rows_total = 2 * sidewalk_rows + carriage_rows;

    const int n_lanes = 2 * cfg.lane_count;
    lanes.resize(n_lanes);
    for (int i = 0; i < n_lanes; ++i) {
        LaneGeometry& lane = lanes[i];
        lane.index = i;
        lane.eastbound = i < cfg.lane_count;
        lane.y0 = i * cfg.lane_width;
        lane.y1 = (i + 1) * cfg.lane_width;

        // grid rows overlapping the lane's lateral span
        lane.row_begin = rows_total;
        lane.row_end = 0;
        for (int r = sidewalk_rows; r < sidewalk_rows + carriage_rows; ++r) {
            const double cy0 = (r - sidewalk_rows) * cell_size;
            const double cy1 = cy0 + cell_size;
            if (cy0 < lane.y1 - 1e-9 && lane.y0 < cy1 - 1e-9) {
                lane.row_begin = std::min(lane.row_begin, r);
                lane.row_end = std::max(lane.row_end, r + 1);
            }
        }

        if (lane.eastbound) {
            lane.zebra_entry_s = zebra_x0;
        } else {
            lane.zebra_entry_s = road_length - (zebra_x0 + zebra_len);
        }
        lane.zebra_exit_s = lane.zebra_entry_s + zebra_len;
        lane.stop_line_s = lane.zebra_entry_s - kStopLineSetback;
    }
}

std::pair<int, int> Geometry::remaining_roadway_rows(Side entry, int row) const {
    const int road_first = sidewalk_rows;
    const int road_last = sidewalk_rows + carriage_rows;  // exclusive
    if (entry == Side::A) {
        // moving toward larger rows
        if (row >= road_last) return {road_last, road_last};
        return {std::max(row, road_first), road_last};
    }
    // entry B, moving toward smaller rows
    if (row < road_first) return {road_first, road_first};
    return {road_first, std::min(row, road_last - 1) + 1};
}

std::vector<int> Geometry::lanes_in_rows(int row_first, int row_last) const {
    std::vector<int> out;
    for (const LaneGeometry& lane : lanes)
        if (lane.row_begin < row_last && row_first < lane.row_end)
            out.push_back(lane.index);
    return out;
}

double Geometry::column_entry_s(const LaneGeometry& lane, int col) const {
    if (lane.eastbound) return zebra_x0 + col * cell_size;
    return road_length - (zebra_x0 + (col + 1) * cell_size);
}

}  // namespace zebrasim
