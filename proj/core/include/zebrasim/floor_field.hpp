#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "zebrasim/errors.hpp"

namespace zebrasim {

struct GridCell {
    int row = 0;
    int col = 0;
};

/// Walkable-cell mask over a row-major grid.
struct GridMask {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> walkable;  // rows*cols

    GridMask() = default;
    GridMask(int r, int c) : rows(r), cols(c), walkable(r * c, 0) {}
    bool at(int r, int c) const {
        return r >= 0 && r < rows && c >= 0 && c < cols && walkable[r * cols + c];
    }
    void set(int r, int c, bool v = true) { walkable[r * cols + c] = v ? 1 : 0; }
};

/// Static distance-to-goal potential guiding pedestrian movement.
/// Non-walkable cells hold +infinity.
struct FloorField {
    int rows = 0;
    int cols = 0;
    std::vector<double> value;

    double at(int r, int c) const { return value[r * cols + c]; }
    static constexpr double unreachable() {
        return std::numeric_limits<double>::infinity();
    }
};

/// Shortest-path distances from the goal cells over the walkable mask,
/// 8-neighborhood with diagonal cost sqrt(2).
/// Throws GeometryError if any walkable cell cannot reach a goal.
FloorField compute_floor_field(const GridMask& walkable,
                               const std::vector<GridCell>& goals);

}  // namespace zebrasim
