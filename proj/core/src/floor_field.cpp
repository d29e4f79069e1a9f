#include "zebrasim/floor_field.hpp"

#include <cmath>
#include <queue>
#include <string>

namespace zebrasim {

FloorField compute_floor_field(const GridMask& walkable,
                               const std::vector<GridCell>& goals) {
    FloorField field;
    field.rows = walkable.rows;
    field.cols = walkable.cols;
    field.value.assign(field.rows * field.cols, FloorField::unreachable());

    // (distance, cell index); index as tiebreaker keeps pop order deterministic
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;

    for (const GridCell& g : goals) {
        if (!walkable.at(g.row, g.col))
            throw GeometryError("floor field goal cell is not walkable");
        const int idx = g.row * field.cols + g.col;
        if (field.value[idx] > 0.0) {
            field.value[idx] = 0.0;
            queue.push({0.0, idx});
        }
    }
    if (queue.empty()) throw GeometryError("floor field has no goal cells");

    static const int dr[] = {-1, 1, 0, 0, -1, -1, 1, 1};
    static const int dc[] = {0, 0, -1, 1, -1, 1, -1, 1};
    const double diag = std::sqrt(2.0);

    while (!queue.empty()) {
        const auto [dist, idx] = queue.top();
        queue.pop();
        if (dist > field.value[idx]) continue;
        const int r = idx / field.cols;
        const int c = idx % field.cols;
        for (int k = 0; k < 8; ++k) {
            const int nr = r + dr[k];
            const int nc = c + dc[k];
            if (!walkable.at(nr, nc)) continue;
            const double nd = dist + (k < 4 ? 1.0 : diag);
            const int nidx = nr * field.cols + nc;
            if (nd < field.value[nidx] - 1e-12) {
                field.value[nidx] = nd;
                queue.push({nd, nidx});
            }
        }
    }

    for (int r = 0; r < field.rows; ++r)
        for (int c = 0; c < field.cols; ++c)
            if (walkable.at(r, c) && std::isinf(field.at(r, c)))
                throw GeometryError("walkable cell (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") cannot reach any goal");
    return field;
}

}  // namespace zebrasim
