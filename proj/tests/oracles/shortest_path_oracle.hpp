#pragma once

// Brute-force shortest-path distances by repeated relaxation (Bellman-Ford
// style), independent of the production Dijkstra. O(cells^2): test sizes only.

#include <cmath>
#include <limits>
#include <vector>

#include "zebrasim/floor_field.hpp"

namespace zebrasim::oracle {

inline std::vector<double> shortest_path_bruteforce(const GridMask& mask,
                                                    const std::vector<GridCell>& goals) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(mask.rows * mask.cols, inf);
    for (const GridCell& g : goals) dist[g.row * mask.cols + g.col] = 0.0;

    static const int dr[] = {-1, 1, 0, 0, -1, -1, 1, 1};
    static const int dc[] = {0, 0, -1, 1, -1, 1, -1, 1};
    const double root2 = std::sqrt(2.0);

    bool changed = true;
    while (changed) {
        changed = false;
        for (int r = 0; r < mask.rows; ++r) {
            for (int c = 0; c < mask.cols; ++c) {
                if (!mask.at(r, c)) continue;
                for (int k = 0; k < 8; ++k) {
                    const int nr = r + dr[k];
                    const int nc = c + dc[k];
                    if (!mask.at(nr, nc)) continue;
                    const double via = dist[nr * mask.cols + nc] + (k < 4 ? 1.0 : root2);
                    if (via < dist[r * mask.cols + c] - 1e-12) {
                        dist[r * mask.cols + c] = via;
                        changed = true;
                    }
                }
            }
        }
    }
    return dist;
}

}  // namespace zebrasim::oracle
