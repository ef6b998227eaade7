#include "support/mapgen.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "pathlab/rng.hpp"

namespace pathlab::testing {

GridMap open_grid(std::size_t width, std::size_t height, Neighborhood n) {
    GridMap m;
    m.width = width;
    m.height = height;
    m.neighborhood = n;
    m.passable.assign(width * height, 1);
    return m;
}

GridMap generate_maze(std::size_t cells_x, std::size_t cells_y, std::size_t corridor,
                      std::uint64_t seed, Neighborhood n, MazeStyle style, double braid) {
    const std::size_t step = corridor + 1;
    GridMap m;
    m.width = cells_x * step + 1;
    m.height = cells_y * step + 1;
    m.neighborhood = n;
    m.passable.assign(m.width * m.height, 0);

    auto carve_cell = [&](std::size_t cx, std::size_t cy) {
        for (std::size_t dy = 0; dy < corridor; ++dy) {
            for (std::size_t dx = 0; dx < corridor; ++dx) {
                m.passable[(1 + cy * step + dy) * m.width + (1 + cx * step + dx)] = 1;
            }
        }
    };
    // Opens the wall strip between two lattice-adjacent cells.
    auto carve_link = [&](std::size_t cx, std::size_t cy, std::size_t nx, std::size_t ny) {
        if (cx == nx) {
            const std::size_t wall_y = 1 + std::max(cy, ny) * step - 1;
            for (std::size_t dx = 0; dx < corridor; ++dx) {
                m.passable[wall_y * m.width + (1 + cx * step + dx)] = 1;
            }
        } else {
            const std::size_t wall_x = 1 + std::max(cx, nx) * step - 1;
            for (std::size_t dy = 0; dy < corridor; ++dy) {
                m.passable[(1 + cy * step + dy) * m.width + wall_x] = 1;
            }
        }
    };

    SplitMix64 rng(seed);
    const std::size_t cell_count = cells_x * cells_y;
    std::vector<char> visited(cell_count, 0);
    // linked[c] keeps the lattice tree for dead-end detection under braiding.
    std::vector<std::array<char, 4>> linked(cell_count, {0, 0, 0, 0}); // W E N S

    auto neighbor_of = [&](std::size_t cell, std::size_t dir) -> std::ptrdiff_t {
        const std::size_t cx = cell % cells_x;
        const std::size_t cy = cell / cells_x;
        switch (dir) {
        case 0: return cx > 0 ? static_cast<std::ptrdiff_t>(cell - 1) : -1;
        case 1: return cx + 1 < cells_x ? static_cast<std::ptrdiff_t>(cell + 1) : -1;
        case 2: return cy > 0 ? static_cast<std::ptrdiff_t>(cell - cells_x) : -1;
        default: return cy + 1 < cells_y ? static_cast<std::ptrdiff_t>(cell + cells_x) : -1;
        }
    };
    auto link_cells = [&](std::size_t a, std::size_t dir, std::size_t b) {
        linked[a][dir] = 1;
        linked[b][dir ^ 1] = 1; // opposite direction
        carve_link(a % cells_x, a / cells_x, b % cells_x, b / cells_x);
    };

    const std::size_t start = rng.below(cell_count);
    visited[start] = 1;
    carve_cell(start % cells_x, start / cells_x);

    if (style == MazeStyle::backtracker) {
        std::vector<std::size_t> stack{start};
        while (!stack.empty()) {
            const std::size_t current = stack.back();
            std::size_t dirs[4];
            std::size_t count = 0;
            for (std::size_t d = 0; d < 4; ++d) {
                const std::ptrdiff_t nb = neighbor_of(current, d);
                if (nb >= 0 && !visited[static_cast<std::size_t>(nb)]) dirs[count++] = d;
            }
            if (count == 0) {
                stack.pop_back();
                continue;
            }
            const std::size_t d = dirs[rng.below(count)];
            const std::size_t next = static_cast<std::size_t>(neighbor_of(current, d));
            visited[next] = 1;
            carve_cell(next % cells_x, next / cells_x);
            link_cells(current, d, next);
            stack.push_back(next);
        }
    } else {
        // Randomized Prim: grow from a random frontier edge each step.
        std::vector<std::pair<std::size_t, std::size_t>> frontier; // (cell, dir)
        auto push_frontier = [&](std::size_t cell) {
            for (std::size_t d = 0; d < 4; ++d) {
                const std::ptrdiff_t nb = neighbor_of(cell, d);
                if (nb >= 0 && !visited[static_cast<std::size_t>(nb)]) {
                    frontier.emplace_back(cell, d);
                }
            }
        };
        push_frontier(start);
        while (!frontier.empty()) {
            const std::size_t pick = rng.below(frontier.size());
            const auto [cell, d] = frontier[pick];
            frontier[pick] = frontier.back();
            frontier.pop_back();
            const std::ptrdiff_t nb = neighbor_of(cell, d);
            if (nb < 0 || visited[static_cast<std::size_t>(nb)]) continue;
            const std::size_t next = static_cast<std::size_t>(nb);
            visited[next] = 1;
            carve_cell(next % cells_x, next / cells_x);
            link_cells(cell, d, next);
            push_frontier(next);
        }
    }

    if (braid > 0.0) {
        for (std::size_t cell = 0; cell < cell_count; ++cell) {
            int degree = 0;
            for (std::size_t d = 0; d < 4; ++d) degree += linked[cell][d];
            if (degree != 1 || rng.unit() >= braid) continue;
            // Open one extra wall of this dead end, preferring unlinked
            // in-range neighbors.
            std::size_t dirs[4];
            std::size_t count = 0;
            for (std::size_t d = 0; d < 4; ++d) {
                if (!linked[cell][d] && neighbor_of(cell, d) >= 0) dirs[count++] = d;
            }
            if (count == 0) continue;
            const std::size_t d = dirs[rng.below(count)];
            link_cells(cell, d, static_cast<std::size_t>(neighbor_of(cell, d)));
        }
    }
    return m;
}

GridMap generate_open_terrain(std::size_t width, std::size_t height, double blocked_fraction,
                              std::uint64_t seed, Neighborhood n) {
    GridMap m = open_grid(width, height, n);
    m.neighborhood = n;
    SplitMix64 rng(seed);

    const std::size_t target =
        static_cast<std::size_t>(blocked_fraction * static_cast<double>(width * height));
    const std::size_t span = std::min(width, height);
    std::size_t blocked = 0;

    // Mix of long thin walls and compact blobs; walls force the long detours
    // that make closed-form grid heuristics misjudge distances, the way the
    // game-map benchmark interiors do. The 1-cell border stays open.
    for (std::size_t attempt = 0; attempt < 10000 && blocked < target; ++attempt) {
        std::size_t w;
        std::size_t h;
        if (rng.unit() < 0.4) {
            const std::size_t length = span / 3 + rng.below(std::max<std::size_t>(span / 3, 1));
            const std::size_t thickness = 2 + rng.below(3);
            if (rng.unit() < 0.5) {
                w = length;
                h = thickness;
            } else {
                w = thickness;
                h = length;
            }
        } else {
            w = 3 + rng.below(std::max<std::size_t>(width / 8, 1));
            h = 3 + rng.below(std::max<std::size_t>(height / 8, 1));
        }
        if (w + 2 >= width || h + 2 >= height) continue;
        const std::size_t x0 = 1 + rng.below(width - w - 2);
        const std::size_t y0 = 1 + rng.below(height - h - 2);
        for (std::size_t y = y0; y < y0 + h; ++y) {
            for (std::size_t x = x0; x < x0 + w; ++x) {
                if (m.passable[y * width + x]) {
                    m.passable[y * width + x] = 0;
                    ++blocked;
                }
            }
        }
    }
    return m;
}

GridMap crop(const GridMap& m, std::size_t x0, std::size_t y0, std::size_t width,
             std::size_t height) {
    GridMap out;
    out.width = std::min(width, m.width - x0);
    out.height = std::min(height, m.height - y0);
    out.neighborhood = m.neighborhood;
    out.passable.assign(out.width * out.height, 0);
    for (std::size_t y = 0; y < out.height; ++y) {
        for (std::size_t x = 0; x < out.width; ++x) {
            out.passable[y * out.width + x] = m.passable[(y0 + y) * m.width + (x0 + x)];
        }
    }
    return out;
}

} // namespace pathlab::testing
