#ifndef PATHLAB_GRID_HPP
#define PATHLAB_GRID_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pathlab/graph.hpp"
#include "pathlab/heuristics.hpp"

namespace pathlab {

enum class Neighborhood { Four, Eight };

std::string to_string(Neighborhood n);
Neighborhood neighborhood_from_string(std::string_view text);

// Parsed MovingAI grid. Cells are indexed row-major; (x, y) is column, row.
struct GridMap {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> passable;
    Neighborhood neighborhood = Neighborhood::Eight;

    bool is_passable(std::int64_t x, std::int64_t y) const {
        return x >= 0 && y >= 0 && x < static_cast<std::int64_t>(width) &&
               y < static_cast<std::int64_t>(height) &&
               passable[static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x)] != 0;
    }
};

struct MapOptions {
    bool swamp_passable = false; // 'S' cells walkable instead of blocked
    Neighborhood neighborhood = Neighborhood::Eight;
};

// MovingAI .map text: `type octile`, `height H`, `width W`, `map`, then H
// rows of W glyphs. `.`/`G` are passable, `@`/`O`/`T`/`S`/`W` blocked
// (`S` optionally passable); anything else is rejected.
GridMap parse_map(std::string_view text, const MapOptions& opts = {});

// Canonical .map text (`.`/`@` glyphs); parse(serialize(m)) preserves the
// passability matrix exactly.
std::string serialize_map(const GridMap& m);

// Graph view of a grid plus the cell<->node correspondence. Node ids number
// the passable cells in row-major order.
struct GridGraph {
    WeightedGraph graph;
    std::vector<GridCell> node_to_cell;
    std::vector<NodeId> cell_to_node; // kNoNode for blocked cells

    NodeId node_at(std::int64_t x, std::int64_t y, const GridMap& m) const {
        if (!m.is_passable(x, y)) return kNoNode;
        return cell_to_node[static_cast<std::size_t>(y) * m.width + static_cast<std::size_t>(x)];
    }
};

// Four: cardinal edges, weight 1. Eight: cardinals plus diagonals of weight
// sqrt(2); a diagonal requires both orthogonally adjacent cells passable
// (no corner cutting).
GridGraph grid_to_graph(const GridMap& m);

struct ScenarioEntry {
    int bucket = 0;
    std::string map_name;
    std::size_t width = 0;
    std::size_t height = 0;
    GridCell start;
    GridCell goal;
    double optimal_cost = 0.0;
};

struct Scenario {
    std::vector<ScenarioEntry> entries;
};

// MovingAI .scen text: `version 1` header, then one whitespace-separated
// entry per line: bucket map width height sx sy gx gy optimal.
Scenario parse_scenario(std::string_view text);

struct ScenarioMismatch {
    std::size_t entry_index = 0;
    double stated = 0.0;
    double computed = 0.0; // NaN when a cell is blocked or out of range
};

// Recomputes entry costs with Dijkstra and reports entries whose stated
// optimum differs by more than `tolerance`. `sample_limit` 0 checks all.
std::vector<ScenarioMismatch> validate_scenario(const GridMap& m, const GridGraph& gg,
                                                const Scenario& s, std::size_t sample_limit = 0,
                                                double tolerance = 1e-4);

} // namespace pathlab

#endif
