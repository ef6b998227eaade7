#ifndef PATHLAB_SEARCH_HPP
#define PATHLAB_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pathlab/graph.hpp"
#include "pathlab/heuristics.hpp"

namespace pathlab {

struct SearchResult {
    std::optional<std::vector<NodeId>> path; // absent when the goal is unreachable
    double cost = kInf;
    std::uint64_t expanded = 0;  // pops that passed the stale/closed check
    std::uint64_t generated = 0; // successor relaxations attempted
    std::uint64_t reopened = 0;  // closed nodes whose g improved (0 for consistent h)
};

// A* with lazy-deletion binary heap and a closed list. Ties on f are broken
// by larger g, remaining ties by smaller node id, so expansion counts are
// reproducible. Stale heap entries are skipped without being counted.
//
// One engine serves one search at a time; its scratch arrays are reused
// across searches on same-sized graphs without reallocation or O(V) clears.
class AStarEngine {
public:
    SearchResult search(const WeightedGraph& g, NodeId start, NodeId goal, const Heuristic& h);

private:
    struct Entry {
        double f;
        double g;
        NodeId node;
    };

    void touch(NodeId v);

    std::vector<Entry> heap_;
    std::vector<double> g_;
    std::vector<NodeId> parent_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint8_t> closed_;
    std::uint32_t epoch_ = 0;
};

SearchResult astar(const WeightedGraph& g, NodeId start, NodeId goal, const Heuristic& h);

// A* with the zero heuristic: the uninformed baseline and the cost oracle.
SearchResult dijkstra_baseline(const WeightedGraph& g, NodeId start, NodeId goal);

} // namespace pathlab

#endif
