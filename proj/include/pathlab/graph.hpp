#ifndef PATHLAB_GRAPH_HPP
#define PATHLAB_GRAPH_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "pathlab/error.hpp"

namespace pathlab {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One undirected edge. Weights are 64-bit floats; downstream code subtracts
// derived quantities from them, so integer weights would not survive.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    double weight = 0.0;
};

// Immutable non-negative edge-weighted undirected graph in adjacency form.
// Node ids are dense in [0, node_count). Neighbor lists are sorted by
// neighbor id so every traversal order is reproducible.
//
// Edge weights are additionally exposed as a flat per-edge array; algorithms
// that search under modified weights (e.g. the residual graphs of the
// embedding builder) pass their own array of the same length instead of
// copying the topology.
class WeightedGraph {
public:
    // Adjacency slot: target node plus the index of the underlying edge,
    // which is shared by both directions.
    struct Arc {
        NodeId to;
        std::uint32_t edge;
    };

    WeightedGraph() = default;

    // Validates endpoints, non-negativity and absence of self-loops; throws
    // Error{node_out_of_range | negative_weight | self_loop} on violation.
    WeightedGraph(std::size_t node_count, std::span<const Edge> edges);
    WeightedGraph(std::size_t node_count, const std::vector<Edge>& edges)
        : WeightedGraph(node_count, std::span<const Edge>(edges)) {}

    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::uint32_t index) const { return edges_[index]; }

    // Per-edge weights, aligned with edges().
    std::span<const double> weights() const { return weights_; }

    std::span<const Arc> neighbors(NodeId u) const {
        return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
    }

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<double> weights_;
    std::vector<std::size_t> offsets_;
    std::vector<Arc> arcs_;
};

// Single-source shortest-path tree. dist is +inf and parent kNoNode for
// nodes unreachable from the source; parent[source] is kNoNode as well.
struct ShortestPathTree {
    NodeId source = kNoNode;
    std::vector<double> dist;
    std::vector<NodeId> parent;
};

// Dijkstra with a binary heap and lazy deletion. The engine owns the heap
// and output buffers so repeated computations on one graph do not allocate.
class ShortestPathEngine {
public:
    // Distances under the graph's own weights.
    void compute(const WeightedGraph& g, NodeId source, ShortestPathTree& out);

    // Distances under caller-supplied weights (same length as g.edges()).
    void compute(const WeightedGraph& g, NodeId source, std::span<const double> weights,
                 ShortestPathTree& out);

private:
    std::vector<std::pair<double, NodeId>> heap_;
};

ShortestPathTree shortest_path_tree(const WeightedGraph& g, NodeId source);
ShortestPathTree shortest_path_tree(const WeightedGraph& g, NodeId source,
                                    std::span<const double> weights);

// Reachable node maximizing tree distance; ties go to the smallest node id.
// A tree over a single reachable node yields (source, 0).
std::pair<NodeId, double> farthest_node(const ShortestPathTree& tree);

} // namespace pathlab

#endif
