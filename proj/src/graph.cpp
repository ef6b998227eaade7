#include "pathlab/graph.hpp"

#include <algorithm>
#include <string>

namespace pathlab {

WeightedGraph::WeightedGraph(std::size_t node_count, std::span<const Edge> edges)
    : node_count_(node_count) {
    edges_.assign(edges.begin(), edges.end());
    weights_.reserve(edges_.size());
    std::vector<std::size_t> degree(node_count_ + 1, 0);

    for (const Edge& e : edges_) {
        if (e.u >= node_count_ || e.v >= node_count_) {
            throw Error(Errc::node_out_of_range,
                        "edge endpoint out of range: (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") with " + std::to_string(node_count_) +
                            " nodes");
        }
        if (e.u == e.v) {
            throw Error(Errc::self_loop, "self-loop at node " + std::to_string(e.u));
        }
        if (!(e.weight >= 0.0)) {
            throw Error(Errc::negative_weight,
                        "negative weight on edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ")");
        }
        weights_.push_back(e.weight);
        ++degree[e.u];
        ++degree[e.v];
    }

    offsets_.assign(node_count_ + 1, 0);
    for (std::size_t n = 0; n < node_count_; ++n) offsets_[n + 1] = offsets_[n] + degree[n];
    arcs_.resize(offsets_[node_count_]);

    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        arcs_[cursor[e.u]++] = {e.v, i};
        arcs_[cursor[e.v]++] = {e.u, i};
    }
    for (std::size_t n = 0; n < node_count_; ++n) {
        std::sort(arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[n]),
                  arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[n + 1]),
                  [](const Arc& a, const Arc& b) {
                      return a.to != b.to ? a.to < b.to : a.edge < b.edge;
                  });
    }
}

void ShortestPathEngine::compute(const WeightedGraph& g, NodeId source, ShortestPathTree& out) {
    compute(g, source, g.weights(), out);
}

void ShortestPathEngine::compute(const WeightedGraph& g, NodeId source,
                                 std::span<const double> weights, ShortestPathTree& out) {
    const std::size_t n = g.node_count();
    if (source >= n) {
        throw Error(Errc::node_out_of_range, "source " + std::to_string(source) + " out of range");
    }

    out.source = source;
    out.dist.assign(n, kInf);
    out.parent.assign(n, kNoNode);
    out.dist[source] = 0.0;

    heap_.clear();
    auto worse = [](const std::pair<double, NodeId>& a, const std::pair<double, NodeId>& b) {
        return a.first != b.first ? a.first > b.first : a.second > b.second;
    };
    heap_.emplace_back(0.0, source);

    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), worse);
        auto [d, u] = heap_.back();
        heap_.pop_back();
        if (d != out.dist[u]) continue; // stale entry

        for (const WeightedGraph::Arc& arc : g.neighbors(u)) {
            const double nd = d + weights[arc.edge];
            if (nd < out.dist[arc.to]) {
                out.dist[arc.to] = nd;
                out.parent[arc.to] = u;
                heap_.emplace_back(nd, arc.to);
                std::push_heap(heap_.begin(), heap_.end(), worse);
            }
        }
    }
}

ShortestPathTree shortest_path_tree(const WeightedGraph& g, NodeId source) {
    return shortest_path_tree(g, source, g.weights());
}

ShortestPathTree shortest_path_tree(const WeightedGraph& g, NodeId source,
                                    std::span<const double> weights) {
    ShortestPathEngine engine;
    ShortestPathTree tree;
    engine.compute(g, source, weights, tree);
    return tree;
}

std::pair<NodeId, double> farthest_node(const ShortestPathTree& tree) {
    // Ascending scan with strict improvement keeps the smallest id on ties.
    NodeId best = tree.source;
    double best_dist = -1.0;
    for (NodeId v = 0; v < tree.dist.size(); ++v) {
        const double d = tree.dist[v];
        if (d != kInf && d > best_dist) {
            best = v;
            best_dist = d;
        }
    }
    return {best, best_dist < 0.0 ? 0.0 : best_dist};
}

} // namespace pathlab
