#include "pathlab/search.hpp"

#include <algorithm>
#include <string>

namespace pathlab {

namespace {

// Pop order: smallest f, then largest g, then smallest node id.
struct WorseEntry {
    template <typename E>
    bool operator()(const E& a, const E& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.node > b.node;
    }
};

// Closed nodes are reopened only for improvements beyond the tolerance under
// which heuristics count as consistent. Closed-form heuristics like octile
// can undercut an edge weight by an ulp; reopening for that would recount
// expansions without moving any cost beyond rounding noise.
constexpr double kReopenSlack = 1e-9;

} // namespace

void AStarEngine::touch(NodeId v) {
    if (stamp_[v] != epoch_) {
        stamp_[v] = epoch_;
        g_[v] = kInf;
        parent_[v] = kNoNode;
        closed_[v] = 0;
    }
}

SearchResult AStarEngine::search(const WeightedGraph& g, NodeId start, NodeId goal,
                                 const Heuristic& h) {
    const std::size_t n = g.node_count();
    if (start >= n || goal >= n) {
        throw Error(Errc::node_out_of_range, "start or goal out of range");
    }
    if (h.node_count() != 0 && h.node_count() != n) {
        throw Error(Errc::graph_mismatch,
                    "heuristic was built for a graph of " + std::to_string(h.node_count()) +
                        " nodes, searching one of " + std::to_string(n));
    }

    if (g_.size() < n) {
        g_.resize(n);
        parent_.resize(n);
        closed_.resize(n);
        stamp_.resize(n, 0);
    }
    if (++epoch_ == 0) { // stamp wrap-around: invalidate everything once
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    heap_.clear();

    const WorseEntry worse;
    SearchResult result;
    const std::span<const double> weights = g.weights();

    touch(start);
    g_[start] = 0.0;
    heap_.push_back({h.estimate(start, goal), 0.0, start});

    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), worse);
        const Entry top = heap_.back();
        heap_.pop_back();

        const NodeId u = top.node;
        if (closed_[u] || top.g != g_[u]) continue; // stale entry
        closed_[u] = 1;
        ++result.expanded;

        if (u == goal) {
            result.cost = g_[u];
            std::vector<NodeId> path;
            for (NodeId v = goal; v != kNoNode; v = parent_[v]) path.push_back(v);
            std::reverse(path.begin(), path.end());
            result.path = std::move(path);
            return result;
        }

        for (const WeightedGraph::Arc& arc : g.neighbors(u)) {
            ++result.generated;
            const double nd = g_[u] + weights[arc.edge];
            touch(arc.to);
            if (nd < g_[arc.to]) {
                if (closed_[arc.to]) {
                    if (nd >= g_[arc.to] - kReopenSlack) continue;
                    // A genuinely inconsistent heuristic; reopen so the
                    // search stays optimal regardless.
                    ++result.reopened;
                    closed_[arc.to] = 0;
                }
                g_[arc.to] = nd;
                parent_[arc.to] = u;
                heap_.push_back({nd + h.estimate(arc.to, goal), nd, arc.to});
                std::push_heap(heap_.begin(), heap_.end(), worse);
            }
        }
    }
    return result; // open list exhausted: unreachable
}

SearchResult astar(const WeightedGraph& g, NodeId start, NodeId goal, const Heuristic& h) {
    AStarEngine engine;
    return engine.search(g, start, goal, h);
}

SearchResult dijkstra_baseline(const WeightedGraph& g, NodeId start, NodeId goal) {
    static const ZeroHeuristic zero;
    AStarEngine engine;
    return engine.search(g, start, goal, zero);
}

} // namespace pathlab
