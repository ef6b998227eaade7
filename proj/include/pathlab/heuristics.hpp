#ifndef PATHLAB_HEURISTICS_HPP
#define PATHLAB_HEURISTICS_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "pathlab/fastmap.hpp"
#include "pathlab/graph.hpp"

namespace pathlab {

// Diagonal step cost on 8-neighbor grids. Shared by the grid conversion and
// the octile formula so the heuristic stays consistent with the edge weights.
inline const double kSqrt2 = std::sqrt(2.0);

struct GridCell {
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend bool operator==(const GridCell&, const GridCell&) = default;
};

// Closed-form lower bound on 8-neighbor grid distance:
// max(dx,dy) + (sqrt(2)-1) * min(dx,dy).
inline double octile_heuristic(GridCell a, GridCell b) {
    const double dx = std::abs(static_cast<double>(a.x) - b.x);
    const double dy = std::abs(static_cast<double>(a.y) - b.y);
    return std::max(dx, dy) + (kSqrt2 - 1.0) * std::min(dx, dy);
}

// |x1-x2| + |y1-y2|; admissible only for 4-neighbor grids.
inline double manhattan_heuristic(GridCell a, GridCell b) {
    return std::abs(static_cast<double>(a.x) - b.x) + std::abs(static_cast<double>(a.y) - b.y);
}

// Precomputed true distances from a set of pivot nodes to every node.
struct PivotTable {
    std::size_t node_count = 0;
    std::vector<NodeId> pivots;
    std::vector<std::vector<double>> dist; // dist[p][v], exact Dijkstra rows
};

// Greedy farthest-first pivot placement: the first pivot is the farthest node
// from a random seed node, each next one maximizes the minimum distance to
// the pivots chosen so far (ties: smallest node id).
PivotTable build_differential(const WeightedGraph& g, std::size_t pivot_count,
                              std::uint64_t seed);

// max over the first `pivots_used` pivots of |d(a,p) - d(p,b)|.
double differential_heuristic(const PivotTable& t, NodeId a, NodeId b, std::size_t pivots_used);
inline double differential_heuristic(const PivotTable& t, NodeId a, NodeId b) {
    return differential_heuristic(t, a, b, t.pivots.size());
}

// Text persistence ("DIFFH v1"); distance rows round-trip exactly.
void save_pivot_table(const PivotTable& t, std::ostream& out);
PivotTable load_pivot_table(std::istream& in);

// Uniform evaluation interface the search engine works against. Estimates
// must be admissible and consistent for the graph the provider was built
// for, and evaluation must not allocate (it sits on the A* hot path).
class Heuristic {
public:
    virtual ~Heuristic() = default;

    virtual double estimate(NodeId from, NodeId to) const = 0;

    // Stored reals per node, the unit of the equal-memory comparisons.
    virtual std::size_t memory_units() const = 0;

    // Node count of the graph the provider is bound to; 0 when the provider
    // works on any graph (e.g. the zero heuristic).
    virtual std::size_t node_count() const = 0;

    virtual std::string name() const = 0;
};

class ZeroHeuristic final : public Heuristic {
public:
    double estimate(NodeId, NodeId) const override { return 0.0; }
    std::size_t memory_units() const override { return 0; }
    std::size_t node_count() const override { return 0; }
    std::string name() const override { return "ZERO"; }
};

class OctileHeuristic final : public Heuristic {
public:
    explicit OctileHeuristic(std::shared_ptr<const std::vector<GridCell>> cells)
        : cells_(std::move(cells)) {}

    double estimate(NodeId from, NodeId to) const override {
        return octile_heuristic((*cells_)[from], (*cells_)[to]);
    }
    std::size_t memory_units() const override { return 0; }
    std::size_t node_count() const override { return cells_->size(); }
    std::string name() const override { return "OCT"; }

private:
    std::shared_ptr<const std::vector<GridCell>> cells_;
};

class ManhattanHeuristic final : public Heuristic {
public:
    explicit ManhattanHeuristic(std::shared_ptr<const std::vector<GridCell>> cells)
        : cells_(std::move(cells)) {}

    double estimate(NodeId from, NodeId to) const override {
        return manhattan_heuristic((*cells_)[from], (*cells_)[to]);
    }
    std::size_t memory_units() const override { return 0; }
    std::size_t node_count() const override { return cells_->size(); }
    std::string name() const override { return "MAN"; }

private:
    std::shared_ptr<const std::vector<GridCell>> cells_;
};

// L1 distance over the first `dims` embedding coordinates. `dims` below the
// embedding's dimensionality evaluates a prefix, which equals an embedding
// built with that k_max and the same seed.
class FastMapHeuristic final : public Heuristic {
public:
    FastMapHeuristic(std::shared_ptr<const Embedding> embedding, int dims);

    double estimate(NodeId from, NodeId to) const override {
        return fastmap_heuristic(*embedding_, from, to, dims_);
    }
    std::size_t memory_units() const override { return static_cast<std::size_t>(dims_); }
    std::size_t node_count() const override { return embedding_->node_count; }
    std::string name() const override { return "FM(" + std::to_string(dims_) + ")"; }

private:
    std::shared_ptr<const Embedding> embedding_;
    int dims_;
};

class DifferentialHeuristic final : public Heuristic {
public:
    DifferentialHeuristic(std::shared_ptr<const PivotTable> table, std::size_t pivots_used);

    double estimate(NodeId from, NodeId to) const override {
        return differential_heuristic(*table_, from, to, pivots_used_);
    }
    std::size_t memory_units() const override { return pivots_used_; }
    std::size_t node_count() const override { return table_->node_count; }
    std::string name() const override { return "DH(" + std::to_string(pivots_used_) + ")"; }

private:
    std::shared_ptr<const PivotTable> table_;
    std::size_t pivots_used_;
};

// Pointwise maximum of component heuristics. The maximum of consistent
// heuristics is consistent, so this is safe to hand to the search engine.
class MaxHeuristic final : public Heuristic {
public:
    explicit MaxHeuristic(std::vector<std::shared_ptr<const Heuristic>> parts);

    double estimate(NodeId from, NodeId to) const override {
        double best = 0.0;
        for (const auto& part : parts_) best = std::max(best, part->estimate(from, to));
        return best;
    }
    std::size_t memory_units() const override;
    std::size_t node_count() const override;
    std::string name() const override;

private:
    std::vector<std::shared_ptr<const Heuristic>> parts_;
};

// Combines providers built for the same graph; throws Error{graph_mismatch}
// when their bound node counts disagree.
std::shared_ptr<const Heuristic>
max_combine(std::vector<std::shared_ptr<const Heuristic>> parts);

} // namespace pathlab

#endif
