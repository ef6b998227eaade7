#ifndef PATHLAB_FASTMAP_HPP
#define PATHLAB_FASTMAP_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pathlab/graph.hpp"
#include "pathlab/rng.hpp"

namespace pathlab {

class SplitMix64;

// Parameters of the embedding builder. `epsilon` is the absolute span cutoff:
// an iteration whose farthest-pair distance falls below it stops the build
// before emitting the dimension. When unset, the cutoff defaults to
// kRelativeEpsilon times the first dimension's span, which scales across maps
// of very different diameters.
struct EmbedConfig {
    int k_max = 10;
    std::optional<double> epsilon;
    int tau = 10;      // farthest-pair sweeps per restart
    int restarts = 10; // random restarts of the sweep process
    std::uint64_t seed = 0;
};

inline constexpr double kRelativeEpsilon = 1e-4;

// Farthest pair endpoints and span of one embedding dimension.
struct DimSpan {
    NodeId n_a = kNoNode;
    NodeId n_b = kNoNode;
    double d_ab = 0.0;
};

// Residual-weight bookkeeping of a build. In exact arithmetic residuals never
// go negative; rounding can leave values a few ulps below zero, which are
// clamped. The counters let callers verify that clamping stayed in
// rounding-noise territory.
struct EmbedStats {
    std::uint64_t edge_updates = 0;
    std::uint64_t clamp_count = 0;
    double min_pre_clamp = 0.0; // most negative residual seen before clamping
};

// K-dimensional coordinates for every node, stored node-major.
struct Embedding {
    std::size_t node_count = 0;
    int k = 0;
    std::vector<double> coords;
    std::vector<DimSpan> dim_spans;
    EmbedStats stats;

    double coord(NodeId v, int dim) const { return coords[v * static_cast<std::size_t>(k) + dim]; }
};

// Edge-weight snapshots taken around each emitted dimension, for callers that
// re-run searches on the intermediate residual graphs. weights[i] holds the
// weights the (i+1)-th iteration ran under; weights[k] is the final residual.
struct EmbedTrace {
    std::vector<std::vector<double>> weights;
};

struct FarthestPair {
    NodeId n_a = kNoNode;
    NodeId n_b = kNoNode;
    ShortestPathTree tree_a; // rooted at n_a
    ShortestPathTree tree_b; // rooted at n_b
};

// Alternating farthest-node sweeps from a random start, restarted several
// times; keeps the pair with the largest distance (ties: lexicographically
// smallest pair). The returned trees are rooted at the winning pair, so the
// caller gets all node-to-pair distances for free.
FarthestPair get_farthest_pair(const WeightedGraph& g, std::span<const double> weights, int tau,
                               int restarts, SplitMix64& rng);
FarthestPair get_farthest_pair(const WeightedGraph& g, int tau, int restarts, SplitMix64& rng);

// Iterative farthest-pair projection: each dimension assigns
// (d_av + d_ab - d_vb) / 2 to node v and subtracts per-edge coordinate
// differences from the working weights before the next iteration. Nodes the
// current pair cannot reach get coordinate 0 for that dimension.
Embedding build_embedding(const WeightedGraph& g, const EmbedConfig& cfg,
                          EmbedTrace* trace = nullptr);

// L1 distance between the first `dims` coordinates of x and g.
inline double fastmap_heuristic(const Embedding& e, NodeId x, NodeId g, int dims) {
    const double* px = e.coords.data() + x * static_cast<std::size_t>(e.k);
    const double* pg = e.coords.data() + g * static_cast<std::size_t>(e.k);
    double h = 0.0;
    for (int j = 0; j < dims; ++j) h += std::abs(px[j] - pg[j]);
    return h;
}

inline double fastmap_heuristic(const Embedding& e, NodeId x, NodeId g) {
    return fastmap_heuristic(e, x, g, e.k);
}

// Text persistence ("FASTMAP-EMBED v1"); coordinates round-trip exactly.
void save_embedding(const Embedding& e, std::ostream& out);
Embedding load_embedding(std::istream& in);

} // namespace pathlab

#endif
