#include "pathlab/fastmap.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "pathlab/numio.hpp"

namespace pathlab {

FarthestPair get_farthest_pair(const WeightedGraph& g, std::span<const double> weights, int tau,
                               int restarts, SplitMix64& rng) {
    if (g.node_count() == 0) throw Error(Errc::empty_graph, "farthest pair of an empty graph");
    if (tau < 1 || restarts < 1) {
        throw Error(Errc::invalid_config, "tau and restarts must be at least 1");
    }

    ShortestPathEngine engine;
    ShortestPathTree sweep;

    NodeId best_a = kNoNode;
    NodeId best_b = kNoNode;
    NodeId best_root = kNoNode; // which endpoint the kept tree is rooted at
    double best_d = -1.0;
    ShortestPathTree best_tree;

    for (int r = 0; r < restarts; ++r) {
        // Sweep 1 roots at a random node and names the farthest node n_b;
        // each following sweep roots at the node assigned last and
        // reassigns the other endpoint.
        NodeId n_a = static_cast<NodeId>(rng.below(g.node_count()));
        engine.compute(g, n_a, weights, sweep);
        auto [first_far, first_d] = farthest_node(sweep);
        NodeId n_b = first_far;
        NodeId root = n_a;
        double d = first_d;

        for (int s = 2; s <= tau; ++s) {
            const NodeId next_root = root == n_a ? n_b : n_a;
            engine.compute(g, next_root, weights, sweep);
            auto [far, far_d] = farthest_node(sweep);
            if (next_root == n_b) {
                n_a = far;
            } else {
                n_b = far;
            }
            root = next_root;
            d = far_d;
        }

        const bool improves =
            d > best_d ||
            (d == best_d && std::pair(n_a, n_b) < std::pair(best_a, best_b));
        if (improves) {
            best_a = n_a;
            best_b = n_b;
            best_d = d;
            best_root = root;
            best_tree = sweep;
        }
    }

    FarthestPair result;
    result.n_a = best_a;
    result.n_b = best_b;
    if (best_root == best_a) {
        result.tree_a = std::move(best_tree);
        engine.compute(g, best_b, weights, result.tree_b);
    } else {
        result.tree_b = std::move(best_tree);
        engine.compute(g, best_a, weights, result.tree_a);
    }
    return result;
}

FarthestPair get_farthest_pair(const WeightedGraph& g, int tau, int restarts, SplitMix64& rng) {
    return get_farthest_pair(g, g.weights(), tau, restarts, rng);
}

Embedding build_embedding(const WeightedGraph& g, const EmbedConfig& cfg, EmbedTrace* trace) {
    if (cfg.k_max < 1 || cfg.tau < 1 || cfg.restarts < 1 ||
        (cfg.epsilon && !(*cfg.epsilon >= 0.0))) {
        throw Error(Errc::invalid_config, "embedding config requires k_max/tau/restarts >= 1 "
                                          "and epsilon >= 0");
    }
    if (g.node_count() == 0) throw Error(Errc::empty_graph, "cannot embed an empty graph");

    const std::size_t n = g.node_count();
    std::vector<double> working(g.weights().begin(), g.weights().end());
    SplitMix64 rng(cfg.seed);

    Embedding e;
    e.node_count = n;
    std::vector<std::vector<double>> columns;

    if (trace) {
        trace->weights.clear();
        trace->weights.push_back(working);
    }

    double cutoff = cfg.epsilon.value_or(0.0);
    for (int iter = 0; iter < cfg.k_max; ++iter) {
        FarthestPair pair = get_farthest_pair(g, working, cfg.tau, cfg.restarts, rng);
        const double d_ab = pair.tree_a.dist[pair.n_b];
        if (iter == 0 && !cfg.epsilon) cutoff = kRelativeEpsilon * d_ab;
        // A zero span means the working graph carries no distance information
        // at all, so the dimension is dropped no matter what the cutoff is.
        if (d_ab < cutoff || d_ab <= 0.0) break;

        std::vector<double> column(n, 0.0);
        for (NodeId v = 0; v < n; ++v) {
            const double d_av = pair.tree_a.dist[v];
            const double d_vb = pair.tree_b.dist[v];
            if (d_av == kInf || d_vb == kInf) continue; // unreachable from the pair
            column[v] = (d_av + d_ab - d_vb) / 2.0;
        }

        // The decrement |[p_u]_K - [p_v]_K| is evaluated in the cancellation
        // form |(d_au - d_av) + (d_vb - d_ub)| / 2: algebraically identical,
        // but edges on a shortest path between the pair come out exactly
        // zero instead of picking up rounding dust from the two separately
        // rounded coordinates.
        const auto& edges = g.edges();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const NodeId u = edges[i].u;
            const NodeId v = edges[i].v;
            double delta = 0.0;
            if (pair.tree_a.dist[u] != kInf && pair.tree_a.dist[v] != kInf) {
                delta = std::abs((pair.tree_a.dist[u] - pair.tree_a.dist[v]) +
                                 (pair.tree_b.dist[v] - pair.tree_b.dist[u])) /
                        2.0;
            }
            double residual = working[i] - delta;
            ++e.stats.edge_updates;
            if (residual < 0.0) {
                ++e.stats.clamp_count;
                if (residual < e.stats.min_pre_clamp) e.stats.min_pre_clamp = residual;
                residual = 0.0;
            }
            working[i] = residual;
        }

        e.dim_spans.push_back({pair.n_a, pair.n_b, d_ab});
        columns.push_back(std::move(column));
        if (trace) trace->weights.push_back(working);
    }

    e.k = static_cast<int>(columns.size());
    e.coords.resize(n * columns.size());
    for (NodeId v = 0; v < n; ++v) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            e.coords[v * columns.size() + j] = columns[j][v];
        }
    }
    return e;
}

namespace {

double parse_double_token(std::istream& in, const char* what) {
    std::string token;
    if (!(in >> token)) throw Error(Errc::malformed_artifact, std::string("missing ") + what);
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw Error(Errc::malformed_artifact, std::string("bad ") + what + ": " + token);
    }
}

std::uint64_t parse_u64_token(std::istream& in, const char* what) {
    std::string token;
    if (!(in >> token)) throw Error(Errc::malformed_artifact, std::string("missing ") + what);
    try {
        std::size_t used = 0;
        const std::uint64_t value = std::stoull(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw Error(Errc::malformed_artifact, std::string("bad ") + what + ": " + token);
    }
}

void expect_token(std::istream& in, const char* expected) {
    std::string token;
    if (!(in >> token) || token != expected) {
        throw Error(Errc::malformed_artifact,
                    std::string("expected token '") + expected + "', got '" + token + "'");
    }
}

} // namespace

void save_embedding(const Embedding& e, std::ostream& out) {
    out << "FASTMAP-EMBED v1\n";
    out << "nodes " << e.node_count << " dims " << e.k << "\n";
    for (const DimSpan& span : e.dim_spans) {
        out << "span " << span.n_a << " " << span.n_b << " " << fmt_g17(span.d_ab) << "\n";
    }
    for (NodeId v = 0; v < e.node_count; ++v) {
        for (int j = 0; j < e.k; ++j) {
            if (j) out << " ";
            out << fmt_g17(e.coord(v, j));
        }
        if (e.k) out << "\n";
    }
    if (!out) throw Error(Errc::io_error, "failed writing embedding");
}

Embedding load_embedding(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "FASTMAP-EMBED v1") {
        throw Error(Errc::malformed_artifact, "not a FASTMAP-EMBED v1 file");
    }
    Embedding e;
    expect_token(in, "nodes");
    e.node_count = static_cast<std::size_t>(parse_u64_token(in, "node count"));
    expect_token(in, "dims");
    e.k = static_cast<int>(parse_u64_token(in, "dimension count"));

    for (int j = 0; j < e.k; ++j) {
        expect_token(in, "span");
        DimSpan span;
        span.n_a = static_cast<NodeId>(parse_u64_token(in, "span endpoint"));
        span.n_b = static_cast<NodeId>(parse_u64_token(in, "span endpoint"));
        span.d_ab = parse_double_token(in, "span distance");
        if (span.n_a >= e.node_count || span.n_b >= e.node_count) {
            throw Error(Errc::malformed_artifact, "span endpoint out of range");
        }
        e.dim_spans.push_back(span);
    }

    e.coords.resize(e.node_count * static_cast<std::size_t>(e.k));
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
        e.coords[i] = parse_double_token(in, "coordinate");
    }
    return e;
}

} // namespace pathlab
