#include "pathlab/heuristics.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "pathlab/numio.hpp"
#include "pathlab/rng.hpp"

namespace pathlab {

PivotTable build_differential(const WeightedGraph& g, std::size_t pivot_count,
                              std::uint64_t seed) {
    const std::size_t n = g.node_count();
    if (n == 0) throw Error(Errc::empty_graph, "cannot place pivots in an empty graph");
    if (pivot_count < 1) throw Error(Errc::invalid_config, "pivot_count must be at least 1");
    if (pivot_count > n) {
        throw Error(Errc::too_many_pivots, "requested " + std::to_string(pivot_count) +
                                               " pivots for " + std::to_string(n) + " nodes");
    }

    SplitMix64 rng(seed);
    ShortestPathEngine engine;
    ShortestPathTree tree;

    PivotTable table;
    table.node_count = n;
    table.pivots.reserve(pivot_count);
    table.dist.reserve(pivot_count);

    const NodeId seed_node = static_cast<NodeId>(rng.below(n));
    engine.compute(g, seed_node, tree);
    NodeId pivot = farthest_node(tree).first;

    std::vector<char> is_pivot(n, 0);
    std::vector<double> min_dist(n, kInf);

    for (std::size_t placed = 0;; ++placed) {
        is_pivot[pivot] = 1;
        table.pivots.push_back(pivot);
        engine.compute(g, pivot, tree);
        table.dist.push_back(tree.dist);
        if (placed + 1 == pivot_count) break;

        for (NodeId v = 0; v < n; ++v) min_dist[v] = std::min(min_dist[v], tree.dist[v]);

        // Next pivot: max-min distance to the chosen set; unreachable nodes
        // (infinite min distance) win first, ties go to the smallest id.
        NodeId best = kNoNode;
        double best_dist = -1.0;
        for (NodeId v = 0; v < n; ++v) {
            if (is_pivot[v]) continue;
            if (best == kNoNode || min_dist[v] > best_dist) {
                best = v;
                best_dist = min_dist[v];
            }
        }
        pivot = best;
    }
    return table;
}

double differential_heuristic(const PivotTable& t, NodeId a, NodeId b,
                              std::size_t pivots_used) {
    double best = 0.0;
    for (std::size_t p = 0; p < pivots_used; ++p) {
        const double da = t.dist[p][a];
        const double db = t.dist[p][b];
        // Two unreachable endpoints say nothing about d(a,b); one says the
        // endpoints lie in different components.
        if (da == kInf && db == kInf) continue;
        best = std::max(best, std::abs(da - db));
    }
    return best;
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

void save_pivot_table(const PivotTable& t, std::ostream& out) {
    out << "DIFFH v1\n";
    out << "nodes " << t.node_count << " pivots " << t.pivots.size() << "\n";
    for (NodeId p : t.pivots) out << "pivot " << p << "\n";
    for (const auto& row : t.dist) {
        for (std::size_t v = 0; v < row.size(); ++v) {
            if (v) out << " ";
            out << fmt_g17(row[v]);
        }
        out << "\n";
    }
    if (!out) throw Error(Errc::io_error, "failed writing pivot table");
}

PivotTable load_pivot_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "DIFFH v1") {
        throw Error(Errc::malformed_artifact, "not a DIFFH v1 file");
    }
    PivotTable t;
    expect_token(in, "nodes");
    t.node_count = static_cast<std::size_t>(parse_u64_token(in, "node count"));
    expect_token(in, "pivots");
    const std::size_t pivot_count = static_cast<std::size_t>(parse_u64_token(in, "pivot count"));

    for (std::size_t p = 0; p < pivot_count; ++p) {
        expect_token(in, "pivot");
        const NodeId id = static_cast<NodeId>(parse_u64_token(in, "pivot id"));
        if (id >= t.node_count) throw Error(Errc::malformed_artifact, "pivot id out of range");
        t.pivots.push_back(id);
    }
    for (std::size_t p = 0; p < pivot_count; ++p) {
        std::vector<double> row(t.node_count);
        for (std::size_t v = 0; v < t.node_count; ++v) {
            row[v] = parse_double_token(in, "distance");
        }
        t.dist.push_back(std::move(row));
    }
    return t;
}

FastMapHeuristic::FastMapHeuristic(std::shared_ptr<const Embedding> embedding, int dims)
    : embedding_(std::move(embedding)), dims_(dims) {
    if (!embedding_ || dims_ < 0 || dims_ > embedding_->k) {
        throw Error(Errc::artifact_mismatch,
                    "embedding provides " + std::to_string(embedding_ ? embedding_->k : 0) +
                        " dimensions, " + std::to_string(dims_) + " requested");
    }
}

DifferentialHeuristic::DifferentialHeuristic(std::shared_ptr<const PivotTable> table,
                                             std::size_t pivots_used)
    : table_(std::move(table)), pivots_used_(pivots_used) {
    if (!table_ || pivots_used_ > table_->pivots.size()) {
        throw Error(Errc::artifact_mismatch,
                    "pivot table provides " +
                        std::to_string(table_ ? table_->pivots.size() : 0) + " pivots, " +
                        std::to_string(pivots_used_) + " requested");
    }
}

MaxHeuristic::MaxHeuristic(std::vector<std::shared_ptr<const Heuristic>> parts)
    : parts_(std::move(parts)) {}

std::size_t MaxHeuristic::memory_units() const {
    std::size_t total = 0;
    for (const auto& part : parts_) total += part->memory_units();
    return total;
}

std::size_t MaxHeuristic::node_count() const {
    for (const auto& part : parts_) {
        if (part->node_count() != 0) return part->node_count();
    }
    return 0;
}

std::string MaxHeuristic::name() const {
    std::string joined;
    for (const auto& part : parts_) {
        if (!joined.empty()) joined += "+";
        joined += part->name();
    }
    return joined;
}

std::shared_ptr<const Heuristic>
max_combine(std::vector<std::shared_ptr<const Heuristic>> parts) {
    if (parts.empty()) throw Error(Errc::invalid_config, "max_combine needs at least one part");
    std::size_t bound = 0;
    for (const auto& part : parts) {
        const std::size_t nc = part->node_count();
        if (nc == 0) continue;
        if (bound == 0) {
            bound = nc;
        } else if (nc != bound) {
            throw Error(Errc::graph_mismatch, "combined heuristics were built for graphs of " +
                                                  std::to_string(bound) + " and " +
                                                  std::to_string(nc) + " nodes");
        }
    }
    return std::make_shared<MaxHeuristic>(std::move(parts));
}

} // namespace pathlab
