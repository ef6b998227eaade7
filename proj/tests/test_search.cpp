#include <doctest.h>

#include <memory>

#include "pathlab/bench.hpp"
#include "pathlab/search.hpp"
#include "support/mapgen.hpp"
#include "support/oracles.hpp"

using namespace pathlab;
using namespace pathlab::testing;

namespace {

double path_cost(const WeightedGraph& g, const std::vector<NodeId>& path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        double w = kInf;
        for (const auto& arc : g.neighbors(path[i - 1])) {
            if (arc.to == path[i]) w = std::min(w, g.weights()[arc.edge]);
        }
        total += w;
    }
    return total;
}

} // namespace

TEST_CASE("start equals goal") {
    const WeightedGraph g(2, std::vector<Edge>{{0, 1, 1.0}});
    const SearchResult r = dijkstra_baseline(g, 1, 1);
    REQUIRE(r.path.has_value());
    CHECK(*r.path == std::vector<NodeId>{1});
    CHECK(r.cost == 0.0);
    CHECK(r.expanded == 1); // the goal test happens at pop
    CHECK(r.generated == 0);
}

TEST_CASE("path graph with the zero heuristic") {
    const WeightedGraph g(3, std::vector<Edge>{{0, 1, 2.0}, {1, 2, 3.0}});
    const SearchResult r = dijkstra_baseline(g, 0, 2);
    REQUIRE(r.path.has_value());
    CHECK(r.cost == doctest::Approx(5.0));
    CHECK(*r.path == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("unreachable goal reports counters and no path") {
    const WeightedGraph g(4, std::vector<Edge>{{0, 1, 1.0}, {2, 3, 1.0}});
    const SearchResult r = dijkstra_baseline(g, 0, 3);
    CHECK(!r.path.has_value());
    CHECK(r.cost == kInf);
    CHECK(r.expanded >= 1);
}

TEST_CASE("an informed search expands no more than the uninformed one") {
    const GridMap m = open_grid(3, 3, Neighborhood::Four);
    const GridGraph gg = grid_to_graph(m);
    const NodeId start = gg.node_at(0, 0, m);
    const NodeId goal = gg.node_at(2, 2, m);

    const SearchResult blind = dijkstra_baseline(gg.graph, start, goal);
    CHECK(blind.cost == doctest::Approx(4.0));

    // A pivot at the goal makes the differential heuristic perfect.
    PivotTable t;
    t.node_count = gg.graph.node_count();
    t.pivots = {goal};
    t.dist = {bellman_ford(gg.graph, goal)};
    const DifferentialHeuristic perfect(std::make_shared<const PivotTable>(t), 1);

    const SearchResult informed = astar(gg.graph, start, goal, perfect);
    CHECK(informed.cost == doctest::Approx(4.0));
    CHECK(informed.expanded <= blind.expanded);
}

TEST_CASE("search results are deterministic") {
    SplitMix64 rng(7);
    const WeightedGraph g = random_connected_graph(80, 160, 0.1, 10.0, rng);
    AStarEngine engine;
    const ZeroHeuristic zero;
    const SearchResult a = engine.search(g, 3, 70, zero);
    const SearchResult b = engine.search(g, 3, 70, zero);
    CHECK(a.expanded == b.expanded);
    CHECK(a.generated == b.generated);
    CHECK(a.cost == b.cost);
    REQUIRE(a.path.has_value());
    CHECK(*a.path == *b.path);
}

TEST_CASE("optimality and no re-expansion under consistent heuristics") {
    SplitMix64 rng(99);
    for (int round = 0; round < 3; ++round) {
        const std::size_t n = 30 + rng.below(120);
        const WeightedGraph g = random_connected_graph(n, 2 * n, 0.1, 10.0, rng);

        EmbedConfig cfg;
        cfg.k_max = 4;
        cfg.seed = rng.next();
        auto embedding = std::make_shared<const Embedding>(build_embedding(g, cfg));
        auto pivots = std::make_shared<const PivotTable>(build_differential(g, 4, rng.next()));

        std::vector<std::shared_ptr<const Heuristic>> providers;
        providers.push_back(std::make_shared<ZeroHeuristic>());
        providers.push_back(std::make_shared<FastMapHeuristic>(embedding, embedding->k));
        providers.push_back(std::make_shared<DifferentialHeuristic>(pivots, 4));
        providers.push_back(max_combine({providers[1], providers[2]}));

        const auto dist = all_pairs(g);
        AStarEngine engine;
        for (int trial = 0; trial < 40; ++trial) {
            const NodeId s = static_cast<NodeId>(rng.below(n));
            const NodeId t = static_cast<NodeId>(rng.below(n));
            for (const auto& h : providers) {
                const SearchResult r = engine.search(g, s, t, *h);
                CHECK(r.cost == doctest::Approx(dist[s][t]).epsilon(1e-9));
                CHECK(r.reopened == 0);
                CHECK(r.expanded <= n); // each node at most once
                if (r.path) {
                    CHECK(r.path->front() == s);
                    CHECK(r.path->back() == t);
                    CHECK(path_cost(g, *r.path) == doctest::Approx(r.cost).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("invalid endpoints are rejected") {
    const WeightedGraph g(2, std::vector<Edge>{{0, 1, 1.0}});
    CHECK_THROWS_AS(dijkstra_baseline(g, 0, 5), Error);
}

TEST_CASE("a heuristic bound to another graph is rejected") {
    const WeightedGraph g(2, std::vector<Edge>{{0, 1, 1.0}});
    const WeightedGraph other(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}});
    const PivotTable t = build_differential(other, 1, 0);
    const DifferentialHeuristic h(std::make_shared<const PivotTable>(t), 1);
    CHECK_THROWS_AS(astar(g, 0, 1, h), Error);
}
