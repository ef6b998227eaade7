// pathlab - build FastMap embeddings and pivot tables for grid maps, answer
// shortest-path queries with them, and run the benchmark protocol.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pathlab/bench.hpp"
#include "pathlab/fastmap.hpp"
#include "pathlab/grid.hpp"
#include "pathlab/heuristics.hpp"
#include "pathlab/numio.hpp"
#include "pathlab/search.hpp"

namespace {

using namespace pathlab;

constexpr int kExitError = 1;
constexpr int kExitUnreachable = 2;
constexpr int kExitScenMismatch = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct MapArgs {
    std::string path;
    std::string neighborhood = "eight";
    bool swamp_passable = false;

    void attach(CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--map", path, "MovingAI .map file");
        if (required) opt->required();
        cmd->add_option("--neighborhood", neighborhood, "Grid connectivity: four | eight")
            ->check(CLI::IsMember({"four", "eight"}));
        cmd->add_flag("--swamp-passable", swamp_passable, "Treat 'S' cells as walkable");
    }

    MapOptions options() const {
        MapOptions opts;
        opts.neighborhood = neighborhood_from_string(neighborhood);
        opts.swamp_passable = swamp_passable;
        return opts;
    }

    GridMap load() const { return parse_map(read_file(path), options()); }
};

GridCell parse_cell(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos) {
        throw Error(Errc::invalid_config, "cell must be 'x,y', got '" + text + "'");
    }
    try {
        GridCell cell;
        cell.x = std::stoi(text.substr(0, comma));
        cell.y = std::stoi(text.substr(comma + 1));
        return cell;
    } catch (const std::exception&) {
        throw Error(Errc::invalid_config, "cell must be 'x,y', got '" + text + "'");
    }
}

int run_embed(const MapArgs& map_args, int k_max, std::optional<double> epsilon, int tau,
              int restarts, std::uint64_t seed, const std::string& out_path) {
    const GridMap map = map_args.load();
    const GridGraph gg = grid_to_graph(map);

    EmbedConfig cfg;
    cfg.k_max = k_max;
    cfg.epsilon = epsilon;
    cfg.tau = tau;
    cfg.restarts = restarts;
    cfg.seed = seed;
    const Embedding e = build_embedding(gg.graph, cfg);

    std::cout << "nodes " << gg.graph.node_count() << ", edges " << gg.graph.edge_count()
              << ", dimensions " << e.k << "\n";
    std::cout << "farthest-pair distance per dimension:";
    for (const DimSpan& span : e.dim_spans) std::cout << " " << span.d_ab;
    std::cout << "\n";

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write " + out_path);
    save_embedding(e, out);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_pivots(const MapArgs& map_args, std::size_t pivot_count, std::uint64_t seed,
               const std::string& out_path) {
    const GridMap map = map_args.load();
    const GridGraph gg = grid_to_graph(map);
    const PivotTable table = build_differential(gg.graph, pivot_count, seed);

    std::cout << "nodes " << gg.graph.node_count() << ", pivots " << table.pivots.size() << ":";
    for (NodeId p : table.pivots) {
        const GridCell c = gg.node_to_cell[p];
        std::cout << " (" << c.x << "," << c.y << ")";
    }
    std::cout << "\n";

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write " + out_path);
    save_pivot_table(table, out);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_solve(const MapArgs& map_args, const std::string& spec_text,
              const std::string& embedding_path, const std::string& pivot_path,
              const std::string& start_text, const std::string& goal_text) {
    const GridMap map = map_args.load();
    const GridGraph gg = grid_to_graph(map);

    ProviderContext ctx;
    ctx.neighborhood = map.neighborhood;
    ctx.cells = std::make_shared<const std::vector<GridCell>>(gg.node_to_cell);
    if (!embedding_path.empty()) {
        std::ifstream in(embedding_path, std::ios::binary);
        if (!in) throw Error(Errc::io_error, "cannot open " + embedding_path);
        auto embedding = std::make_shared<Embedding>(load_embedding(in));
        if (embedding->node_count != gg.graph.node_count()) {
            throw Error(Errc::artifact_mismatch,
                        "embedding has " + std::to_string(embedding->node_count) +
                            " nodes, map graph has " + std::to_string(gg.graph.node_count()));
        }
        ctx.embedding = std::move(embedding);
    }
    if (!pivot_path.empty()) {
        std::ifstream in(pivot_path, std::ios::binary);
        if (!in) throw Error(Errc::io_error, "cannot open " + pivot_path);
        auto table = std::make_shared<PivotTable>(load_pivot_table(in));
        if (table->node_count != gg.graph.node_count()) {
            throw Error(Errc::artifact_mismatch,
                        "pivot table has " + std::to_string(table->node_count) +
                            " nodes, map graph has " + std::to_string(gg.graph.node_count()));
        }
        ctx.pivots = std::move(table);
    }

    const GridCell start = parse_cell(start_text);
    const GridCell goal = parse_cell(goal_text);
    const NodeId start_node = gg.node_at(start.x, start.y, map);
    const NodeId goal_node = gg.node_at(goal.x, goal.y, map);
    if (start_node == kNoNode || goal_node == kNoNode) {
        throw Error(Errc::cell_blocked, "start or goal cell is blocked or out of range");
    }

    const auto provider = make_provider(parse_heuristic_spec(spec_text), ctx);
    const SearchResult result = astar(gg.graph, start_node, goal_node, *provider);

    std::cout << "expanded " << result.expanded << ", generated " << result.generated << "\n";
    if (!result.path) {
        std::cout << "unreachable\n";
        return kExitUnreachable;
    }
    std::cout << "cost " << fmt_g17(result.cost) << "\n";
    std::cout << "path";
    for (NodeId v : *result.path) {
        const GridCell c = gg.node_to_cell[v];
        std::cout << " (" << c.x << "," << c.y << ")";
    }
    std::cout << "\n";
    return 0;
}

int run_bench_cmd(const std::vector<std::string>& map_paths, const MapArgs& map_args,
                  BenchOptions opt, const std::string& out_path) {
    for (const std::string& path : map_paths) {
        const GridMap map = parse_map(read_file(path), map_args.options());
        const BenchReport report = run_bench(map, opt);

        std::cout << "== " << path << " ==\n";
        std::cout << "neighborhood " << to_string(map.neighborhood) << ", swamp "
                  << (map_args.swamp_passable ? "passable" : "blocked") << "\n";
        std::cout << summary_text(report);
        if (!out_path.empty()) {
            std::string csv_path = out_path;
            if (map_paths.size() > 1) {
                const std::filesystem::path stem = std::filesystem::path(path).stem();
                csv_path += "." + stem.string() + ".csv";
            }
            std::ofstream out(csv_path, std::ios::binary);
            if (!out) throw Error(Errc::io_error, "cannot write " + csv_path);
            write_csv(report, out);
            std::cout << "wrote " << csv_path << "\n";
        }
    }
    return 0;
}

int run_validate(const MapArgs& map_args, const std::string& scen_path, std::size_t sample) {
    const GridMap map = map_args.load();
    const GridGraph gg = grid_to_graph(map);
    const Scenario scen = parse_scenario(read_file(scen_path));
    const auto mismatches = validate_scenario(map, gg, scen, sample);

    const std::size_t checked =
        sample == 0 ? scen.entries.size() : std::min(sample, scen.entries.size());
    std::cout << "checked " << checked << " of " << scen.entries.size() << " entries, "
              << mismatches.size() << " mismatches\n";
    for (const ScenarioMismatch& mm : mismatches) {
        const ScenarioEntry& e = scen.entries[mm.entry_index];
        std::cout << "entry " << mm.entry_index << " (" << e.start.x << "," << e.start.y
                  << ")->(" << e.goal.x << "," << e.goal.y << "): stated " << fmt_g17(mm.stated)
                  << ", computed " << fmt_g17(mm.computed) << "\n";
    }
    return mismatches.empty() ? 0 : kExitScenMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FastMap embeddings, differential heuristics and A* benchmarks "
                 "for grid maps"};
    app.require_subcommand(1);

    // embed
    auto* embed = app.add_subcommand("embed", "Build and save a FastMap embedding");
    MapArgs embed_map;
    embed_map.attach(embed);
    int kmax = 10;
    double epsilon_value = -1.0;
    int tau = 10;
    int restarts = 10;
    std::uint64_t seed = 0;
    std::string out_path;
    embed->add_option("--kmax", kmax, "Maximum number of dimensions")->check(CLI::PositiveNumber);
    auto* eps_opt = embed->add_option("--epsilon", epsilon_value,
                                      "Absolute span cutoff (default: 1e-4 of the first span)");
    embed->add_option("--tau", tau, "Farthest-pair sweeps per restart");
    embed->add_option("--restarts", restarts, "Farthest-pair restarts");
    embed->add_option("--seed", seed, "RNG seed");
    embed->add_option("--out", out_path, "Output embedding file")->required();

    // pivots
    auto* pivots = app.add_subcommand("pivots", "Build and save a differential pivot table");
    MapArgs pivots_map;
    pivots_map.attach(pivots);
    std::size_t pivot_count = 10;
    std::uint64_t pivots_seed = 0;
    std::string pivots_out;
    pivots->add_option("--pivots", pivot_count, "Number of pivots")->required();
    pivots->add_option("--seed", pivots_seed, "RNG seed");
    pivots->add_option("--out", pivots_out, "Output pivot table file")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Answer one shortest-path query");
    MapArgs solve_map;
    solve_map.attach(solve);
    std::string solve_spec = "ZERO";
    std::string solve_embedding;
    std::string solve_pivots;
    std::string start_text;
    std::string goal_text;
    solve->add_option("--heuristic", solve_spec,
                      "Heuristic spec: ZERO | OCT | MAN | FM(k) | DH(p) | MAX(spec,spec)");
    solve->add_option("--embedding", solve_embedding, "Embedding file for FM specs");
    solve->add_option("--pivot-table", solve_pivots, "Pivot table file for DH specs");
    solve->add_option("--start", start_text, "Start cell as x,y")->required();
    solve->add_option("--goal", goal_text, "Goal cell as x,y")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Run the benchmark protocol");
    std::vector<std::string> bench_maps;
    MapArgs bench_map_args;
    bench->add_option("--map", bench_maps, "MovingAI .map file(s)")->required();
    bench->add_option("--neighborhood", bench_map_args.neighborhood,
                      "Grid connectivity: four | eight")
        ->check(CLI::IsMember({"four", "eight"}));
    bench->add_flag("--swamp-passable", bench_map_args.swamp_passable,
                    "Treat 'S' cells as walkable");
    BenchOptions bench_opt;
    double bench_epsilon = -1.0;
    std::string bench_out;
    bench->add_option("--heuristic", bench_opt.heuristic_specs,
                      "Heuristic spec (repeatable)")
        ->required();
    bench->add_option("--instances", bench_opt.instances, "Random instances per map");
    bench->add_option("--seed", bench_opt.seed, "RNG seed");
    auto* bench_eps_opt = bench->add_option("--epsilon", bench_epsilon, "Embedding span cutoff");
    bench->add_option("--tau", bench_opt.tau, "Farthest-pair sweeps per restart");
    bench->add_option("--restarts", bench_opt.restarts, "Farthest-pair restarts");
    bench->add_option("--threads", bench_opt.threads,
                      "Worker threads (default: PATHLAB_THREADS or hardware)");
    bench->add_option("--out", bench_out, "CSV output path");

    // validate-scen
    auto* validate = app.add_subcommand("validate-scen",
                                        "Check scenario optimal costs against Dijkstra");
    MapArgs validate_map;
    validate_map.attach(validate);
    std::string scen_path;
    std::size_t sample = 0;
    validate->add_option("--scen", scen_path, "MovingAI .scen file")->required();
    validate->add_option("--sample", sample, "Check only the first N entries (0 = all)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (embed->parsed()) {
            std::optional<double> epsilon;
            if (eps_opt->count() > 0) epsilon = epsilon_value;
            return run_embed(embed_map, kmax, epsilon, tau, restarts, seed, out_path);
        }
        if (pivots->parsed()) {
            return run_pivots(pivots_map, pivot_count, pivots_seed, pivots_out);
        }
        if (solve->parsed()) {
            return run_solve(solve_map, solve_spec, solve_embedding, solve_pivots, start_text,
                             goal_text);
        }
        if (bench->parsed()) {
            if (bench_eps_opt->count() > 0) bench_opt.epsilon = bench_epsilon;
            return run_bench_cmd(bench_maps, bench_map_args, bench_opt, bench_out);
        }
        if (validate->parsed()) {
            return run_validate(validate_map, scen_path, sample);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return 0;
}
