#ifndef PATHLAB_BENCH_HPP
#define PATHLAB_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathlab/fastmap.hpp"
#include "pathlab/grid.hpp"
#include "pathlab/heuristics.hpp"
#include "pathlab/search.hpp"

namespace pathlab {

// Parsed heuristic spec. Grammar:
//   spec := term ('+' term)*            ('+' is shorthand for MAX)
//   term := ZERO | OCT | MAN | FM(k) | DH(p) | MAX(spec, spec)
struct HeuristicSpec {
    enum class Kind { zero, octile, manhattan, fastmap, differential, max };

    Kind kind = Kind::zero;
    int param = 0;                    // FM dimensions / DH pivots
    std::vector<HeuristicSpec> parts; // max components

    std::string label() const; // canonical form, e.g. "FM(5)+DH(5)"
    int fm_dims() const;       // largest FM k anywhere in the tree
    int dh_pivots() const;     // largest DH p anywhere in the tree
};

HeuristicSpec parse_heuristic_spec(std::string_view text);

// Artifacts a spec may refer to. Neighborhood gates the Manhattan heuristic,
// which is only admissible on 4-neighbor grids.
struct ProviderContext {
    std::shared_ptr<const Embedding> embedding;
    std::shared_ptr<const PivotTable> pivots;
    std::shared_ptr<const std::vector<GridCell>> cells;
    Neighborhood neighborhood = Neighborhood::Eight;
};

std::shared_ptr<const Heuristic> make_provider(const HeuristicSpec& spec,
                                               const ProviderContext& ctx);

// Sample statistics used throughout the reports: median, and median absolute
// deviation around the median.
double median_of(std::vector<double> values);
double mad_of(const std::vector<double>& values);

struct BenchOptions {
    std::vector<std::string> heuristic_specs;
    // Appends FM(k) for k in [first, second]; the embedding is built once.
    std::optional<std::pair<int, int>> fm_dim_sweep;
    int instances = 1000;
    std::uint64_t seed = 0;
    std::optional<double> epsilon;
    int tau = 10;
    int restarts = 10;
    int threads = 0; // 0: PATHLAB_THREADS env var, else hardware concurrency
};

struct InstanceRow {
    GridCell start;
    GridCell goal;
    double cost = 0.0;
    std::vector<std::uint64_t> expanded; // per spec, in spec order
};

struct SpecSummary {
    std::string label;
    std::size_t memory_units = 0;
    double median_expanded = 0.0;
    double mad_expanded = 0.0;
    std::uint64_t wins = 0; // instances with the fewest expansions (ties shared)
};

// Instances grouped by winning spec; a tied instance lands in every tied
// winner's bin.
struct WinnerBin {
    std::string winner;
    std::uint64_t count = 0;
    std::vector<double> median; // per spec, in spec order
    std::vector<double> mad;
};

struct BenchReport {
    std::vector<std::string> spec_labels;
    std::vector<std::size_t> memory_units;
    bool equal_memory = false;
    std::vector<InstanceRow> rows;
    std::vector<SpecSummary> summary;
    std::vector<WinnerBin> winner_bins; // filled for the FM(K)/DH(K)/FM+DH triple
    std::uint64_t tie_instances = 0;
    std::vector<double> fm_spans; // farthest-pair distance per dimension
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
};

// Runs the full protocol on one map: build artifacts, sample mutually
// reachable start/goal pairs, solve each instance under every spec, verify
// that all specs agree on the optimal cost, and aggregate the statistics.
// Deterministic for a fixed (map, options, seed); instances may be solved in
// parallel without affecting the report.
BenchReport run_bench(const GridMap& map, const BenchOptions& opt);

// CSV rows: instance,start_x,start_y,goal_x,goal_y,cost,<spec>_expanded...
void write_csv(const BenchReport& report, std::ostream& out);

std::string summary_text(const BenchReport& report);

} // namespace pathlab

#endif
